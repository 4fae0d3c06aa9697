// mdbook cannot run snippets that depend on a crate, so the chapters are
// pulled in here as module docs and `cargo test --doc` runs them instead.
// One module per chapter keeps failures traceable to a file.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/golden_field.md")]
pub mod golden_field {}
#[doc = include_str!("../../../book/src/golden_l.md")]
pub mod golden_l {}
#[doc = include_str!("../../../book/src/tree_words.md")]
pub mod tree_words {}
#[doc = include_str!("../../../book/src/classification.md")]
pub mod classification {}
#[doc = include_str!("../../../book/src/flow_oracle.md")]
pub mod flow_oracle {}
#[doc = include_str!("../../../book/src/pentagon.md")]
pub mod pentagon {}
#[doc = include_str!("../../../book/src/statistics.md")]
pub mod statistics {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
