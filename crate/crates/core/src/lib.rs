//! Midpoint billiard trajectories in the regular pentagon, classified exactly.
//!
//! A billiard path in the regular pentagon that starts at the midpoint of a
//! side, in a direction with coordinates in `Q[φ]`, is periodic or ends in a
//! corner. Unfolding the pentagon gives the golden L, a translation surface
//! whose Veech group is generated by four matrices `σ₀…σ₃`. Every periodic
//! direction is the image of the horizontal under a word in those
//! generators, and the long/short/saddle fate of each of the five midpoint
//! trajectories is read off a permutation of the Weierstrass points.
//!
//! ```
//! use pentaflow::{classify, Classification, Midpoint, TreeWord};
//!
//! let word: TreeWord = "21".parse().unwrap();
//! assert_eq!(classify(&word, Midpoint::new(1).unwrap()), Classification::SaddleConnection);
//! assert_eq!(classify(&word, Midpoint::new(4).unwrap()), Classification::Short);
//! ```
//!
//! Modules, bottom up:
//!
//! - [`golden_field`]: exact arithmetic in `Q[φ]`, vectors and matrices.
//! - [`surface`]: the golden L, its Veech generators and Weierstrass points.
//! - [`tree_word`]: words over `{0,1,2,3}` and their direction vectors.
//! - [`classifier`]: the permutation-based classification.
//! - [`flow`]: an exact straight-line flow, used as an independent oracle.
//! - [`unfolding`]: transport of closed loops to billiard bounce counts.
//! - [`word_stats`]: how often random words reduce to the empty word.
//! - [`render`]: SVG pictures and a floating-point pentagon billiard.

pub mod classifier;
pub mod flow;
pub mod golden_field;
pub mod render;
pub mod surface;
pub mod tree_word;
pub mod unfolding;
pub mod word_stats;

pub use classifier::{
    classify, classify_all, classify_direction, classify_vertical, word_permutation, Classification,
    ClassificationReport, Direction,
};
pub use flow::{oracle_classify, trace, trace_direction, FlowError, OracleReport, Outcome, Trajectory};
pub use golden_field::{FieldError, GoldenMatrix, GoldenNumber, GoldenVector};
pub use surface::{sector_of, sigma, tau, GoldenL, Letter, Midpoint, Permutation5, SectorClass, SurfaceError};
pub use tree_word::{reduce_word, vector_to_word, word_to_vector, TreeWord, WordError};
pub use word_stats::{empty_probability, StatsError};
