//! How often does a random tree word reduce to the empty base word?
//!
//! Cancelling adjacent equal letters is the word problem in the free product
//! of four copies of `Z/2`, so the reduced length of a uniformly random word
//! performs a walk on `{0, 1, 2, …}`: from 0 every letter steps to 1, from
//! any `ℓ ≥ 1` exactly one of the four letters cancels (step down) and the
//! other three extend (step up). Letter symmetry makes the reduced length
//! alone a sufficient state.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::surface::Letter;
use crate::tree_word::{reduce_word, TreeWord};

/// Largest word length [`brute_force_profile`] enumerates by default (4¹⁰ words).
pub const DEFAULT_ENUMERATION_LIMIT: usize = 10;

/// Monte Carlo samples are split into this many independently seeded shards,
/// independent of the rayon thread count.
const SHARDS: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatsError {
    #[error("word length {length} exceeds the enumeration limit {limit}")]
    EnumerationLimit { length: usize, limit: usize },
    #[error("at least one sample is required")]
    NoSamples,
}

/// `counts[ℓ]` = number of words of length `length` whose base word has length ℓ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionProfile {
    pub length: usize,
    pub counts: Vec<BigUint>,
}

impl ReductionProfile {
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    pub fn empty_count(&self) -> &BigUint {
        &self.counts[0]
    }
}

/// Full reduced-length distribution by dynamic programming.
pub fn reduction_profile(length: usize) -> ReductionProfile {
    let mut counts = vec![BigUint::zero(); length + 1];
    counts[0] = BigUint::one();
    for _ in 0..length {
        let mut next = vec![BigUint::zero(); length + 1];
        for (l, c) in counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if l == 0 {
                next[1] += c * 4u32;
            } else {
                next[l - 1] += c;
                if l < length {
                    next[l + 1] += c * 3u32;
                }
            }
        }
        counts = next;
    }
    ReductionProfile { length, counts }
}

/// Number of words of length `length` with empty base word.
pub fn count_empty_reductions(length: usize) -> BigUint {
    reduction_profile(length).counts.swap_remove(0)
}

/// Exact probability `count / 4^length`.
pub fn empty_probability(length: usize) -> BigRational {
    let count = count_empty_reductions(length);
    let total = BigUint::from(4u32).pow(length as u32);
    BigRational::new(count.into(), total.into())
}

/// Reduced-length distribution by enumerating all `4^length` words.
pub fn brute_force_profile(length: usize, limit: usize) -> Result<ReductionProfile, StatsError> {
    if length > limit {
        return Err(StatsError::EnumerationLimit { length, limit });
    }
    let total = 4usize.pow(length as u32);
    let tallies = (0..total)
        .into_par_iter()
        .fold(
            || vec![0u64; length + 1],
            |mut acc, code| {
                let mut code = code;
                let mut letters = vec![Letter::ALL[0]; length];
                for slot in letters.iter_mut() {
                    *slot = Letter::ALL[code % 4];
                    code /= 4;
                }
                acc[reduce_word(&TreeWord::new(letters)).len()] += 1;
                acc
            },
        )
        .reduce(
            || vec![0u64; length + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(ReductionProfile {
        length,
        counts: tallies.into_iter().map(BigUint::from).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
}

/// Monte Carlo estimate of [`empty_probability`]; deterministic for a seed.
pub fn monte_carlo_empty_rate(length: usize, samples: u64, seed: u64) -> Result<Estimate, StatsError> {
    if samples == 0 {
        return Err(StatsError::NoSamples);
    }
    let hits: u64 = (0..SHARDS)
        .into_par_iter()
        .map(|shard| {
            let n = samples / SHARDS + u64::from(shard < samples % SHARDS);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(shard);
            let mut stack: Vec<u8> = Vec::with_capacity(length);
            let mut hits = 0u64;
            for _ in 0..n {
                stack.clear();
                for _ in 0..length {
                    let k: u8 = rng.gen_range(0..4);
                    if stack.last() == Some(&k) {
                        stack.pop();
                    } else {
                        stack.push(k);
                    }
                }
                hits += u64::from(stack.is_empty());
            }
            hits
        })
        .sum();
    let mean = hits as f64 / samples as f64;
    let std_error = (mean * (1.0 - mean) / samples as f64).sqrt();
    Ok(Estimate {
        mean,
        std_error,
        samples,
    })
}

/// One row of the statistics table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatsRow {
    pub m: usize,
    pub count: String,
    pub probability: String,
    pub probability_decimal: f64,
}

pub fn exact_row(m: usize) -> StatsRow {
    let p = empty_probability(m);
    StatsRow {
        m,
        count: count_empty_reductions(m).to_string(),
        probability: p.to_string(),
        probability_decimal: p.to_f64().unwrap_or(f64::NAN),
    }
}
