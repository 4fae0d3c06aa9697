//! Tree words: names of periodic directions on the golden L.
//!
//! A word `k₁k₂…kₙ` over `{0,1,2,3}` names the direction
//! `σ_{kₙ}⋯σ_{k₁}(1,0)`. The inverse map peels sectors off a direction one
//! at a time with `σₖ⁻¹` until the horizontal is reached.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::golden_field::GoldenVector;
use crate::surface::{sector_of, sigma, sigma_inverse, Letter, SectorClass, SurfaceError};

/// Default bound on sector-peeling iterations in [`vector_to_word`].
pub const DEFAULT_PEEL_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("invalid tree word {0:?}: letters must be digits 0-3, or \"e\" for the empty word")]
    Parse(String),
    #[error("the vertical direction has no finite tree word")]
    Vertical,
    #[error("sector peeling did not reach the horizontal within {0} steps")]
    CapExceeded(usize),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// A finite word over the sector alphabet. Index 0 holds `k₁`.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct TreeWord(Vec<Letter>);

impl TreeWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        TreeWord(letters)
    }

    pub fn empty() -> Self {
        TreeWord(Vec::new())
    }

    pub fn from_digits(digits: &[u32]) -> Result<Self, WordError> {
        let letters = digits
            .iter()
            .map(|&d| Letter::new(d))
            .collect::<Result<_, _>>()?;
        Ok(TreeWord(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &TreeWord) -> TreeWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        TreeWord(v)
    }

    /// All words of exactly `len` letters, in lexicographic order.
    pub fn all_of_length(len: usize) -> impl Iterator<Item = TreeWord> {
        let total = 4usize.pow(len as u32);
        (0..total).map(move |mut code| {
            let mut letters = vec![Letter::ALL[0]; len];
            for slot in letters.iter_mut().rev() {
                *slot = Letter::ALL[code % 4];
                code /= 4;
            }
            TreeWord(letters)
        })
    }

    /// All words with at most `max_len` letters, shortest first.
    pub fn all_up_to(max_len: usize) -> impl Iterator<Item = TreeWord> {
        (0..=max_len).flat_map(TreeWord::all_of_length)
    }

    /// One derivation step: scanning left to right, every adjacent pair of
    /// equal letters is removed (pairs do not overlap).
    pub fn derive(&self) -> TreeWord {
        let mut out = Vec::with_capacity(self.len());
        let mut i = 0;
        while i < self.0.len() {
            if i + 1 < self.0.len() && self.0[i] == self.0[i + 1] {
                i += 2;
            } else {
                out.push(self.0[i]);
                i += 1;
            }
        }
        TreeWord(out)
    }
}

impl fmt::Display for TreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for k in &self.0 {
            write!(f, "{}", k.digit())?;
        }
        Ok(())
    }
}

impl fmt::Debug for TreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TreeWord({self})")
    }
}

impl FromStr for TreeWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "e" || s.is_empty() {
            return Ok(TreeWord::empty());
        }
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .and_then(|d| Letter::new(d).ok())
                    .ok_or_else(|| WordError::Parse(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(TreeWord)
    }
}

impl Serialize for TreeWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TreeWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `σ_{kₙ}⋯σ_{k₁}(1,0)`, with the length factor taken as 1.
pub fn word_to_vector(word: &TreeWord) -> GoldenVector {
    word.letters()
        .iter()
        .fold(GoldenVector::horizontal(), |v, &k| sigma(k).apply(&v))
}

/// The tree word of a first-quadrant direction, by greedy sector peeling.
///
/// Fails with [`WordError::Vertical`] for the vertical direction, which no
/// finite word reaches.
pub fn vector_to_word(v: &GoldenVector) -> Result<TreeWord, WordError> {
    vector_to_word_capped(v, DEFAULT_PEEL_CAP)
}

pub fn vector_to_word_capped(v: &GoldenVector, cap: usize) -> Result<TreeWord, WordError> {
    let mut v = v.clone();
    let mut peeled = Vec::new();
    loop {
        match sector_of(&v)? {
            SectorClass::Horizontal => break,
            SectorClass::Vertical => return Err(WordError::Vertical),
            SectorClass::Sector(k) => {
                if peeled.len() == cap {
                    return Err(WordError::CapExceeded(cap));
                }
                peeled.push(k);
                v = sigma_inverse(k).apply(&v);
            }
        }
    }
    // Peeled outermost first: kₙ, …, k₁.
    peeled.reverse();
    Ok(TreeWord(peeled))
}

/// The base word `μ(a)`: adjacent equal letters cancelled to a fixpoint.
pub fn reduce_word(word: &TreeWord) -> TreeWord {
    let mut stack: Vec<Letter> = Vec::with_capacity(word.len());
    for &k in word.letters() {
        if stack.last() == Some(&k) {
            stack.pop();
        } else {
            stack.push(k);
        }
    }
    TreeWord(stack)
}

pub fn is_base_word(word: &TreeWord) -> bool {
    word.letters().windows(2).all(|w| w[0] != w[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden_field::GoldenNumber;

    fn w(s: &str) -> TreeWord {
        s.parse().unwrap()
    }

    #[test]
    fn word_132_vector() {
        assert_eq!(word_to_vector(&w("132")), GoldenVector::from_ints(3, 2, 2, 4));
        assert_eq!(word_to_vector(&w("e")), GoldenVector::horizontal());
        assert_eq!(word_to_vector(&w("21")), GoldenVector::from_ints(2, 2, 1, 2));
    }

    #[test]
    fn peeling() {
        let v = GoldenVector::from_ints(3, 2, 2, 4);
        // Intermediate vectors of the sector chain 2, 3, 1.
        let v1 = sigma_inverse(Letter::new(2).unwrap()).apply(&v);
        assert_eq!(v1, GoldenVector::from_ints(0, 1, 2, 1));
        let v2 = sigma_inverse(Letter::new(3).unwrap()).apply(&v1);
        assert_eq!(v2, GoldenVector::from_ints(0, 1, 1, 0));
        assert_eq!(vector_to_word(&v), Ok(w("132")));
        assert_eq!(vector_to_word(&GoldenVector::horizontal()), Ok(TreeWord::empty()));
        assert_eq!(vector_to_word(&GoldenVector::from_ints(1, 0, 1, 0)), Ok(w("2")));
        assert_eq!(
            sigma_inverse(Letter::new(2).unwrap()).apply(&GoldenVector::from_ints(1, 0, 1, 0)),
            GoldenVector::new(GoldenNumber::from_ints(-1, 1), GoldenNumber::zero())
        );
    }

    #[test]
    fn peeling_errors() {
        assert_eq!(vector_to_word(&GoldenVector::vertical()), Err(WordError::Vertical));
        assert_eq!(
            vector_to_word(&GoldenVector::default()),
            Err(WordError::Surface(SurfaceError::ZeroVector))
        );
        let v = word_to_vector(&w("3131"));
        assert_eq!(vector_to_word_capped(&v, 3), Err(WordError::CapExceeded(3)));
        assert_eq!(vector_to_word_capped(&v, 4), Ok(w("3131")));
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(reduce_word(&w("231221")), w("23"));
        assert_eq!(reduce_word(&w("e")), w("e"));
        assert_eq!(reduce_word(&w("1111")), w("e"));
        assert_eq!(reduce_word(&w("0110")), w("e"));
        assert_eq!(reduce_word(&w("0101")), w("0101"));
        assert_eq!(w("231221").derive(), w("2311"));
        assert_eq!(w("2311").derive(), w("23"));
        assert_eq!(w("111").derive(), w("1"));
    }

    #[test]
    fn base_words() {
        assert!(is_base_word(&w("23")));
        assert!(!is_base_word(&w("22")));
        assert!(is_base_word(&w("010")));
        assert!(is_base_word(&w("e")));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(w("e").to_string(), "e");
        assert_eq!(w("").to_string(), "e");
        assert_eq!(w("0132").to_string(), "0132");
        assert!(matches!("14".parse::<TreeWord>(), Err(WordError::Parse(_))));
        assert!(matches!("1a".parse::<TreeWord>(), Err(WordError::Parse(_))));
        assert_eq!(serde_json::to_string(&w("21")).unwrap(), "\"21\"");
        assert_eq!(TreeWord::from_digits(&[1, 3, 2]).unwrap(), w("132"));
        assert!(TreeWord::from_digits(&[4]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(TreeWord::all_of_length(0).count(), 1);
        assert_eq!(TreeWord::all_of_length(3).count(), 64);
        assert_eq!(TreeWord::all_up_to(5).count(), 1365);
        let first: Vec<String> = TreeWord::all_of_length(2).take(5).map(|w| w.to_string()).collect();
        assert_eq!(first, ["00", "01", "02", "03", "10"]);
    }
}
