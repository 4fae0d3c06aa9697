//! Long / short / saddle classification of midpoint trajectories.
//!
//! For a direction with tree word `k₁…kₙ`, the Veech element
//! `σ_{k₁}⁻¹⋯σ_{kₙ}⁻¹` straightens the direction to the horizontal and moves
//! Weierstrass point `J` to `τ(J)` with `τ = τ_{k₁}⋯τ_{kₙ}`. In the
//! horizontal direction points 1, 2 sit in the short cylinder, 3, 4 in the
//! long cylinder, and 5 on a saddle connection.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::surface::{diagonal_reflection, tau, Midpoint, Permutation5};
use crate::tree_word::TreeWord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Short,
    Long,
    #[serde(rename = "saddle")]
    SaddleConnection,
}

impl Classification {
    /// Verdict of a Weierstrass point for the horizontal direction.
    pub fn horizontal(m: Midpoint) -> Classification {
        match m.label() {
            1 | 2 => Classification::Short,
            3 | 4 => Classification::Long,
            _ => Classification::SaddleConnection,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Short => "short",
            Classification::Long => "long",
            Classification::SaddleConnection => "saddle",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A direction to classify: a tree word, or the vertical (which has none).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Direction {
    Word(TreeWord),
    Vertical,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Word(w) => w.fmt(f),
            Direction::Vertical => f.write_str("vertical"),
        }
    }
}

impl Serialize for Direction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Direction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "vertical" {
            return Ok(Direction::Vertical);
        }
        s.parse().map(Direction::Word).map_err(serde::de::Error::custom)
    }
}

/// Verdicts for all five midpoints, with the permutation that produced them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    #[serde(rename = "word")]
    pub direction: Direction,
    #[serde(rename = "tau")]
    pub permutation: Permutation5,
    #[serde(serialize_with = "verdicts_as_object", deserialize_with = "verdicts_from_object")]
    pub verdicts: [Classification; 5],
}

impl ClassificationReport {
    fn from_permutation(direction: Direction, permutation: Permutation5) -> Self {
        let verdicts = Midpoint::ALL.map(|m| Classification::horizontal(permutation.apply(m)));
        ClassificationReport {
            direction,
            permutation,
            verdicts,
        }
    }

    pub fn verdict(&self, m: Midpoint) -> Classification {
        self.verdicts[m.label() as usize - 1]
    }

    pub fn midpoints_with(&self, c: Classification) -> Vec<Midpoint> {
        Midpoint::ALL
            .into_iter()
            .filter(|&m| self.verdict(m) == c)
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

fn verdicts_as_object<S: Serializer>(v: &[Classification; 5], s: S) -> Result<S::Ok, S::Error> {
    let map: BTreeMap<String, Classification> = Midpoint::ALL
        .iter()
        .zip(v)
        .map(|(m, c)| (m.to_string(), *c))
        .collect();
    map.serialize(s)
}

fn verdicts_from_object<'de, D: serde::Deserializer<'de>>(
    d: D,
) -> Result<[Classification; 5], D::Error> {
    let map = BTreeMap::<String, Classification>::deserialize(d)?;
    let mut out = [Classification::Short; 5];
    for (i, slot) in out.iter_mut().enumerate() {
        let key = (i + 1).to_string();
        *slot = *map
            .get(&key)
            .ok_or_else(|| serde::de::Error::custom(format!("missing verdict for {key}")))?;
    }
    Ok(out)
}

/// `τ = τ_{k₁}⋯τ_{kₙ}`, with `τ_{kₙ}` acting first.
pub fn word_permutation(word: &TreeWord) -> Permutation5 {
    word.letters()
        .iter()
        .fold(Permutation5::identity(), |acc, &k| acc.compose(&tau(k)))
}

pub fn classify(word: &TreeWord, midpoint: Midpoint) -> Classification {
    Classification::horizontal(word_permutation(word).apply(midpoint))
}

pub fn classify_all(word: &TreeWord) -> ClassificationReport {
    ClassificationReport::from_permutation(Direction::Word(word.clone()), word_permutation(word))
}

/// The vertical direction, classified through the `y = x` reflection of the
/// golden L, which relabels the Weierstrass points by `(1 5)(2 4)`.
pub fn classify_vertical() -> ClassificationReport {
    ClassificationReport::from_permutation(Direction::Vertical, diagonal_reflection())
}

pub fn classify_direction(direction: &Direction) -> ClassificationReport {
    match direction {
        Direction::Word(w) => classify_all(w),
        Direction::Vertical => classify_vertical(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree_word::reduce_word;
    use Classification::*;

    fn w(s: &str) -> TreeWord {
        s.parse().unwrap()
    }

    fn m(j: u32) -> Midpoint {
        Midpoint::new(j).unwrap()
    }

    #[test]
    fn word_21_permutation() {
        assert_eq!(word_permutation(&w("21")).to_string(), "(1 5 2 3 4)");
        assert!(word_permutation(&w("e")).is_identity());
        assert!(word_permutation(&w("00")).is_identity());
    }

    #[test]
    fn word_21_verdicts() {
        let word = w("21");
        assert_eq!(classify(&word, m(4)), Short);
        assert_eq!(classify(&word, m(5)), Short);
        assert_eq!(classify(&word, m(2)), Long);
        assert_eq!(classify(&word, m(3)), Long);
        assert_eq!(classify(&word, m(1)), SaddleConnection);
    }

    #[test]
    fn horizontal_verdicts() {
        let r = classify_all(&w("e"));
        assert_eq!(r.verdicts, [Short, Short, Long, Long, SaddleConnection]);
    }

    #[test]
    fn base_word_report_matches() {
        let a = classify_all(&w("231221"));
        let b = classify_all(&reduce_word(&w("231221")));
        assert_eq!(a.verdicts, b.verdicts);
        assert_eq!(a.permutation, b.permutation);
    }

    #[test]
    fn json_report_shape() {
        let j = classify_all(&w("21")).to_json();
        let expected: serde_json::Value = serde_json::from_str(
            r#"{"word":"21","tau":[5,3,4,1,2],"verdicts":{"1":"saddle","2":"long","3":"long","4":"short","5":"short"}}"#,
        )
        .unwrap();
        assert_eq!(j, expected);
        let back: ClassificationReport = serde_json::from_value(j).unwrap();
        assert_eq!(back, classify_all(&w("21")));
    }

    #[test]
    fn vertical_report() {
        let r = classify_vertical();
        assert_eq!(r.direction.to_string(), "vertical");
        assert_eq!(r.verdicts, [SaddleConnection, Long, Long, Short, Short]);
    }

    #[test]
    fn leading_zero_keeps_verdicts() {
        for word in TreeWord::all_up_to(3) {
            let zw = w("0").concat(&word);
            assert_eq!(classify_all(&zw).verdicts, classify_all(&word).verdicts);
        }
    }
}
