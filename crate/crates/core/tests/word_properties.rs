use num_rational::BigRational;
use proptest::prelude::*;

use pentaflow::classifier::{classify_all, word_permutation};
use pentaflow::golden_field::GoldenNumber;
use pentaflow::surface::{sector_of, tau, Letter, Permutation5, SectorClass};
use pentaflow::tree_word::{is_base_word, reduce_word, vector_to_word, word_to_vector, TreeWord};

fn word(max_len: usize) -> impl Strategy<Value = TreeWord> {
    prop::collection::vec(0u32..4, 0..=max_len).prop_map(|d| TreeWord::from_digits(&d).unwrap())
}

fn canonical_word(max_len: usize) -> impl Strategy<Value = TreeWord> {
    word(max_len).prop_filter("k1 != 0", |w| w.letters().first().is_none_or(|k| k.index() != 0))
}

fn permutation() -> impl Strategy<Value = Permutation5> {
    Just([1u8, 2, 3, 4, 5])
        .prop_shuffle()
        .prop_map(|v| Permutation5::from_images(v).unwrap())
}

/// Reduction by literal rewriting: delete one adjacent equal pair at a
/// time until none is left.
fn reduce_by_rewriting(w: &TreeWord) -> TreeWord {
    let mut letters = w.letters().to_vec();
    while let Some(i) = letters.windows(2).position(|p| p[0] == p[1]) {
        letters.drain(i..i + 2);
    }
    TreeWord::new(letters)
}

proptest! {
    #[test]
    fn round_trip(w in canonical_word(8)) {
        prop_assert_eq!(vector_to_word(&word_to_vector(&w)).unwrap(), w);
    }

    #[test]
    fn leading_zero_is_invisible(w in word(8)) {
        let zw = "0".parse::<TreeWord>().unwrap().concat(&w);
        prop_assert_eq!(word_to_vector(&zw), word_to_vector(&w));
        let canonical = vector_to_word(&word_to_vector(&zw)).unwrap();
        prop_assert!(canonical.letters().first().is_none_or(|k| k.index() != 0));
    }

    #[test]
    fn scale_invariance(w in word(8), n in 1i64..1000, d in 1i64..1000) {
        let c = GoldenNumber::from_rational(BigRational::new(n.into(), d.into()));
        let v = word_to_vector(&w);
        prop_assert_eq!(vector_to_word(&v.scale(&c)).unwrap(), vector_to_word(&v).unwrap());
    }

    #[test]
    fn vectors_lie_in_the_open_quadrant(w in word(8)) {
        let v = word_to_vector(&w);
        if w.letters().iter().all(|k| k.index() == 0) {
            // σ₀ fixes the horizontal.
            prop_assert_eq!(sector_of(&v).unwrap(), SectorClass::Horizontal);
        } else {
            prop_assert!(v.x.is_positive() && v.y.is_positive());
        }
    }

    #[test]
    fn reduction_laws(w in word(16)) {
        let r = reduce_word(&w);
        prop_assert_eq!(reduce_word(&r), r.clone());
        prop_assert!(is_base_word(&r));
        prop_assert_eq!((w.len() - r.len()) % 2, 0);
        prop_assert_eq!(reduce_by_rewriting(&w), r);
    }

    #[test]
    fn base_word_invariance(w in word(12)) {
        let a = classify_all(&w);
        let b = classify_all(&reduce_word(&w));
        prop_assert_eq!(a.verdicts, b.verdicts);
        prop_assert_eq!(a.permutation, b.permutation);
    }

    #[test]
    fn derivation_reaches_the_base_word(w in word(12)) {
        let mut cur = w.clone();
        let mut steps = 0;
        loop {
            let next = cur.derive();
            if next == cur {
                break;
            }
            cur = next;
            steps += 1;
            prop_assert!(steps <= w.len());
        }
        prop_assert_eq!(cur, reduce_word(&w));
    }

    #[test]
    fn permutation_group_laws(p in permutation(), q in permutation(), r in permutation()) {
        prop_assert_eq!(p.compose(&q).compose(&r), p.compose(&q.compose(&r)));
        prop_assert!(p.compose(&p.inverse()).is_identity());
        prop_assert_eq!(p.compose(&Permutation5::identity()), p);
        let cycles: Vec<Vec<u8>> = p.cycles();
        let slices: Vec<&[u8]> = cycles.iter().map(Vec::as_slice).collect();
        prop_assert_eq!(Permutation5::from_cycles(&slices).unwrap(), p);
    }

    #[test]
    fn word_permutation_is_a_homomorphism(a in word(6), b in word(6)) {
        prop_assert_eq!(
            word_permutation(&a.concat(&b)),
            word_permutation(&a).compose(&word_permutation(&b))
        );
    }
}

#[test]
fn taus_are_involutions() {
    for k in Letter::ALL {
        assert!(tau(k).compose(&tau(k)).is_identity());
    }
}
