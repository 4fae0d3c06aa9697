use proptest::prelude::*;

use pentaflow::classifier::{classify_all, classify_vertical};
use pentaflow::flow::{oracle_classify, oracle_classify_direction, trace_direction, Outcome, DEFAULT_STEP_CAP};
use pentaflow::golden_field::{GoldenNumber, GoldenVector};
use pentaflow::surface::Midpoint;
use pentaflow::tree_word::{word_to_vector, TreeWord};
use pentaflow::unfolding::{exact_billiard, transport, BilliardEnd};

fn word(max_len: usize) -> impl Strategy<Value = TreeWord> {
    prop::collection::vec(0u32..4, 0..=max_len).prop_map(|d| TreeWord::from_digits(&d).unwrap())
}

#[test]
fn oracle_agrees_on_short_words() {
    for w in TreeWord::all_up_to(3) {
        let oracle = oracle_classify(&w, DEFAULT_STEP_CAP).unwrap();
        assert_eq!(oracle.verdicts, classify_all(&w).verdicts, "word {w}");
        assert_eq!(oracle.long_holonomy, oracle.short_holonomy.scale(&GoldenNumber::phi()));
    }
}

#[test]
fn oracle_agrees_on_the_vertical() {
    let oracle = oracle_classify_direction(&GoldenVector::vertical(), DEFAULT_STEP_CAP).unwrap();
    assert_eq!(oracle.verdicts, classify_vertical().verdicts);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn oracle_agrees_on_random_words(w in word(8)) {
        let oracle = oracle_classify(&w, DEFAULT_STEP_CAP).unwrap();
        prop_assert_eq!(oracle.verdicts, classify_all(&w).verdicts);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reversed_flow_mirrors(w in word(5), j in 1u32..=5) {
        let m = Midpoint::new(j).unwrap();
        let v = word_to_vector(&w);
        let forward = trace_direction(m, &v, DEFAULT_STEP_CAP).unwrap();
        let backward = trace_direction(m, &-&v, DEFAULT_STEP_CAP).unwrap();
        match (&forward.outcome, &backward.outcome) {
            (Outcome::Closed, Outcome::Closed) => {
                prop_assert_eq!(&backward.holonomy, &-&forward.holonomy);
                prop_assert_eq!(forward.segments.len(), backward.segments.len());
            }
            (Outcome::HitConePoint(_), Outcome::HitConePoint(_)) => {
                // A saddle connection through a Weierstrass point is bisected
                // by it, though the halves may cross the cuts differently.
                prop_assert_eq!(&backward.holonomy, &-&forward.holonomy);
            }
            _ => prop_assert!(false, "outcomes differ for {} at {}", w, m),
        }
    }

    #[test]
    fn transport_matches_exact_billiard(w in word(5), j in 1u32..=5) {
        let m = Midpoint::new(j).unwrap();
        let t = trace_direction(m, &word_to_vector(&w), DEFAULT_STEP_CAP).unwrap();
        let b = exact_billiard(m, &t.direction, 1_000_000).unwrap();
        match transport(&t) {
            Some(lp) => {
                prop_assert_eq!(b.end, BilliardEnd::Closed);
                prop_assert!(lp.admits_bounces(b.bounces()));
            }
            None => prop_assert_eq!(b.end, BilliardEnd::Corner),
        }
    }
}
