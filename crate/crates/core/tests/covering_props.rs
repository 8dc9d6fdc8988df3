mod common;

use num_bigint::BigUint;
use proptest::prelude::*;

use common::{code_from_rows, code_strategy, naive_radius, naive_span, rows_strategy, weight};
use z8codes::covering::{
    covering_radius, covering_radius_coset, covering_radius_dp, covering_radius_scan, direct_sum,
    mattson_compose, sphere_covering_lower, SphereForm,
};
use z8codes::harness::{analyze_code, AnalyzeOptions, Evaluator};
use z8codes::{Budgets, LinearCode, Metric};

fn metric() -> impl Strategy<Value = Metric> {
    prop::sample::select(Metric::ALL.to_vec())
}

fn radius(code: &LinearCode, m: Metric) -> u32 {
    covering_radius(code, m, &Budgets::default()).unwrap().value
}

fn min_distance(x: &[u8], words: &[Vec<u8>], m: Metric) -> u32 {
    words
        .iter()
        .map(|c| {
            let diff: Vec<u8> = x.iter().zip(c).map(|(a, b)| (8 + a - b) % 8).collect();
            weight(&diff, m)
        })
        .min()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn oracles_match_brute_force(code in code_strategy(3, 3), m in metric()) {
        let b = Budgets::default();
        let expected = naive_radius(&code, m);
        prop_assert_eq!(covering_radius_scan(&code, m, &b).unwrap(), expected);
        prop_assert_eq!(covering_radius_coset(&code, m, &b).unwrap(), expected);
        prop_assert_eq!(covering_radius_dp(&code, m, &b).unwrap(), expected);
    }

    #[test]
    fn oracles_agree_up_to_length_five(code in code_strategy(5, 3), m in metric()) {
        let b = Budgets::default();
        let scan = covering_radius_scan(&code, m, &b).unwrap();
        prop_assert_eq!(covering_radius_coset(&code, m, &b).unwrap(), scan);
        prop_assert_eq!(covering_radius_dp(&code, m, &b).unwrap(), scan);
    }

    #[test]
    fn enlarging_never_increases_radius(
        (rows, extra) in rows_strategy(4, 3).prop_flat_map(|rows| {
            let n = rows[0].len();
            (Just(rows), prop::collection::vec(0u8..8, n))
        }),
        m in metric(),
    ) {
        let small = code_from_rows(rows.clone());
        let mut bigger = rows;
        bigger.push(extra);
        let big = code_from_rows(bigger);
        prop_assert!(radius(&big, m) <= radius(&small, m));
    }

    #[test]
    fn radius_is_permutation_invariant(
        (code, perm) in code_strategy(5, 3).prop_flat_map(|c| {
            let n = c.len();
            (Just(c), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
        }),
        m in metric(),
    ) {
        let permuted = code.permuted(&perm).unwrap();
        prop_assert_eq!(radius(&permuted, m), radius(&code, m));
    }

    #[test]
    fn coset_weight_is_translation_invariant(
        (rows, x, pick) in rows_strategy(4, 3).prop_flat_map(|rows| {
            let n = rows[0].len();
            (Just(rows), prop::collection::vec(0u8..8, n), any::<prop::sample::Index>())
        }),
        m in metric(),
    ) {
        let n = x.len();
        let words: Vec<Vec<u8>> = naive_span(&rows, n, 8).into_iter().collect();
        let c = pick.get(&words);
        let shifted: Vec<u8> = x.iter().zip(c).map(|(a, b)| (a + b) % 8).collect();
        prop_assert_eq!(min_distance(&x, &words, m), min_distance(&shifted, &words, m));
    }

    #[test]
    fn sound_sphere_covering_brackets_exact(code in code_strategy(4, 3)) {
        let size = BigUint::from(1u32) << code.cardinality_log2();
        for m in [Metric::Homogeneous, Metric::Euclidean] {
            if let Some(lower) = sphere_covering_lower(code.len(), &size, m, SphereForm::Sound).unwrap() {
                prop_assert!(lower <= radius(&code, m));
            }
        }
    }

    #[test]
    fn exact_radii_respect_the_metric_sandwich(code in code_strategy(4, 3)) {
        let [_, l, e, hw] = Metric::ALL.map(|m| radius(&code, m));
        prop_assert!(hw <= 2 * e);
        prop_assert!(e <= 5 * hw);
        prop_assert!(l <= e);
        prop_assert!(hw <= 2 * l);
    }

    #[test]
    fn ledger_brackets_exact_values(code in code_strategy(4, 3)) {
        let budgets = Budgets::default();
        let mut ev = Evaluator::new(&budgets);
        let opts = AnalyzeOptions { verify: true, ..AnalyzeOptions::default() };
        let report = analyze_code("random", None, &code, &opts, &mut ev).unwrap();
        prop_assert!(report.ledger.check_consistency().is_ok());
        for m in Metric::ALL {
            let exact = report.ledger.exact(m).unwrap();
            let entry = report.ledger.metric(m).unwrap();
            prop_assert!(entry.sound_lower.iter().all(|b| b.value <= exact));
            prop_assert!(entry.sound_upper.iter().all(|b| b.value >= exact));
        }
    }

    #[test]
    fn mattson_composition_is_subadditive(
        (c0, c1, a) in (code_strategy(3, 2), code_strategy(3, 2)).prop_flat_map(|(c0, c1)| {
            let rows = c0.generators().len();
            let n1 = c1.len();
            (Just(c0), Just(c1), prop::collection::vec(prop::collection::vec(0u8..8, n1), rows))
        }),
        m in metric(),
    ) {
        let composed = mattson_compose(&c0, &c1, &a).unwrap();
        prop_assert_eq!(composed.len(), c0.len() + c1.len());
        prop_assert!(composed.cardinality_log2() >= c0.cardinality_log2() + c1.cardinality_log2());
        prop_assert!(radius(&composed, m) <= radius(&c0, m) + radius(&c1, m));
    }

    #[test]
    fn direct_sum_radius_is_additive(c0 in code_strategy(3, 2), c1 in code_strategy(3, 2), m in metric()) {
        let sum = direct_sum(&c0, &c1).unwrap();
        prop_assert_eq!(radius(&sum, m), radius(&c0, m) + radius(&c1, m));
    }
}
