mod common;

use std::collections::HashSet;

use proptest::prelude::*;

use common::{code_from_rows, code_strategy, naive_span, rows_strategy};
use z8codes::code::parse_matrix;
use z8codes::{LinearCode, Metric, Modulus, OctVector};

fn vec_strategy(n: usize) -> impl Strategy<Value = OctVector> {
    prop::collection::vec(0u8..8, n).prop_map(|v| OctVector::new(v).unwrap())
}

fn triple() -> impl Strategy<Value = (OctVector, OctVector, OctVector)> {
    (1usize..=6).prop_flat_map(|n| (vec_strategy(n), vec_strategy(n), vec_strategy(n)))
}

fn metric() -> impl Strategy<Value = Metric> {
    prop::sample::select(Metric::ALL.to_vec())
}

fn codeword_set(code: &LinearCode) -> HashSet<Vec<u8>> {
    code.codewords().collect()
}

#[test]
fn pointwise_metric_sandwich() {
    for x in 0..8usize {
        let hw = Metric::Homogeneous.table()[x];
        let e = Metric::Euclidean.table()[x];
        let l = Metric::Lee.table()[x];
        assert!(hw <= 2 * e && e <= 5 * hw, "symbol {x}");
        assert!(l <= e, "symbol {x}");
        assert!(hw <= 2 * l, "symbol {x}");
    }
}

#[test]
fn squared_euclidean_breaks_the_plain_triangle_inequality() {
    let v = |x: u8| OctVector::new(vec![x]).unwrap();
    let d = |a: u8, b: u8| v(a).distance(&v(b), Metric::Euclidean).unwrap();
    assert_eq!((d(1, 2), d(2, 3), d(1, 3)), (1, 1, 4));
}

#[test]
fn gray_image_weight_is_homogeneous_weight() {
    for x in 0..8u8 {
        let v = OctVector::new(vec![x]).unwrap();
        assert_eq!(v.gray_map().hamming_weight(), v.weight(Metric::Homogeneous));
    }
}

proptest! {
    #[test]
    fn distances_are_metrics((u, v, w) in triple(), m in metric()) {
        let d = |a: &OctVector, b: &OctVector| a.distance(b, m).unwrap();
        prop_assert_eq!(d(&u, &v), d(&v, &u));
        prop_assert_eq!(d(&u, &v) == 0, u == v);
        let (a, b, c) = (d(&u, &v) as i64, d(&v, &w) as i64, d(&u, &w) as i64);
        if m == Metric::Euclidean {
            // sqrt(c) <= sqrt(a) + sqrt(b)
            prop_assert!(c <= a + b || (c - a - b).pow(2) <= 4 * a * b);
        } else {
            prop_assert!(c <= a + b);
        }
    }

    #[test]
    fn gray_map_is_an_isometry((u, v, _) in triple()) {
        prop_assert_eq!(
            u.distance(&v, Metric::Homogeneous).unwrap(),
            u.gray_map().hamming_distance(&v.gray_map()).unwrap()
        );
    }

    #[test]
    fn weights_are_bounded_per_coordinate((u, _, _) in triple()) {
        let n = u.len() as u32;
        prop_assert!(u.weight(Metric::Euclidean) <= 16 * n);
        prop_assert!(u.weight(Metric::Homogeneous) <= 4 * n);
        prop_assert!(u.weight(Metric::Lee) <= 4 * n);
        prop_assert_eq!(u.composition().total(), u.len());
    }

    #[test]
    fn cardinality_matches_enumeration(rows in rows_strategy(6, 4)) {
        let code = code_from_rows(rows.clone());
        prop_assume!(code.cardinality_log2() <= 14);
        let n = code.len();
        let span = naive_span(&rows, n, 8);
        prop_assert_eq!(span.len() as u128, code.cardinality().unwrap());
        prop_assert_eq!(codeword_set(&code), span);
    }

    #[test]
    fn standard_form_spans_the_input(code in code_strategy(6, 4)) {
        let rebuilt = LinearCode::over(Modulus::Z8, code.len(), code.standard_form().rows_original()).unwrap();
        prop_assert!(rebuilt.same_code(&code));
        for g in code.generators() {
            prop_assert!(code.standard_form().contains(g));
        }
    }

    #[test]
    fn dual_is_an_involution(code in code_strategy(5, 4)) {
        let dual = code.dual().unwrap();
        let n = code.len() as u64;
        prop_assert_eq!(code.cardinality_log2() + dual.cardinality_log2(), 3 * n);
        prop_assert!(dual.dual().unwrap().same_code(&code));
        for g in code.generators() {
            for h in dual.generators() {
                let dot: u32 = g.iter().zip(h).map(|(&a, &b)| u32::from(a) * u32::from(b)).sum();
                prop_assert_eq!(dot % 8, 0);
            }
        }
    }

    #[test]
    fn self_orthogonality_tests_agree(code in code_strategy(6, 4)) {
        let so = code.self_orthogonality();
        prop_assert!(so.agree(), "witness {:?}", so.witness);
    }

    #[test]
    fn matrix_text_round_trips(code in code_strategy(6, 4)) {
        let text = code.to_matrix_text();
        let again = LinearCode::new(parse_matrix(&text).unwrap()).unwrap();
        prop_assert_eq!(again.generators(), code.generators());
    }
}
