mod common;

use proptest::prelude::*;

use common::{code_from_rows, code_strategy};
use z8codes::torsion::{comprehension, derive, structure_report, CheckVerdict, DerivedTag};
use z8codes::LinearCode;

/// Rows scaled by 1, 2 or 4, kept only when the span is self-orthogonal.
fn self_orthogonal_code() -> impl Strategy<Value = LinearCode> {
    (2usize..=6)
        .prop_flat_map(|n| {
            prop::collection::vec(
                (prop::collection::vec(0u8..8, n), prop::sample::select(vec![1u8, 2, 4])),
                1..=3,
            )
        })
        .prop_map(|rows| code_from_rows(rows.into_iter().map(|(r, s)| r.iter().map(|x| x * s % 8).collect()).collect()))
        .prop_filter("self-orthogonal", LinearCode::is_self_orthogonal)
}

fn passes(code: &LinearCode, names: &[&str]) -> Result<(), TestCaseError> {
    let report = structure_report(code).unwrap();
    for name in names {
        let check = report.check(name).unwrap_or_else(|| panic!("missing {name}"));
        prop_assert_eq!(check.verdict, CheckVerdict::Pass, "{} witness {:?}", name, check.witness);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn constructions_match_comprehensions(code in code_strategy(4, 3)) {
        for tag in DerivedTag::ALL {
            let built: std::collections::HashSet<Vec<u8>> = derive(&code, tag).unwrap().codewords().collect();
            prop_assert_eq!(built, comprehension(&code, tag).unwrap(), "{}", tag.name());
        }
    }

    #[test]
    fn cardinality_and_lattice_identities(code in code_strategy(5, 4)) {
        passes(&code, &[
            "cardinality_c1_c3",
            "cardinality_c2_c4",
            "cardinality_tor_product",
            "cardinality_block_counts",
            "inclusion_c1_in_c4",
            "inclusion_c2_in_c3",
            "equality_c21_c1",
            "inclusion_c1_in_c22",
            "equality_c31_c22",
            "inclusion_c31_in_c32",
            "equality_c32_c4",
            "self_orthogonality_criterion_agrees",
        ])?;
    }

    #[test]
    fn self_orthogonal_codes_satisfy_the_dual_inclusions(code in self_orthogonal_code()) {
        passes(&code, &[
            "self_orthogonal_c1",
            "self_orthogonal_c2",
            "inclusion_c4_in_c1_dual",
            "inclusion_c3_in_c2_dual",
            "chain_c21_in_c22",
            "chain_c22_in_c21_dual",
            "chain_c31_in_c32",
        ])?;
        if code.is_self_dual() {
            passes(&code, &["equality_c4_c1_dual", "equality_c3_c2_dual"])?;
        }
    }
}

#[test]
fn reduction_self_orthogonality_fails_on_twice_a_unit_pair() {
    let code = code_from_rows(vec![vec![2, 2]]);
    assert!(code.is_self_orthogonal());
    let report = structure_report(&code).unwrap();
    let c3 = report.check("self_orthogonal_c3").unwrap();
    assert_eq!(c3.verdict, CheckVerdict::Fail);
    assert_eq!(c3.witness.as_deref(), Some("11"));
}

#[test]
fn torsion_self_orthogonality_fails_on_four() {
    let code = code_from_rows(vec![vec![4, 0]]);
    let report = structure_report(&code).unwrap();
    assert_eq!(report.check("self_orthogonal_c4").unwrap().verdict, CheckVerdict::Fail);
}

#[test]
fn second_sandwich_chain_fails() {
    let code = code_from_rows(vec![vec![2, 2], vec![4, 0]]);
    assert!(code.is_self_orthogonal());
    let report = structure_report(&code).unwrap();
    assert_eq!(report.check("chain_c32_in_c31_dual").unwrap().verdict, CheckVerdict::Fail);
}

#[test]
fn self_dual_octacode_satisfies_every_structure_check_it_can() {
    let code = z8codes::families::build(&"octacode".parse().unwrap()).unwrap();
    let report = structure_report(&code).unwrap();
    assert!(report.self_dual);
    for name in ["equality_c4_c1_dual", "equality_c3_c2_dual", "inclusion_c4_in_c1_dual"] {
        assert_eq!(report.check(name).unwrap().verdict, CheckVerdict::Pass, "{name}");
    }
}
