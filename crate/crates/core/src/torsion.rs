//! Reduction and torsion codes of a Z8 code.
//!
//! For a code C over Z8:
//!
//! | tag   | definition                     | ring |
//! |-------|--------------------------------|------|
//! | C1    | { c mod 2 : c ∈ C }            | Z2   |
//! | C2    | { c mod 4 : c ∈ C }            | Z4   |
//! | C3    | { c ∈ Z4^n : 2c ∈ C }          | Z4   |
//! | C4    | { c ∈ Z2^n : 4c ∈ C }          | Z2   |
//! | C21   | { c mod 2 : c ∈ C2 }           | Z2   |
//! | C22   | { c ∈ Z2^n : 2c ∈ C2 }         | Z2   |
//! | C31   | { c mod 2 : c ∈ C3 }           | Z2   |
//! | C32   | { c ∈ Z2^n : 2c ∈ C3 }         | Z2   |
//! | Tor_i | { v mod 2 : 2^i v ∈ C }        | Z2   |
//!
//! Generators are read off the standard-form blocks; [`comprehension`]
//! evaluates the definitions by brute force for cross-checking.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::code::{Ambient, LinearCode, Modulus, SubringCode};
use crate::error::{Error, Result};
use crate::ring::Metric;

/// Largest length for which the definitions are checked by enumerating Z8^n.
pub const COMPREHENSION_MAX_N: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DerivedTag {
    Tor0,
    Tor1,
    Tor2,
    C1,
    C2,
    C3,
    C4,
    C21,
    C22,
    C31,
    C32,
}

impl DerivedTag {
    pub const ALL: [DerivedTag; 11] = [
        DerivedTag::Tor0,
        DerivedTag::Tor1,
        DerivedTag::Tor2,
        DerivedTag::C1,
        DerivedTag::C2,
        DerivedTag::C3,
        DerivedTag::C4,
        DerivedTag::C21,
        DerivedTag::C22,
        DerivedTag::C31,
        DerivedTag::C32,
    ];

    pub fn modulus(self) -> Modulus {
        match self {
            DerivedTag::C2 | DerivedTag::C3 => Modulus::Z4,
            _ => Modulus::Z2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DerivedTag::Tor0 => "tor0",
            DerivedTag::Tor1 => "tor1",
            DerivedTag::Tor2 => "tor2",
            DerivedTag::C1 => "c1",
            DerivedTag::C2 => "c2",
            DerivedTag::C3 => "c3",
            DerivedTag::C4 => "c4",
            DerivedTag::C21 => "c21",
            DerivedTag::C22 => "c22",
            DerivedTag::C31 => "c31",
            DerivedTag::C32 => "c32",
        }
    }
}

impl fmt::Display for DerivedTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DerivedTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DerivedTag::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown derived code '{s}'")))
    }
}

fn require_z8(code: &LinearCode) -> Result<()> {
    if code.modulus() != Modulus::Z8 {
        return Err(Error::Parameter(format!(
            "torsion codes are defined for Z8 codes, got {}",
            code.modulus()
        )));
    }
    Ok(())
}

/// Standard-form rows of the given levels, shifted right by the row level
/// (or by `shift` when given), reduced to `target`, on original coordinates.
fn block_rows(code: &LinearCode, levels: &[u32], shift: Option<u32>, target: Modulus) -> Vec<Vec<u8>> {
    let sf = code.standard_form();
    let mask = target.value() - 1;
    sf.rows()
        .iter()
        .zip(sf.levels())
        .filter(|(_, l)| levels.contains(l))
        .map(|(row, &l)| {
            let s = shift.unwrap_or(l).min(l);
            let scaled: Vec<u8> = row.iter().map(|&x| (x >> s) & mask).collect();
            sf.unpermute(&scaled)
        })
        .collect()
}

/// Generator matrix of a derived code, assembled from the standard form.
pub fn derive(code: &LinearCode, tag: DerivedTag) -> Result<SubringCode> {
    require_z8(code)?;
    let n = code.len();
    let rows = match tag {
        // [I  B01 B02 B03]
        DerivedTag::C1 | DerivedTag::Tor0 | DerivedTag::C21 => {
            block_rows(code, &[0], None, Modulus::Z2)
        }
        // [I  B+2B¹ ...] over [0 2I 2A12 2A13], mod 4
        DerivedTag::C2 => block_rows(code, &[0, 1], Some(0), Modulus::Z4),
        // [I  B+2B¹ ...] over [0 I A12 A13] over [0 0 2I 2A23], mod 4
        DerivedTag::C3 => {
            let mut rows = block_rows(code, &[0], None, Modulus::Z4);
            rows.extend(block_rows(code, &[1, 2], Some(1), Modulus::Z4));
            rows
        }
        // [I B01 ..] over [0 I A12 A13], mod 2
        DerivedTag::Tor1 | DerivedTag::C22 | DerivedTag::C31 => {
            block_rows(code, &[0, 1], None, Modulus::Z2)
        }
        // all three row levels with multipliers divided out, mod 2
        DerivedTag::C4 | DerivedTag::Tor2 | DerivedTag::C32 => {
            block_rows(code, &[0, 1, 2], None, Modulus::Z2)
        }
    };
    LinearCode::over(tag.modulus(), n, rows)
}

/// The defining set of a derived code, by exhaustive evaluation.
pub fn comprehension(code: &LinearCode, tag: DerivedTag) -> Result<HashSet<Vec<u8>>> {
    require_z8(code)?;
    let n = code.len();
    if n > COMPREHENSION_MAX_N {
        return Err(Error::budget(
            "set-comprehension check",
            format!("8^{n} vectors"),
            format!("8^{COMPREHENSION_MAX_N}"),
        ));
    }
    let reduce = |set: &HashSet<Vec<u8>>, q: u8| -> HashSet<Vec<u8>> {
        set.iter()
            .map(|c| c.iter().map(|&x| x % q).collect())
            .collect()
    };
    let codewords: HashSet<Vec<u8>> = code.codewords().collect();
    let c2 = reduce(&codewords, 4);
    // {c ∈ Z_q^n : mult·c (in Z_big) ∈ set}
    let preimage = |q: Modulus, mult: u8, big: u8, set: &dyn Fn(&[u8]) -> bool| -> HashSet<Vec<u8>> {
        Ambient::new(q, n)
            .filter(|c| {
                let scaled: Vec<u8> = c.iter().map(|&x| (x * mult) % big).collect();
                set(&scaled)
            })
            .collect()
    };
    let in_code = |v: &[u8]| code.contains(v);
    let c3 = preimage(Modulus::Z4, 2, 8, &in_code);
    let tor = |i: u32| -> HashSet<Vec<u8>> {
        Ambient::new(Modulus::Z8, n)
            .filter(|v| {
                let scaled: Vec<u8> = v.iter().map(|&x| (x << i) & 7).collect();
                code.contains(&scaled)
            })
            .map(|v| v.iter().map(|&x| x & 1).collect())
            .collect()
    };
    Ok(match tag {
        DerivedTag::C1 => reduce(&codewords, 2),
        DerivedTag::C2 => c2,
        DerivedTag::C3 => c3,
        DerivedTag::C4 => preimage(Modulus::Z2, 4, 8, &in_code),
        DerivedTag::C21 => reduce(&c2, 2),
        DerivedTag::C22 => preimage(Modulus::Z2, 2, 4, &|v| c2.contains(v)),
        DerivedTag::C31 => reduce(&c3, 2),
        DerivedTag::C32 => preimage(Modulus::Z2, 2, 4, &|v| c3.contains(v)),
        DerivedTag::Tor0 => tor(0),
        DerivedTag::Tor1 => tor(1),
        DerivedTag::Tor2 => tor(2),
    })
}

/// Minimum Hamming distances of C1..C4; `None` when the code is zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TorsionDistances {
    pub d1: Option<u32>,
    pub d2: Option<u32>,
    pub d3: Option<u32>,
    pub d4: Option<u32>,
}

pub fn torsion_distances(code: &LinearCode, enumeration_budget: u64) -> Result<TorsionDistances> {
    let d = |tag| -> Result<Option<u32>> {
        let sub = derive(code, tag)?;
        sub.check_enumerable(enumeration_budget, "torsion minimum distance")?;
        sub.min_weight(Metric::Hamming)
    };
    Ok(TorsionDistances {
        d1: d(DerivedTag::C1)?,
        d2: d(DerivedTag::C2)?,
        d3: d(DerivedTag::C3)?,
        d4: d(DerivedTag::C4)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckVerdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureCheck {
    pub check_name: String,
    pub claimed_by: String,
    pub verdict: CheckVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub ktype: Vec<usize>,
    /// log2 of each cardinality, keyed by code name.
    pub cardinality_log2: BTreeMap<String, u64>,
    pub self_orthogonal: bool,
    pub self_dual: bool,
    pub checks: Vec<StructureCheck>,
}

impl StructureReport {
    pub fn failures(&self) -> impl Iterator<Item = &StructureCheck> {
        self.checks.iter().filter(|c| c.verdict == CheckVerdict::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&StructureCheck> {
        self.checks.iter().find(|c| c.check_name == name)
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != CheckVerdict::Fail)
    }
}

fn word(v: &[u8]) -> String {
    v.iter().map(|x| char::from(b'0' + x)).collect()
}

struct Checks(Vec<StructureCheck>);

impl Checks {
    fn push(&mut self, name: &str, claim: &str, ok: bool, witness: Option<String>) {
        self.0.push(StructureCheck {
            check_name: name.to_string(),
            claimed_by: claim.to_string(),
            verdict: if ok { CheckVerdict::Pass } else { CheckVerdict::Fail },
            witness: if ok { None } else { witness },
        });
    }

    fn inclusion(&mut self, name: &str, claim: &str, a: &LinearCode, b: &LinearCode) {
        let w = a.inclusion_witness(b);
        self.push(name, claim, w.is_none(), w.as_deref().map(word));
    }

    fn equality(&mut self, name: &str, claim: &str, a: &LinearCode, b: &LinearCode) {
        let w = a.inclusion_witness(b).or_else(|| b.inclusion_witness(a));
        let ok = w.is_none() && a.cardinality_log2() == b.cardinality_log2();
        self.push(name, claim, ok, w.as_deref().map(word));
    }

    fn self_orthogonal(&mut self, name: &str, claim: &str, a: &LinearCode) {
        let so = a.self_orthogonality();
        let q = a.modulus().value() as u32;
        let w = a.generators().iter().find(|g| {
            a.generators()
                .iter()
                .any(|h| crate::ring::dot_mod(g, h, q) != 0)
        });
        self.push(name, claim, so.definitional, w.map(|v| word(v)));
    }

    fn skipped(&mut self, name: &str, claim: &str) {
        self.0.push(StructureCheck {
            check_name: name.to_string(),
            claimed_by: claim.to_string(),
            verdict: CheckVerdict::Skipped,
            witness: None,
        });
    }
}

/// Evaluates the cardinality, inclusion and duality relations among the
/// derived codes of `code`, plus the construction-versus-definition check
/// for each derived code when the length permits enumeration.
pub fn structure_report(code: &LinearCode) -> Result<StructureReport> {
    require_z8(code)?;
    let mut derived = BTreeMap::new();
    for tag in DerivedTag::ALL {
        derived.insert(tag, derive(code, tag)?);
    }
    let g = |t: DerivedTag| &derived[&t];
    let lg = |t: DerivedTag| derived[&t].cardinality_log2();
    let k = code.ktype().to_vec();
    let total = code.cardinality_log2();
    let mut checks = Checks(Vec::new());

    checks.push(
        "cardinality_c1_c3",
        "|C| = |C(1)| * |C(3)|",
        total == lg(DerivedTag::C1) + lg(DerivedTag::C3),
        None,
    );
    checks.push(
        "cardinality_c2_c4",
        "|C| = |C(2)| * |C(4)|",
        total == lg(DerivedTag::C2) + lg(DerivedTag::C4),
        None,
    );
    checks.push(
        "cardinality_tor_product",
        "|C| = |Tor0| * |Tor1| * |Tor2| = 2^(3k0+2k1+k2)",
        total == lg(DerivedTag::Tor0) + lg(DerivedTag::Tor1) + lg(DerivedTag::Tor2)
            && total == (3 * k[0] + 2 * k[1] + k[2]) as u64,
        None,
    );
    checks.push(
        "cardinality_block_counts",
        "|C(1)|, |C(2)|, |C(3)|, |C(4)| = 2^k0, 4^k0 2^k1, 4^(k0+k1) 2^k2, 2^(k0+k1+k2)",
        lg(DerivedTag::C1) == k[0] as u64
            && lg(DerivedTag::C2) == (2 * k[0] + k[1]) as u64
            && lg(DerivedTag::C3) == (2 * (k[0] + k[1]) + k[2]) as u64
            && lg(DerivedTag::C4) == (k[0] + k[1] + k[2]) as u64,
        None,
    );

    // C1 ⊆ C4 compares two binary codes; C2 ⊆ C3 two quaternary codes.
    checks.inclusion("inclusion_c1_in_c4", "C(1) ⊆ C(4)", g(DerivedTag::C1), g(DerivedTag::C4));
    checks.inclusion("inclusion_c2_in_c3", "C(2) ⊆ C(3)", g(DerivedTag::C2), g(DerivedTag::C3));

    checks.equality("equality_c21_c1", "C(21) = C(1)", g(DerivedTag::C21), g(DerivedTag::C1));
    checks.inclusion("inclusion_c1_in_c22", "C(1) ⊆ C(22)", g(DerivedTag::C1), g(DerivedTag::C22));
    checks.equality("equality_c31_c22", "C(31) = C(22)", g(DerivedTag::C31), g(DerivedTag::C22));
    checks.inclusion("inclusion_c31_in_c32", "C(31) ⊆ C(32)", g(DerivedTag::C31), g(DerivedTag::C32));
    checks.equality("equality_c32_c4", "C(32) = C(4)", g(DerivedTag::C32), g(DerivedTag::C4));

    let so = code.self_orthogonality();
    checks.push(
        "self_orthogonality_criterion_agrees",
        "C self-orthogonal iff every row has w1+w3+w5+w7+4w2+4w6 = 0 mod 8 and rows are pairwise orthogonal",
        so.agree(),
        so.witness.as_deref().map(word),
    );
    let self_orthogonal = so.definitional;
    let self_dual = code.is_self_dual();

    if self_orthogonal {
        checks.self_orthogonal("self_orthogonal_c1", "C self-orthogonal => C(1) self-orthogonal", g(DerivedTag::C1));
        checks.self_orthogonal("self_orthogonal_c2", "C self-orthogonal => C(2) self-orthogonal", g(DerivedTag::C2));
        checks.self_orthogonal("self_orthogonal_c3", "C self-orthogonal => C(3) self-orthogonal", g(DerivedTag::C3));
        checks.self_orthogonal("self_orthogonal_c4", "C self-orthogonal => C(4) self-orthogonal", g(DerivedTag::C4));
        let c1_dual = g(DerivedTag::C1).dual()?;
        let c2_dual = g(DerivedTag::C2).dual()?;
        checks.inclusion("inclusion_c4_in_c1_dual", "C self-orthogonal => C(4) ⊆ C(1)^⊥", g(DerivedTag::C4), &c1_dual);
        checks.inclusion("inclusion_c3_in_c2_dual", "C self-orthogonal => C(3) ⊆ C(2)^⊥", g(DerivedTag::C3), &c2_dual);
        let c21_dual = g(DerivedTag::C21).dual()?;
        let c31_dual = g(DerivedTag::C31).dual()?;
        checks.inclusion("chain_c21_in_c22", "C self-orthogonal => C(21) ⊆ C(22)", g(DerivedTag::C21), g(DerivedTag::C22));
        checks.inclusion("chain_c22_in_c21_dual", "C self-orthogonal => C(22) ⊆ C(21)^⊥", g(DerivedTag::C22), &c21_dual);
        checks.inclusion("chain_c31_in_c32", "C self-orthogonal => C(31) ⊆ C(32)", g(DerivedTag::C31), g(DerivedTag::C32));
        checks.inclusion("chain_c32_in_c31_dual", "C self-orthogonal => C(32) ⊆ C(31)^⊥", g(DerivedTag::C32), &c31_dual);
        if self_dual {
            checks.equality("equality_c4_c1_dual", "C self-dual => C(4) = C(1)^⊥", g(DerivedTag::C4), &c1_dual);
            checks.equality("equality_c3_c2_dual", "C self-dual => C(3) = C(2)^⊥", g(DerivedTag::C3), &c2_dual);
        }
    }

    for tag in DerivedTag::ALL {
        let name = format!("construction_{}", tag.name());
        let claim = format!("generator matrix of {} spans its defining set", tag.name());
        match comprehension(code, tag) {
            Ok(set) => {
                let built: HashSet<Vec<u8>> = g(tag).codewords().collect();
                let witness = built.symmetric_difference(&set).min().map(|v| word(v));
                checks.push(&name, &claim, built == set, witness);
            }
            Err(Error::Budget { .. }) => checks.skipped(&name, &claim),
            Err(e) => return Err(e),
        }
    }

    let mut cardinality_log2 = BTreeMap::new();
    cardinality_log2.insert("c".to_string(), total);
    for (tag, c) in &derived {
        cardinality_log2.insert(tag.name().to_string(), c.cardinality_log2());
    }
    Ok(StructureReport {
        ktype: k,
        cardinality_log2,
        self_orthogonal,
        self_dual,
        checks: checks.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(rows: &[&[u8]]) -> LinearCode {
        LinearCode::over(
            Modulus::Z8,
            rows[0].len(),
            rows.iter().map(|r| r.to_vec()).collect(),
        )
        .unwrap()
    }

    fn size(c: &LinearCode) -> u128 {
        c.cardinality().unwrap()
    }

    #[test]
    fn cardinalities_for_type_111() {
        // already in standard form with k0 = k1 = k2 = 1, one free column
        let c = code(&[&[1, 1, 3, 5], &[0, 2, 2, 6], &[0, 0, 4, 4]]);
        assert_eq!(c.ktype(), &[1, 1, 1]);
        assert_eq!(size(&derive(&c, DerivedTag::C1).unwrap()), 2);
        assert_eq!(size(&derive(&c, DerivedTag::C2).unwrap()), 8);
        assert_eq!(size(&derive(&c, DerivedTag::C3).unwrap()), 32);
        assert_eq!(size(&derive(&c, DerivedTag::C4).unwrap()), 8);
    }

    #[test]
    fn zero_code_derived_sets_by_brute_force() {
        for n in 1..=2 {
            let c = LinearCode::zero(Modulus::Z8, n).unwrap();
            for tag in DerivedTag::ALL {
                let set = comprehension(&c, tag).unwrap();
                assert_eq!(set.len(), 1, "{tag} at n={n}");
                assert!(derive(&c, tag).unwrap().is_zero_code());
            }
        }
    }

    #[test]
    fn full_space_saturates() {
        let c = LinearCode::full(Modulus::Z8, 3).unwrap();
        for tag in DerivedTag::ALL {
            let d = derive(&c, tag).unwrap();
            assert!(d.same_code(&LinearCode::full(tag.modulus(), 3).unwrap()), "{tag}");
        }
    }

    #[test]
    fn two_two_example() {
        let c = code(&[&[2, 2]]);
        let r = structure_report(&c).unwrap();
        assert_eq!(r.cardinality_log2["c"], 2);
        assert_eq!(r.cardinality_log2["c1"], 0);
        assert_eq!(r.cardinality_log2["c3"], 2);
        assert_eq!(r.cardinality_log2["c2"], 1);
        assert_eq!(r.cardinality_log2["c4"], 1);
        assert_eq!(r.check("cardinality_c1_c3").unwrap().verdict, CheckVerdict::Pass);
        assert_eq!(r.check("cardinality_c2_c4").unwrap().verdict, CheckVerdict::Pass);
        // (1,1)·(1,1) = 2 in Z4, so C(3) is not self-orthogonal
        let so3 = r.check("self_orthogonal_c3").unwrap();
        assert_eq!(so3.verdict, CheckVerdict::Fail);
        assert_eq!(so3.witness.as_deref(), Some("11"));
    }

    #[test]
    fn torsion_chain_counterexample() {
        // self-orthogonal, yet C(32) = Z2^2 is not inside C(31)^⊥ = <(1,1)>
        let c = code(&[&[2, 2], &[4, 0]]);
        assert!(c.is_self_orthogonal());
        let r = structure_report(&c).unwrap();
        assert_eq!(r.check("chain_c32_in_c31_dual").unwrap().verdict, CheckVerdict::Fail);
        assert_eq!(r.check("self_orthogonal_c4").unwrap().verdict, CheckVerdict::Fail);
        assert_eq!(r.check("inclusion_c4_in_c1_dual").unwrap().verdict, CheckVerdict::Pass);
        assert_eq!(r.check("inclusion_c3_in_c2_dual").unwrap().verdict, CheckVerdict::Pass);
    }

    #[test]
    fn zero_code_report_passes() {
        let c = LinearCode::zero(Modulus::Z8, 2).unwrap();
        let r = structure_report(&c).unwrap();
        assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn long_codes_skip_enumeration_checks() {
        let c = LinearCode::full(Modulus::Z8, 7).unwrap();
        let r = structure_report(&c).unwrap();
        assert_eq!(r.check("construction_c3").unwrap().verdict, CheckVerdict::Skipped);
        assert!(r.all_pass());
    }

    #[test]
    fn tag_names_round_trip() {
        for t in DerivedTag::ALL {
            assert_eq!(t.name().parse::<DerivedTag>().unwrap(), t);
        }
    }
}
