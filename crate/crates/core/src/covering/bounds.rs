use num_bigint::BigUint;
use serde::Serialize;

use crate::code::{LinearCode, Modulus};
use crate::error::{Error, Result};
use crate::ring::Metric;
use crate::torsion::TorsionDistances;

/// Ambient mass used by the sphere-covering inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SphereForm {
    /// 2^(4n), the size of the binary Gray space
    Paper,
    /// 8^n, the size of the octonary ambient space
    Sound,
}

/// Coefficients V_i of (1 + 2x + 2x^4 + 2x^9 + x^16)^n: the number of
/// vectors of Z8^n with Euclidean weight i.
pub fn euclidean_ball_polynomial(n: usize) -> Vec<BigUint> {
    let factor: [(usize, u32); 5] = [(0, 1), (1, 2), (4, 2), (9, 2), (16, 1)];
    let mut poly = vec![BigUint::from(1u32)];
    for _ in 0..n {
        let mut next = vec![BigUint::default(); poly.len() + 16];
        for (i, c) in poly.iter().enumerate() {
            for &(e, f) in &factor {
                next[i + e] += c * f;
            }
        }
        poly = next;
    }
    poly
}

fn binomials(m: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::from(1u32)];
    for i in 0..m {
        let next = &row[i] * (m - i) / (i + 1);
        row.push(next);
    }
    row
}

/// Smallest r with M · |ball(r)| ≥ ambient mass, or `None` when even the
/// largest ball falls short. Homogeneous balls are counted in the binary
/// Gray space, Euclidean balls in Z8^n.
pub fn sphere_covering_lower(
    n: usize,
    cardinality: &BigUint,
    metric: Metric,
    form: SphereForm,
) -> Result<Option<u32>> {
    let shells = match metric {
        Metric::Homogeneous => binomials(4 * n),
        Metric::Euclidean => euclidean_ball_polynomial(n),
        _ => {
            return Err(Error::Parameter(format!(
                "sphere-covering bound is defined for the homogeneous and Euclidean metrics, not {metric}"
            )))
        }
    };
    let exponent = match form {
        SphereForm::Paper => 4 * n,
        SphereForm::Sound => 3 * n,
    };
    let mass = BigUint::from(1u32) << exponent;
    let mut ball = BigUint::default();
    for (r, v) in shells.iter().enumerate() {
        ball += v;
        if &ball * cardinality >= mass {
            return Ok(Some(r as u32));
        }
    }
    Ok(None)
}

/// Number of distinct nonzero homogeneous weights in the dual, paired with
/// the resulting claimed bounds (s, 5s) on r_HW and r_E.
pub fn delsarte_upper(code: &LinearCode, enumeration_budget: u64) -> Result<(u32, u32)> {
    let dual = code.dual()?;
    dual.check_enumerable(enumeration_budget, "dual weight distribution")?;
    let s = dual
        .weight_distribution(Metric::Homogeneous)?
        .keys()
        .filter(|&&w| w != 0)
        .count() as u32;
    Ok((s, 5 * s))
}

/// The code generated by [[0, G1], [G0, A]], of length n0 + n1.
pub fn mattson_compose(c0: &LinearCode, c1: &LinearCode, a: &[Vec<u8>]) -> Result<LinearCode> {
    let g0 = c0.generators();
    let g1 = c1.generators();
    if a.len() != g0.len() {
        return Err(Error::Dimension {
            expected: g0.len(),
            found: a.len(),
        });
    }
    if let Some(row) = a.iter().find(|r| r.len() != c1.len()) {
        return Err(Error::Dimension {
            expected: c1.len(),
            found: row.len(),
        });
    }
    let n0 = c0.len();
    let mut rows: Vec<Vec<u8>> = g1
        .iter()
        .map(|g| std::iter::repeat_n(0, n0).chain(g.iter().copied()).collect())
        .collect();
    rows.extend(
        g0.iter()
            .zip(a)
            .map(|(g, r)| g.iter().chain(r.iter()).map(|&x| x & 7).collect()),
    );
    LinearCode::over(Modulus::Z8, n0 + c1.len(), rows)
}

/// Direct sum C0 ⊕ C1.
pub fn direct_sum(c0: &LinearCode, c1: &LinearCode) -> Result<LinearCode> {
    let zeros = vec![vec![0u8; c1.len()]; c0.generators().len()];
    mattson_compose(c0, c1, &zeros)
}

/// Outcome of the torsion-distance lower bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum TorsionLowerBound {
    /// claimed lower bounds (r_E ≥ 9t, r_HW ≥ 2t)
    Claimed { t: u32, euclidean: u32, homogeneous: u32 },
    Absent { failed_hypothesis: String },
}

/// Evaluates t = min{⌊d1/8⌋, ⌊d2/18⌋, 4⌊d3/25⌋, 16⌊d4/25⌋} when d1 ≥ 8,
/// d2 ≥ 18, d3 ≥ 25/4 and d4 ≥ 25/16. Absent distances (zero codes) count
/// as infinite.
pub fn torsion_lower_bound(d: &TorsionDistances) -> TorsionLowerBound {
    let inf = u32::MAX;
    let [d1, d2, d3, d4] = [d.d1, d.d2, d.d3, d.d4].map(|x| x.unwrap_or(inf));
    let hypotheses = [
        (d1 >= 8, "d1 >= 8"),
        (d2 >= 18, "d2 >= 18"),
        (d3 == inf || 4 * d3 >= 25, "d3 >= 25/4"),
        (d4 == inf || 16 * d4 >= 25, "d4 >= 25/16"),
    ];
    if let Some((_, h)) = hypotheses.iter().find(|(ok, _)| !ok) {
        return TorsionLowerBound::Absent {
            failed_hypothesis: h.to_string(),
        };
    }
    let term = |d: u32, div: u32, mul: u32| if d == inf { inf } else { mul * (d / div) };
    let t = [term(d1, 8, 1), term(d2, 18, 1), term(d3, 25, 4), term(d4, 25, 16)]
        .into_iter()
        .min()
        .unwrap_or(inf);
    if t == inf {
        return TorsionLowerBound::Absent {
            failed_hypothesis: "code is nonzero".to_string(),
        };
    }
    TorsionLowerBound::Claimed {
        t,
        euclidean: 9 * t,
        homogeneous: 2 * t,
    }
}
