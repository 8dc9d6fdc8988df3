//! Constructors for the classical Z8 code families and the published
//! statements about each, instantiated at concrete parameters.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::code::{LinearCode, Modulus};
use crate::covering::{ClaimRecord, ClaimReference, Quantity, Relation};
use crate::error::{Error, Result};
use crate::ring::Metric;

/// Longest generator matrix the constructors will materialize.
pub const MAX_CONSTRUCTED_LENGTH: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Repetition { a: u8, n: usize },
    BlockRepetition { m: [usize; 7] },
    SimplexAlpha { k: u32 },
    SimplexBeta { k: u32 },
    MacDonaldAlpha { k: u32, u: u32 },
    MacDonaldBeta { k: u32, u: u32 },
    ReedMuller1 { m: u32 },
    Octacode,
}

/// Family names accepted by the suite filter.
pub const FAMILY_WORDS: [&str; 6] = [
    "repetition",
    "block-repetition",
    "simplex",
    "macdonald",
    "reed-muller",
    "octacode",
];

impl FamilySpec {
    /// The family word this spec belongs to (see [`FAMILY_WORDS`]).
    pub fn family(&self) -> &'static str {
        match self {
            FamilySpec::Repetition { .. } => "repetition",
            FamilySpec::BlockRepetition { .. } => "block-repetition",
            FamilySpec::SimplexAlpha { .. } | FamilySpec::SimplexBeta { .. } => "simplex",
            FamilySpec::MacDonaldAlpha { .. } | FamilySpec::MacDonaldBeta { .. } => "macdonald",
            FamilySpec::ReedMuller1 { .. } => "reed-muller",
            FamilySpec::Octacode => "octacode",
        }
    }

    /// Code length implied by the parameters.
    pub fn length(&self) -> u128 {
        match *self {
            FamilySpec::Repetition { n, .. } => n as u128,
            FamilySpec::BlockRepetition { m } => m.iter().sum::<usize>() as u128,
            FamilySpec::SimplexAlpha { k } => 8u128.saturating_pow(k),
            FamilySpec::SimplexBeta { k } => beta_length(k),
            FamilySpec::MacDonaldAlpha { k, u } => 8u128.saturating_pow(k) - 8u128.pow(u.min(k)),
            FamilySpec::MacDonaldBeta { k, u } => beta_length(k) - beta_length(u.min(k)),
            FamilySpec::ReedMuller1 { m } => 1u128 << (m.saturating_sub(2)).min(100),
            FamilySpec::Octacode => 8,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Parameter(msg));
        match *self {
            FamilySpec::Repetition { a, n } => {
                if !(1..=7).contains(&a) {
                    return bad(format!("repetition symbol a={a} must lie in 1..=7"));
                }
                if n == 0 {
                    return bad("repetition length must be positive".into());
                }
            }
            FamilySpec::BlockRepetition { m } => {
                if m.iter().sum::<usize>() == 0 {
                    return bad("block repetition needs at least one block".into());
                }
            }
            FamilySpec::SimplexAlpha { k } => {
                if k == 0 {
                    return bad("simplex alpha needs k >= 1".into());
                }
            }
            FamilySpec::SimplexBeta { k } => {
                if k < 2 {
                    return bad("simplex beta needs k >= 2".into());
                }
            }
            FamilySpec::MacDonaldAlpha { k, u } | FamilySpec::MacDonaldBeta { k, u } => {
                if u == 0 || u >= k {
                    return bad(format!("MacDonald codes need 1 <= u <= k-1, got k={k}, u={u}"));
                }
            }
            FamilySpec::ReedMuller1 { m } => {
                if m < 3 {
                    return bad("Reed-Muller needs m >= 3".into());
                }
            }
            FamilySpec::Octacode => {}
        }
        let n = self.length();
        if n > MAX_CONSTRUCTED_LENGTH as u128 {
            return bad(format!(
                "{self} has length {n}, above the construction limit {MAX_CONSTRUCTED_LENGTH}"
            ));
        }
        Ok(())
    }
}

fn beta_length(k: u32) -> u128 {
    if k == 0 {
        return 0;
    }
    (1u128 << (2 * (k - 1)).min(120)) * ((1u128 << k.min(120)) - 1)
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Repetition { a, n } => write!(f, "repetition:a={a},n={n}"),
            FamilySpec::BlockRepetition { m } => {
                let parts: Vec<String> = m.iter().map(|x| x.to_string()).collect();
                write!(f, "brep:m={}", parts.join(","))
            }
            FamilySpec::SimplexAlpha { k } => write!(f, "simplex-alpha:k={k}"),
            FamilySpec::SimplexBeta { k } => write!(f, "simplex-beta:k={k}"),
            FamilySpec::MacDonaldAlpha { k, u } => write!(f, "macdonald-alpha:k={k},u={u}"),
            FamilySpec::MacDonaldBeta { k, u } => write!(f, "macdonald-beta:k={k},u={u}"),
            FamilySpec::ReedMuller1 { m } => write!(f, "reed-muller:m={m}"),
            FamilySpec::Octacode => f.write_str("octacode"),
        }
    }
}

/// Parses `key=value` pairs where a value may itself be a comma list
/// (only `m` for block repetition).
fn parse_params(family: &str, text: &str) -> Result<Vec<(String, Vec<usize>)>> {
    let mut out: Vec<(String, Vec<usize>)> = Vec::new();
    if text.is_empty() {
        return Ok(out);
    }
    for piece in text.split(',') {
        let piece = piece.trim();
        let number = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("{family}: '{s}' is not a non-negative integer")))
        };
        match piece.split_once('=') {
            Some((key, value)) => out.push((key.trim().to_string(), vec![number(value)?])),
            None => match out.last_mut() {
                Some((_, values)) => values.push(number(piece)?),
                None => return Err(Error::Parse(format!("{family}: expected key=value, got '{piece}'"))),
            },
        }
    }
    Ok(out)
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (family, rest) = s.split_once(':').unwrap_or((s, ""));
        let family = family.to_ascii_lowercase();
        let params = parse_params(&family, rest)?;
        let allowed: &[&str] = match family.as_str() {
            "repetition" | "rep" => &["a", "n"],
            "brep" | "block-repetition" => &["m"],
            "simplex-alpha" | "simplex-beta" => &["k"],
            "reed-muller" | "rm" => &["m"],
            "macdonald-alpha" | "macdonald-beta" => &["k", "u"],
            "octacode" => &[],
            other => return Err(Error::Parse(format!("unknown code family '{other}'"))),
        };
        for (key, values) in &params {
            if !allowed.contains(&key.as_str()) {
                return Err(Error::Parse(format!("{family}: unknown parameter '{key}'")));
            }
            let list_ok = key == "m" && matches!(family.as_str(), "brep" | "block-repetition");
            if values.len() > 1 && !list_ok {
                return Err(Error::Parse(format!("{family}: parameter '{key}' takes one value")));
            }
        }
        let get = |key: &str| -> Result<usize> {
            params
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| v[0])
                .ok_or_else(|| Error::Parse(format!("{family}: missing parameter '{key}'")))
        };
        let small = |key: &str| -> Result<u32> {
            let v = get(key)?;
            u32::try_from(v).map_err(|_| Error::Parameter(format!("{family}: {key}={v} is too large")))
        };
        let spec = match family.as_str() {
            "repetition" | "rep" => {
                let a = get("a")?;
                FamilySpec::Repetition {
                    a: u8::try_from(a).unwrap_or(u8::MAX),
                    n: get("n")?,
                }
            }
            "brep" | "block-repetition" => {
                let values = params
                    .iter()
                    .find(|(k, _)| k == "m")
                    .map(|(_, v)| v.clone())
                    .ok_or_else(|| Error::Parse(format!("{family}: missing parameter 'm'")))?;
                let m: [usize; 7] = values.try_into().map_err(|v: Vec<usize>| {
                    Error::Parse(format!("{family}: m needs 7 entries, got {}", v.len()))
                })?;
                FamilySpec::BlockRepetition { m }
            }
            "simplex-alpha" => FamilySpec::SimplexAlpha { k: small("k")? },
            "simplex-beta" => FamilySpec::SimplexBeta { k: small("k")? },
            "macdonald-alpha" => FamilySpec::MacDonaldAlpha {
                k: small("k")?,
                u: small("u")?,
            },
            "macdonald-beta" => FamilySpec::MacDonaldBeta {
                k: small("k")?,
                u: small("u")?,
            },
            "reed-muller" | "rm" => FamilySpec::ReedMuller1 { m: small("m")? },
            _ => FamilySpec::Octacode,
        };
        spec.validate()?;
        Ok(spec)
    }
}

type Matrix = Vec<Vec<u8>>;

fn simplex_alpha_matrix(k: u32) -> Matrix {
    if k == 1 {
        return vec![(0..8).collect()];
    }
    let below = simplex_alpha_matrix(k - 1);
    let width = below[0].len();
    let mut rows = vec![(0..8u8).flat_map(|s| std::iter::repeat_n(s, width)).collect()];
    rows.extend(below.iter().map(|r| r.repeat(8)));
    rows
}

/// G_1 = [1] seeds the recursion; k = 2 reproduces the displayed matrix.
fn simplex_beta_matrix(k: u32) -> Matrix {
    if k == 1 {
        return vec![vec![1]];
    }
    let alpha = simplex_alpha_matrix(k - 1);
    let beta = simplex_beta_matrix(k - 1);
    let (wa, wb) = (alpha[0].len(), beta[0].len());
    let mut top: Vec<u8> = vec![1; wa];
    for s in [0u8, 2, 4, 6] {
        top.extend(std::iter::repeat_n(s, wb));
    }
    let mut rows = vec![top];
    for (ra, rb) in alpha.iter().zip(&beta) {
        let mut row = ra.clone();
        for _ in 0..4 {
            row.extend_from_slice(rb);
        }
        rows.push(row);
    }
    rows
}

fn delete_columns(matrix: Matrix, range: std::ops::Range<usize>) -> Matrix {
    matrix
        .into_iter()
        .map(|row| {
            row.into_iter()
                .enumerate()
                .filter(|(j, _)| !range.contains(j))
                .map(|(_, x)| x)
                .collect()
        })
        .collect()
}

/// Column block of G_k whose top k-u rows vanish and whose bottom u rows are
/// G_u: the leading block for alpha; for beta the zero-topped block of each
/// recursion level, found at offset 8^(k-1) + 8^(k-2) + ... + 8^u.
fn macdonald_block(k: u32, u: u32, beta: bool) -> std::ops::Range<usize> {
    if beta {
        let start: usize = (u..k).map(|j| 8usize.pow(j)).sum();
        start..start + beta_length(u) as usize
    } else {
        0..8usize.pow(u)
    }
}

/// Rows 4·v_i, where v_i alternates 0- and 1-blocks of size 2^(m-2-i)
/// starting with zeros, then the all-ones row.
fn reed_muller_matrix(m: u32) -> Matrix {
    let n = 1usize << (m - 2);
    let mut rows: Matrix = (1..=m - 2)
        .map(|i| {
            let block = 1usize << (m - 2 - i);
            (0..n).map(|j| if (j / block) % 2 == 1 { 4 } else { 0 }).collect()
        })
        .collect();
    rows.push(vec![1; n]);
    rows
}

pub const OCTACODE: [[u8; 8]; 4] = [
    [5, 7, 5, 6, 1, 0, 0, 0],
    [5, 0, 7, 5, 6, 1, 0, 0],
    [5, 0, 0, 7, 5, 6, 1, 0],
    [5, 0, 0, 0, 7, 5, 6, 1],
];

/// Generator matrix exactly as displayed for the family.
pub fn generator_matrix(spec: &FamilySpec) -> Result<Matrix> {
    spec.validate()?;
    Ok(match *spec {
        FamilySpec::Repetition { a, n } => vec![vec![a; n]],
        FamilySpec::BlockRepetition { m } => vec![(1..=7u8)
            .zip(m)
            .flat_map(|(s, count)| std::iter::repeat_n(s, count))
            .collect()],
        FamilySpec::SimplexAlpha { k } => simplex_alpha_matrix(k),
        FamilySpec::SimplexBeta { k } => simplex_beta_matrix(k),
        FamilySpec::MacDonaldAlpha { k, u } => {
            delete_columns(simplex_alpha_matrix(k), macdonald_block(k, u, false))
        }
        FamilySpec::MacDonaldBeta { k, u } => {
            delete_columns(simplex_beta_matrix(k), macdonald_block(k, u, true))
        }
        FamilySpec::ReedMuller1 { m } => reed_muller_matrix(m),
        FamilySpec::Octacode => OCTACODE.iter().map(|r| r.to_vec()).collect(),
    })
}

pub fn build(spec: &FamilySpec) -> Result<LinearCode> {
    let rows = generator_matrix(spec)?;
    let n = rows[0].len();
    LinearCode::over(Modulus::Z8, n, rows)
}

/// The three set identities among the seven repetition codes at length n:
/// the odd symbols generate one 8-word code, 2 and 6 one 4-word code, and
/// 4 the 2-word code. Returns the classes with their common cardinality.
pub fn repetition_code_table(n: usize) -> Result<Vec<(Vec<u8>, u128)>> {
    let classes: [&[u8]; 3] = [&[1, 3, 5, 7], &[2, 6], &[4]];
    let mut out = Vec::new();
    for class in classes {
        let codes = class
            .iter()
            .map(|&a| build(&FamilySpec::Repetition { a, n }))
            .collect::<Result<Vec<_>>>()?;
        if let Some(other) = codes.iter().skip(1).find(|c| !c.same_code(&codes[0])) {
            return Err(Error::Consistency(format!(
                "repetition codes {:?} differ at n={n}: {} vs {}",
                class,
                codes[0].to_matrix_text().trim(),
                other.to_matrix_text().trim()
            )));
        }
        out.push((class.to_vec(), codes[0].cardinality().unwrap_or(0)));
    }
    Ok(out)
}

fn int(v: i64) -> Ratio<i64> {
    Ratio::from_integer(v)
}

fn pow(b: i64, e: u32) -> i64 {
    b.pow(e)
}

struct Claims {
    subject: String,
    out: Vec<ClaimRecord>,
}

impl Claims {
    fn add(&mut self, id: &str, q: Quantity, rel: Relation, v: Ratio<i64>) {
        self.out
            .push(ClaimRecord::new(id, self.subject.clone(), q, rel, v));
    }

    fn refer(&mut self, id: &str, q: Quantity, rel: Relation, subject: String, rq: Quantity, offset: Ratio<i64>) {
        let reference = ClaimReference {
            subject,
            quantity: rq,
            offset,
        };
        self.out.push(ClaimRecord::conditional(id, self.subject.clone(), q, rel, reference));
    }
}

const E: Metric = Metric::Euclidean;
const HW: Metric = Metric::Homogeneous;

/// Every published statement applicable to `spec`, with exact claimed values.
pub fn claims_for(spec: &FamilySpec) -> Vec<ClaimRecord> {
    use Quantity::*;
    use Relation::*;
    let mut c = Claims {
        subject: spec.to_string(),
        out: Vec::new(),
    };
    match *spec {
        FamilySpec::Repetition { a, n } => {
            let n = n as i64;
            let (text, value) = match a {
                1 | 3 | 5 | 7 => ("repetition: r_E = 11n/2", Ratio::new(11 * n, 2)),
                2 | 6 => ("repetition: r_E = 6n", int(6 * n)),
                _ => ("repetition: r_E = 8n", int(8 * n)),
            };
            c.add(text, Radius(E), Eq, value);
            c.add("repetition: r_HW = 2n", Radius(HW), Eq, int(2 * n));
        }
        FamilySpec::BlockRepetition { m } => {
            let m: [i64; 7] = m.map(|x| x as i64);
            let [m1, m2, m3, m4, m5, m6, m7] = m;
            let odd = m1 + m3 + m5 + m7;
            let n: i64 = m.iter().sum();
            c.add("block repetition: n = m1+...+m7", Length, Eq, int(n));
            c.add("block repetition: M = 8", Cardinality, Eq, int(8));
            let positive_min = |terms: &[i64]| terms.iter().copied().filter(|&t| t > 0).min().unwrap_or(0);
            let d_hw = positive_min(&[
                2 * m1 + 2 * m2 + 2 * m3 + 4 * m4 + 2 * m5 + 2 * m6 + 2 * m7,
                2 * m1 + 4 * m2 + 2 * m3 + 2 * m5 + 4 * m6 + 2 * m7,
                4 * odd,
            ]);
            let d_e = positive_min(&[
                m1 + 4 * m2 + 9 * m3 + 16 * m4 + 9 * m5 + 4 * m6 + m7,
                4 * m1 + 16 * m2 + 4 * m3 + 4 * m5 + 16 * m6 + 4 * m7,
                9 * m1 + 4 * m2 + m3 + 16 * m4 + m5 + 4 * m6 + 9 * m7,
                16 * odd,
            ]);
            c.add("block repetition: d_HW = min of block weights", MinWeight(HW), Eq, int(d_hw));
            c.add("block repetition: d_E = min of block weights", MinWeight(E), Eq, int(d_e));
            c.add(
                "block repetition: r_E = 11/2(m1+m3+m5+m7) + 6(m2+m6) + 8m4",
                Radius(E),
                Eq,
                Ratio::new(11 * odd, 2) + int(6 * (m2 + m6) + 8 * m4),
            );
            let lower = [
                2 * n,
                2 * n - 2 * m1 + 2 * m5,
                2 * n - 2 * m3 + 2 * m7,
                2 * n - 2 * m5 + 2 * m1,
                2 * n - 2 * m7 + 2 * m3,
            ]
            .into_iter()
            .min()
            .unwrap_or(0);
            c.add("block repetition: r_HW >= min of five distances from (1...1)", Radius(HW), Ge, int(lower));
            c.add(
                "block repetition: r_HW <= 11(m1+m3+m5+m7) + 12(m2+m6) + 16m4",
                Radius(HW),
                Le,
                int(11 * odd + 12 * (m2 + m6) + 16 * m4),
            );
        }
        FamilySpec::SimplexAlpha { k } => {
            let p = pow(8, k);
            c.add("simplex alpha: n = 8^k", Length, Eq, int(p));
            c.add("simplex alpha: M = 8^k", Cardinality, Eq, int(p));
            c.add("simplex alpha: d_HW = 2^(3(k+1)-2)", MinWeight(HW), Eq, int(pow(2, 3 * k + 1)));
            c.add("simplex alpha: r_HW >= 2^(3k+1)", Radius(HW), Ge, int(pow(2, 3 * k + 1)));
            c.add("simplex alpha: r_E <= 6(8^k-1)+2", Radius(E), Le, int(6 * (p - 1) + 2));
            c.add("simplex alpha: self-orthogonal", SelfOrthogonal, Eq, int(1));
            c.add("simplex alpha dual: r_E <= 3", DualRadius(E), Le, int(3));
            c.add("simplex alpha dual: r_HW = 1", DualRadius(HW), Eq, int(1));
        }
        FamilySpec::SimplexBeta { k } => {
            let p8 = pow(8, k);
            let p4 = pow(4, k);
            c.add("simplex beta: n = 2^(2(k-1))(2^k-1)", Length, Eq, int(beta_length(k) as i64));
            c.add("simplex beta: M = 8^k", Cardinality, Eq, int(p8));
            c.add(
                "simplex beta: d_HW = 2^(2k-1)(2^k-1)",
                MinWeight(HW),
                Eq,
                int(pow(2, 2 * k - 1) * (pow(2, k) - 1)),
            );
            let base = FamilySpec::SimplexBeta { k: 2 }.to_string();
            c.refer(
                "simplex beta: r_E <= 3/2(8^k-1) - 5/3(4^k-1) - 39/2 + r_E(S_2 beta)",
                Radius(E),
                Le,
                base.clone(),
                Radius(E),
                Ratio::new(3 * (p8 - 1), 2) - Ratio::new(5 * (p4 - 1), 3) - Ratio::new(39, 2),
            );
            c.refer(
                "simplex beta: r_HW <= 3(8^k-1) - 10/3(4^k-1) - 139 + r_HW(S_2 beta)",
                Radius(HW),
                Le,
                base,
                Radius(HW),
                int(3 * (p8 - 1)) - Ratio::new(10 * (p4 - 1), 3) - int(139),
            );
            c.add("simplex beta: self-orthogonal", SelfOrthogonal, Eq, int(1));
            c.add("simplex beta dual: r_HW = 2", DualRadius(HW), Eq, int(2));
        }
        FamilySpec::MacDonaldAlpha { k, u } => {
            c.add("MacDonald alpha: n = 8^k - 8^u", Length, Eq, int(pow(8, k) - pow(8, u)));
            c.add("MacDonald alpha: M = 8^k", Cardinality, Eq, int(pow(8, k)));
            for r in u + 1..=k {
                c.refer(
                    &format!("MacDonald alpha: r_E <= 6(8^k-8^r) + r_E(M_(r,u) alpha) at r={r}"),
                    Radius(E),
                    Le,
                    FamilySpec::MacDonaldAlpha { k: r, u }.to_string(),
                    Radius(E),
                    int(6 * (pow(8, k) - pow(8, r))),
                );
            }
        }
        FamilySpec::MacDonaldBeta { k, u } => {
            c.add(
                "MacDonald beta: n = 2^(2(k-1))(2^k-1) - 2^(2(u-1))(2^u-1)",
                Length,
                Eq,
                int((beta_length(k) - beta_length(u)) as i64),
            );
            c.add("MacDonald beta: M = 8^k", Cardinality, Eq, int(pow(8, k)));
        }
        FamilySpec::ReedMuller1 { m } => {
            c.add("Reed-Muller: n = 2^(m-2)", Length, Eq, int(pow(2, m - 2)));
            c.add("Reed-Muller: M = 2^(m+1)", Cardinality, Eq, int(pow(2, m + 1)));
            c.add("Reed-Muller: d_HW = 2^(m-1)", MinWeight(HW), Eq, int(pow(2, m - 1)));
            if m % 2 == 0 {
                c.add(
                    "Reed-Muller: r_HW = 2^(m-1) - 2^(m/2-1)",
                    Radius(HW),
                    Eq,
                    int(pow(2, m - 1) - pow(2, m / 2 - 1)),
                );
            }
        }
        FamilySpec::Octacode => {
            c.add("octacode: M = 8^4", Cardinality, Eq, int(4096));
            c.add("octacode: self-dual", SelfDual, Eq, int(1));
            c.add("octacode: r_HW >= 6", Radius(HW), Ge, int(6));
        }
    }
    c.out
}

/// The fixed desk-scale suite of family instances, in report order.
pub fn desk_suite() -> Vec<FamilySpec> {
    let mut specs = Vec::new();
    for n in [1, 2, 4, 8] {
        for a in 1..=7 {
            specs.push(FamilySpec::Repetition { a, n });
        }
    }
    for code in 0..3usize.pow(7) {
        let mut m = [0usize; 7];
        let mut x = code;
        for slot in m.iter_mut() {
            *slot = x % 3;
            x /= 3;
        }
        let total: usize = m.iter().sum();
        if (1..=4).contains(&total) {
            specs.push(FamilySpec::BlockRepetition { m });
        }
    }
    specs.extend([
        FamilySpec::SimplexAlpha { k: 1 },
        FamilySpec::SimplexAlpha { k: 2 },
        FamilySpec::SimplexBeta { k: 2 },
        FamilySpec::MacDonaldAlpha { k: 2, u: 1 },
        FamilySpec::MacDonaldBeta { k: 2, u: 1 },
        FamilySpec::ReedMuller1 { m: 4 },
        FamilySpec::Octacode,
    ]);
    specs
}
