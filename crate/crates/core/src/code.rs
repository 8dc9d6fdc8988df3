//! Linear codes over Z8 (and over the subrings Z4, Z2 that the torsion
//! constructions produce): standard form, membership, duals, enumeration.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{dot_mod, weight_of, Metric, OctVector};

/// One of the chain rings Z2, Z4, Z8.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus {
    bits: u32,
}

impl Modulus {
    pub const Z2: Modulus = Modulus { bits: 1 };
    pub const Z4: Modulus = Modulus { bits: 2 };
    pub const Z8: Modulus = Modulus { bits: 3 };

    pub fn from_value(q: u8) -> Result<Self> {
        match q {
            2 => Ok(Self::Z2),
            4 => Ok(Self::Z4),
            8 => Ok(Self::Z8),
            _ => Err(Error::Parameter(format!("unsupported modulus {q}"))),
        }
    }

    /// Nilpotency index e, with q = 2^e.
    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn value(self) -> u8 {
        1 << self.bits
    }

    fn mask(self) -> u8 {
        self.value() - 1
    }

    fn reduce(self, x: u32) -> u8 {
        (x & self.mask() as u32) as u8
    }

    fn valuation(self, x: u8) -> u32 {
        if x == 0 {
            self.bits
        } else {
            x.trailing_zeros()
        }
    }
}

impl Serialize for Modulus {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.value())
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z{}", self.value())
    }
}

/// Inverse of an odd residue modulo 2^bits.
fn unit_inverse(u: u8, modulus: Modulus) -> u8 {
    let q = modulus.value() as u32;
    (1..q)
        .step_by(2)
        .find(|&v| (u as u32 * v) % q == 1)
        .map(|v| v as u8)
        .expect("odd residues are units")
}

fn row_axpy(target: &mut [u8], factor: u8, row: &[u8], modulus: Modulus) {
    // target -= factor * row
    let q = modulus.value() as u32;
    for (t, &r) in target.iter_mut().zip(row) {
        let prod = (factor as u32 * r as u32) % q;
        *t = modulus.reduce(*t as u32 + q - prod);
    }
}

/// Generator matrix in the block form
///
/// ```text
/// [ I  A01   A02   A03  ]
/// [ 0  2I   2A12  2A13  ]
/// [ 0  0    4I    4A23  ]
/// ```
///
/// (for Z8; Z4 and Z2 drop the lower levels), on permuted coordinates.
/// Pivots sit on the diagonal: row `r` has its pivot at column position `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardForm {
    modulus: Modulus,
    n: usize,
    rows: Vec<Vec<u8>>,
    levels: Vec<u32>,
    ktype: Vec<usize>,
    permutation: Vec<usize>,
}

impl StandardForm {
    /// Gaussian elimination over Z_{2^e}.
    ///
    /// Level by level (units first, then elements of valuation 1, then 2),
    /// the leftmost column holding an entry of the current valuation is
    /// swapped into the pivot position, taking the lowest-index row. Pivot
    /// rows are scaled so the pivot is exactly 2^level; entries above a pivot
    /// are reduced modulo 2^level.
    pub fn compute(rows: &[Vec<u8>], n: usize, modulus: Modulus) -> StandardForm {
        let e = modulus.bits();
        let mut m: Vec<Vec<u8>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| x & modulus.mask()).collect())
            .collect();
        let mut permutation: Vec<usize> = (0..n).collect();
        let mut levels = Vec::new();
        let mut ktype = vec![0usize; e as usize];
        let mut r = 0usize;

        for level in 0..e {
            loop {
                let pivot = (r..n).find_map(|j| {
                    (r..m.len())
                        .find(|&i| modulus.valuation(m[i][j]) == level)
                        .map(|i| (i, j))
                });
                let Some((pi, pj)) = pivot else { break };
                m.swap(r, pi);
                if pj != r {
                    for row in m.iter_mut() {
                        row.swap(r, pj);
                    }
                    permutation.swap(r, pj);
                }
                let unit = m[r][r] >> level;
                let inv = unit_inverse(unit, modulus);
                for x in m[r].iter_mut() {
                    *x = modulus.reduce(*x as u32 * inv as u32);
                }
                debug_assert_eq!(m[r][r], 1 << level);
                let pivot_row = m[r].clone();
                for (i, row) in m.iter_mut().enumerate() {
                    if i == r || row[r] == 0 {
                        continue;
                    }
                    let factor = row[r] >> level;
                    row_axpy(row, factor, &pivot_row, modulus);
                }
                levels.push(level);
                ktype[level as usize] += 1;
                r += 1;
            }
        }
        m.truncate(r);
        debug_assert!(m.iter().all(|row| row.len() == n));
        StandardForm {
            modulus,
            n,
            rows: m,
            levels,
            ktype,
            permutation,
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// (k0, k1, ...) block dimensions.
    pub fn ktype(&self) -> &[usize] {
        &self.ktype
    }

    /// Rows on the permuted coordinates.
    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    /// Level of each row; row `i` equals 2^level times a vector with a unit pivot.
    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    /// `permutation()[j]` is the original index of permuted column `j`.
    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cardinality_log2(&self) -> u64 {
        let e = self.modulus.bits() as u64;
        self.levels.iter().map(|&l| e - l as u64).sum()
    }

    /// Rows mapped back onto the original coordinate order.
    pub fn rows_original(&self) -> Vec<Vec<u8>> {
        self.rows.iter().map(|r| self.unpermute(r)).collect()
    }

    pub(crate) fn unpermute(&self, permuted: &[u8]) -> Vec<u8> {
        let mut out = vec![0u8; self.n];
        for (j, &orig) in self.permutation.iter().enumerate() {
            out[orig] = permuted[j];
        }
        out
    }

    pub(crate) fn permute(&self, original: &[u8]) -> Vec<u8> {
        self.permutation.iter().map(|&orig| original[orig]).collect()
    }

    /// Column positions of block `j`: blocks 0..e hold pivots, block e is free.
    pub fn column_block(&self, j: usize) -> std::ops::Range<usize> {
        let start: usize = self.ktype[..j.min(self.ktype.len())].iter().sum();
        if j >= self.ktype.len() {
            start..self.n
        } else {
            start..start + self.ktype[j]
        }
    }

    fn row_block(&self, i: usize) -> std::ops::Range<usize> {
        self.column_block(i)
    }

    /// Block A_{i,j} with the row multiplier 2^i divided out.
    pub fn block(&self, i: usize, j: usize) -> Vec<Vec<u8>> {
        let cols = self.column_block(j);
        self.rows[self.row_block(i)]
            .iter()
            .map(|row| row[cols.clone()].iter().map(|&x| x >> i).collect())
            .collect()
    }

    /// Binary digits (B, B¹, B²) of A_{0,j}, with A_{0,j} = B + 2B¹ + 4B².
    pub fn binary_decomposition(&self, j: usize) -> [Vec<Vec<u8>>; 3] {
        let a = self.block(0, j);
        let digit = |d: u32| -> Vec<Vec<u8>> {
            a.iter()
                .map(|r| r.iter().map(|&x| (x >> d) & 1).collect())
                .collect()
        };
        [digit(0), digit(1), digit(2)]
    }

    /// Membership test by reduction against the pivots.
    pub fn contains(&self, v: &[u8]) -> bool {
        if v.len() != self.n {
            return false;
        }
        let mut w = self.permute(v);
        for x in w.iter_mut() {
            *x &= self.modulus.mask();
        }
        for (r, row) in self.rows.iter().enumerate() {
            let level = self.levels[r];
            let x = w[r];
            if x & ((1u8 << level) - 1) != 0 {
                return false;
            }
            if x != 0 {
                row_axpy(&mut w, x >> level, row, self.modulus);
            }
        }
        w.iter().all(|&x| x == 0)
    }

    /// Generators of the annihilator, on the original coordinates.
    ///
    /// Solves `row · x = 0` by back-substitution: free coordinates and the
    /// 2^(e-level) slack of each pivot coordinate are the parameters.
    pub(crate) fn dual_generators(&self) -> Vec<Vec<u8>> {
        let e = self.modulus.bits();
        let r = self.rank();
        let q = self.modulus.value() as u32;
        let solve = |seed: &dyn Fn(usize) -> u8, free: Option<usize>| -> Vec<u8> {
            let mut x = vec![0u8; self.n];
            if let Some(f) = free {
                x[f] = 1;
            }
            for p in (0..r).rev() {
                let level = self.levels[p];
                let row = &self.rows[p];
                let s: u32 = (p + 1..self.n)
                    .map(|c| (row[c] >> level) as u32 * x[c] as u32)
                    .sum();
                x[p] = self
                    .modulus
                    .reduce(seed(p) as u32 + q - (s % q));
            }
            self.unpermute(&x)
        };
        let mut gens = Vec::new();
        for f in r..self.n {
            gens.push(solve(&|_| 0, Some(f)));
        }
        for p in 0..r {
            let level = self.levels[p];
            if level == 0 {
                continue;
            }
            let slack = 1u8 << (e - level);
            gens.push(solve(&|i| if i == p { slack } else { 0 }, None));
        }
        gens
    }
}

/// A linear code given by generator rows over Z8, Z4 or Z2.
///
/// The standard form is computed on first use and cached.
#[derive(Debug)]
pub struct LinearCode {
    modulus: Modulus,
    n: usize,
    generators: Vec<Vec<u8>>,
    standard: OnceLock<StandardForm>,
}

/// Codes over Z2 or Z4 produced by reduction and torsion.
pub type SubringCode = LinearCode;

impl Clone for LinearCode {
    fn clone(&self) -> Self {
        let standard = OnceLock::new();
        if let Some(sf) = self.standard.get() {
            let _ = standard.set(sf.clone());
        }
        LinearCode {
            modulus: self.modulus,
            n: self.n,
            generators: self.generators.clone(),
            standard,
        }
    }
}

impl LinearCode {
    /// Code over Z8 spanned by `rows`.
    pub fn new(rows: Vec<OctVector>) -> Result<Self> {
        let n = rows
            .first()
            .map(OctVector::len)
            .ok_or_else(|| Error::Parameter("a generator matrix needs at least one row".into()))?;
        Self::over(
            Modulus::Z8,
            n,
            rows.into_iter().map(|r| r.coords().to_vec()).collect(),
        )
    }

    /// Code over `modulus` of length `n`; rows may be empty (the zero code).
    pub fn over(modulus: Modulus, n: usize, rows: Vec<Vec<u8>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("code length must be at least 1".into()));
        }
        for row in &rows {
            if row.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    found: row.len(),
                });
            }
            if row.iter().any(|&x| x >= modulus.value()) {
                return Err(Error::Parameter(format!(
                    "entry out of range for {modulus} in row {row:?}"
                )));
            }
        }
        Ok(LinearCode {
            modulus,
            n,
            generators: rows,
            standard: OnceLock::new(),
        })
    }

    pub fn zero(modulus: Modulus, n: usize) -> Result<Self> {
        Self::over(modulus, n, Vec::new())
    }

    /// The whole ambient space Z_q^n.
    pub fn full(modulus: Modulus, n: usize) -> Result<Self> {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![0u8; n];
                r[i] = 1;
                r
            })
            .collect();
        Self::over(modulus, n, rows)
    }

    pub(crate) fn from_standard(sf: StandardForm) -> Self {
        let code = LinearCode {
            modulus: sf.modulus,
            n: sf.n,
            generators: sf.rows_original(),
            standard: OnceLock::new(),
        };
        let _ = code.standard.set(sf);
        code
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn generators(&self) -> &[Vec<u8>] {
        &self.generators
    }

    pub fn generator_vectors(&self) -> Vec<OctVector> {
        self.generators
            .iter()
            .map(|r| OctVector::from_raw(r.clone()))
            .collect()
    }

    pub fn standard_form(&self) -> &StandardForm {
        self.standard
            .get_or_init(|| StandardForm::compute(&self.generators, self.n, self.modulus))
    }

    pub fn ktype(&self) -> &[usize] {
        self.standard_form().ktype()
    }

    pub fn cardinality_log2(&self) -> u64 {
        self.standard_form().cardinality_log2()
    }

    /// |C| if it fits in 128 bits.
    pub fn cardinality(&self) -> Option<u128> {
        let l = self.cardinality_log2();
        (l < 128).then(|| 1u128 << l)
    }

    pub fn is_zero_code(&self) -> bool {
        self.standard_form().rank() == 0
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.standard_form().contains(v)
    }

    /// C ⊆ other, tested on generators.
    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        self.modulus == other.modulus
            && self.n == other.n
            && self.generators.iter().all(|g| other.contains(g))
    }

    /// Set equality.
    pub fn same_code(&self, other: &LinearCode) -> bool {
        self.is_subcode_of(other) && self.cardinality_log2() == other.cardinality_log2()
    }

    /// First generator of `self` outside `other`, as a witness of non-inclusion.
    pub fn inclusion_witness(&self, other: &LinearCode) -> Option<Vec<u8>> {
        self.generators.iter().find(|g| !other.contains(g)).cloned()
    }

    /// Each codeword exactly once, as combinations of the standard-form rows
    /// with coefficients ranging over Z_{2^(e-level)}.
    pub fn codewords(&self) -> Codewords {
        let sf = self.standard_form();
        let rows = sf.rows_original();
        let orders = sf
            .levels()
            .iter()
            .map(|&l| 1u32 << (self.modulus.bits() - l))
            .collect::<Vec<_>>();
        Codewords {
            modulus: self.modulus,
            rows,
            orders,
            coeffs: vec![0; sf.rank()],
            current: vec![0; self.n],
            done: false,
        }
    }

    pub(crate) fn check_enumerable(&self, budget: u64, what: &'static str) -> Result<()> {
        let l = self.cardinality_log2();
        if l >= 63 || (1u64 << l) > budget {
            return Err(Error::budget(what, format!("2^{l} codewords"), budget));
        }
        Ok(())
    }

    fn check_metric(&self, metric: Metric) -> Result<()> {
        if self.modulus != Modulus::Z8 && metric != Metric::Hamming {
            return Err(Error::Parameter(format!(
                "{metric} weight is defined for Z8 codes only"
            )));
        }
        Ok(())
    }

    /// Minimum weight over nonzero codewords; `None` for the zero code.
    pub fn min_weight(&self, metric: Metric) -> Result<Option<u32>> {
        self.check_metric(metric)?;
        Ok(self
            .codewords()
            .filter(|c| c.iter().any(|&x| x != 0))
            .map(|c| weight_of(&c, metric))
            .min())
    }

    pub fn weight_distribution(&self, metric: Metric) -> Result<BTreeMap<u32, u64>> {
        self.check_metric(metric)?;
        let mut hist = BTreeMap::new();
        for c in self.codewords() {
            *hist.entry(weight_of(&c, metric)).or_insert(0u64) += 1;
        }
        Ok(hist)
    }

    /// The annihilator code under the standard inner product mod q.
    ///
    /// Built by back-substitution on the standard form, then checked for
    /// orthogonality and |C|·|C^⊥| = q^n.
    pub fn dual(&self) -> Result<LinearCode> {
        let sf = self.standard_form();
        let dual = LinearCode::over(self.modulus, self.n, sf.dual_generators())?;
        if self.verify_dual(&dual) {
            return Ok(dual);
        }
        // Only reachable on an elimination bug; fall back to a kernel scan.
        let fallback = self.kernel_by_enumeration()?;
        if self.verify_dual(&fallback) {
            Ok(fallback)
        } else {
            Err(Error::Consistency(format!(
                "dual construction failed for code of length {}",
                self.n
            )))
        }
    }

    fn verify_dual(&self, dual: &LinearCode) -> bool {
        let q = self.modulus.value() as u32;
        let orthogonal = dual
            .generators
            .iter()
            .all(|h| self.generators.iter().all(|g| dot_mod(g, h, q) == 0));
        orthogonal
            && self.cardinality_log2() + dual.cardinality_log2()
                == self.modulus.bits() as u64 * self.n as u64
    }

    fn kernel_by_enumeration(&self) -> Result<LinearCode> {
        let q = self.modulus.value() as u64;
        let total = (q as f64).powi(self.n as i32);
        if total > (1u64 << 20) as f64 {
            return Err(Error::Consistency(
                "dual verification failed and the ambient space is too large to rescan".into(),
            ));
        }
        let qq = q as u32;
        let rows: Vec<Vec<u8>> = Ambient::new(self.modulus, self.n)
            .filter(|x| self.generators.iter().all(|g| dot_mod(g, x, qq) == 0))
            .collect();
        let sf = StandardForm::compute(&rows, self.n, self.modulus);
        Ok(LinearCode::from_standard(sf))
    }

    pub fn self_orthogonality(&self) -> SelfOrthogonality {
        let q = self.modulus.value() as u32;
        let g = &self.generators;
        let mut definitional = true;
        let mut pairs_orthogonal = true;
        let mut norms_vanish = true;
        let mut witness = None;
        for i in 0..g.len() {
            for j in i..g.len() {
                if dot_mod(&g[i], &g[j], q) != 0 {
                    definitional = false;
                    if i != j {
                        pairs_orthogonal = false;
                    }
                }
            }
            if self.modulus == Modulus::Z8 {
                let comp = OctVector::from_raw(g[i].clone()).composition();
                if comp.self_orthogonality_residue() != 0 {
                    norms_vanish = false;
                }
            } else if dot_mod(&g[i], &g[i], q) != 0 {
                norms_vanish = false;
            }
        }
        let criterion = norms_vanish && pairs_orthogonal;
        if criterion != definitional {
            witness = g
                .iter()
                .position(|r| dot_mod(r, r, q) != 0)
                .map(|i| g[i].clone());
        }
        SelfOrthogonality {
            definitional,
            criterion,
            witness,
        }
    }

    /// C ⊆ C^⊥.
    pub fn is_self_orthogonal(&self) -> bool {
        self.self_orthogonality().definitional
    }

    /// C = C^⊥.
    pub fn is_self_dual(&self) -> bool {
        self.is_self_orthogonal()
            && 2 * self.cardinality_log2() == self.modulus.bits() as u64 * self.n as u64
    }

    /// Reduces every generator modulo a smaller modulus.
    pub fn reduce_to(&self, target: Modulus) -> Result<LinearCode> {
        let rows = self
            .generators
            .iter()
            .map(|r| r.iter().map(|&x| x & (target.value() - 1)).collect())
            .collect();
        LinearCode::over(target, self.n, rows)
    }

    /// Applies a coordinate permutation: new coordinate `j` takes old `perm[j]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<LinearCode> {
        if perm.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: perm.len(),
            });
        }
        let rows = self
            .generators
            .iter()
            .map(|r| perm.iter().map(|&p| r[p]).collect())
            .collect();
        LinearCode::over(self.modulus, self.n, rows)
    }

    /// Text form: one row per line, entries separated by single spaces.
    pub fn to_matrix_text(&self) -> String {
        format_matrix(&self.generators)
    }
}

/// Outcome of the two self-orthogonality tests.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelfOrthogonality {
    /// Every pair of generators (including a row with itself) is orthogonal.
    pub definitional: bool,
    /// Symbol-count criterion on each row plus pairwise orthogonality.
    pub criterion: bool,
    /// Row on which the two tests disagree, if they do.
    pub witness: Option<Vec<u8>>,
}

impl SelfOrthogonality {
    pub fn agree(&self) -> bool {
        self.definitional == self.criterion
    }
}

pub struct Codewords {
    modulus: Modulus,
    rows: Vec<Vec<u8>>,
    orders: Vec<u32>,
    coeffs: Vec<u32>,
    current: Vec<u8>,
    done: bool,
}

impl Iterator for Codewords {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        // odometer step: wrapping a coefficient adds its row one more time,
        // which is zero since order * row = 0
        let mask = self.modulus.value() - 1;
        let mut advanced = false;
        for j in 0..self.rows.len() {
            for (c, &r) in self.current.iter_mut().zip(&self.rows[j]) {
                *c = (*c + r) & mask;
            }
            self.coeffs[j] += 1;
            if self.coeffs[j] < self.orders[j] {
                advanced = true;
                break;
            }
            self.coeffs[j] = 0;
        }
        if !advanced {
            self.done = true;
        }
        Some(out)
    }
}

/// Every vector of Z_q^n in lexicographic order (last coordinate fastest).
pub(crate) struct Ambient {
    q: u8,
    current: Vec<u8>,
    done: bool,
}

impl Ambient {
    pub(crate) fn new(modulus: Modulus, n: usize) -> Self {
        Ambient {
            q: modulus.value(),
            current: vec![0; n],
            done: false,
        }
    }
}

impl Iterator for Ambient {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let mut i = self.current.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.current[i] += 1;
            if self.current[i] < self.q {
                break;
            }
            self.current[i] = 0;
        }
        Some(out)
    }
}

pub fn format_matrix(rows: &[Vec<u8>]) -> String {
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().map(|x| x.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the matrix text format. `#` starts a comment line; blank lines are skipped.
pub fn parse_matrix(text: &str) -> Result<Vec<OctVector>> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let coords = line
            .split_whitespace()
            .map(|tok| match tok.parse::<u8>() {
                Ok(d) if d < 8 => Ok(d),
                _ => Err(Error::Parse(format!(
                    "line {}: '{tok}' is not a digit 0-7",
                    lineno + 1
                ))),
            })
            .collect::<Result<Vec<u8>>>()?;
        if let Some(first) = rows.first().map(OctVector::len) {
            if first != coords.len() {
                return Err(Error::Parse(format!(
                    "line {}: row has {} entries, expected {first}",
                    lineno + 1,
                    coords.len()
                )));
            }
        }
        rows.push(OctVector::from_raw(coords));
    }
    Ok(rows)
}
