//! Arithmetic on vectors over Z8, the four weight functions and the Gray map.
//!
//! Homogeneous weight of the zero symbol is taken to be 0; with that choice
//! the Gray map below is an isometry from (Z8, d_HW) into (Z2^4, d_H).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A residue modulo 8.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Residue(u8);

impl Residue {
    pub const ZERO: Residue = Residue(0);

    pub fn new(value: u8) -> Result<Self> {
        if value < 8 {
            Ok(Residue(value))
        } else {
            Err(Error::Parameter(format!("{value} is not a residue mod 8")))
        }
    }

    /// Reduces an arbitrary integer modulo 8.
    pub fn reduce(value: i64) -> Self {
        Residue(value.rem_euclid(8) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn is_unit(self) -> bool {
        self.0 & 1 == 1
    }

    /// 2-adic valuation, with 3 for zero.
    pub fn valuation(self) -> u32 {
        if self.0 == 0 {
            3
        } else {
            self.0.trailing_zeros()
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Hamming,
    Lee,
    Euclidean,
    Homogeneous,
}

impl Metric {
    pub const ALL: [Metric; 4] = [
        Metric::Hamming,
        Metric::Lee,
        Metric::Euclidean,
        Metric::Homogeneous,
    ];

    /// Weight of each symbol 0..8 under this metric.
    pub const fn table(self) -> [u32; 8] {
        match self {
            Metric::Hamming => [0, 1, 1, 1, 1, 1, 1, 1],
            Metric::Lee => [0, 1, 2, 3, 4, 3, 2, 1],
            Metric::Euclidean => [0, 1, 4, 9, 16, 9, 4, 1],
            Metric::Homogeneous => [0, 2, 2, 2, 4, 2, 2, 2],
        }
    }

    /// Largest weight a single symbol can carry.
    pub const fn max_symbol_weight(self) -> u32 {
        match self {
            Metric::Hamming => 1,
            Metric::Lee => 4,
            Metric::Euclidean => 16,
            Metric::Homogeneous => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Metric::Hamming => "hamming",
            Metric::Lee => "lee",
            Metric::Euclidean => "euclidean",
            Metric::Homogeneous => "homogeneous",
        }
    }

    /// Conventional short symbol (H, L, E, HW).
    pub fn short(self) -> &'static str {
        match self {
            Metric::Hamming => "H",
            Metric::Lee => "L",
            Metric::Euclidean => "E",
            Metric::Homogeneous => "HW",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hamming" | "h" => Ok(Metric::Hamming),
            "lee" | "l" => Ok(Metric::Lee),
            "euclidean" | "e" => Ok(Metric::Euclidean),
            "homogeneous" | "hw" => Ok(Metric::Homogeneous),
            other => Err(Error::Parse(format!("unknown metric '{other}'"))),
        }
    }
}

pub fn symbol_weight(x: Residue, metric: Metric) -> u32 {
    metric.table()[x.0 as usize]
}

/// Per-symbol Gray images, most significant bit first.
pub const GRAY_TABLE: [[u8; 4]; 8] = [
    [0, 0, 0, 0],
    [0, 1, 0, 1],
    [0, 0, 1, 1],
    [0, 1, 1, 0],
    [1, 1, 1, 1],
    [1, 0, 1, 0],
    [1, 1, 0, 0],
    [1, 0, 0, 1],
];

/// A vector over Z8 of fixed length. Entries are stored as bytes below 8.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OctVector(Vec<u8>);

impl OctVector {
    pub fn new(coords: Vec<u8>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Parameter("vectors must have length at least 1".into()));
        }
        if let Some(bad) = coords.iter().find(|&&c| c >= 8) {
            return Err(Error::Parameter(format!("{bad} is not a residue mod 8")));
        }
        Ok(OctVector(coords))
    }

    pub fn zero(n: usize) -> Self {
        OctVector(vec![0; n])
    }

    /// Builds from arbitrary integers, reducing each mod 8.
    pub fn from_ints(values: &[i64]) -> Self {
        OctVector(values.iter().map(|&v| v.rem_euclid(8) as u8).collect())
    }

    pub(crate) fn from_raw(coords: Vec<u8>) -> Self {
        debug_assert!(coords.iter().all(|&c| c < 8));
        OctVector(coords)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[u8] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Residue {
        Residue(self.0[i])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    fn check_len(&self, other: &OctVector) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::Dimension {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &OctVector) -> Result<OctVector> {
        self.check_len(other)?;
        Ok(OctVector(
            self.0.iter().zip(&other.0).map(|(a, b)| (a + b) & 7).collect(),
        ))
    }

    pub fn sub(&self, other: &OctVector) -> Result<OctVector> {
        self.check_len(other)?;
        Ok(OctVector(
            self.0.iter().zip(&other.0).map(|(a, b)| (a + 8 - b) & 7).collect(),
        ))
    }

    pub fn scale(&self, a: u8) -> OctVector {
        OctVector(self.0.iter().map(|&x| x.wrapping_mul(a) & 7).collect())
    }

    pub fn weight(&self, metric: Metric) -> u32 {
        weight_of(&self.0, metric)
    }

    pub fn distance(&self, other: &OctVector, metric: Metric) -> Result<u32> {
        Ok(self.sub(other)?.weight(metric))
    }

    pub fn inner_product(&self, other: &OctVector) -> Result<Residue> {
        self.check_len(other)?;
        Ok(Residue(dot_mod(&self.0, &other.0, 8) as u8))
    }

    pub fn gray_map(&self) -> BitVector {
        BitVector(
            self.0
                .iter()
                .flat_map(|&x| GRAY_TABLE[x as usize])
                .collect(),
        )
    }

    pub fn composition(&self) -> Composition {
        let mut counts = [0usize; 8];
        for &x in &self.0 {
            counts[x as usize] += 1;
        }
        Composition(counts)
    }
}

impl fmt::Display for OctVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for OctVector {
    type Err = Error;

    /// Contiguous digits 0-7, e.g. `01234567`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let coords = s
            .chars()
            .map(|ch| match ch.to_digit(10) {
                Some(d) if d < 8 => Ok(d as u8),
                _ => Err(Error::Parse(format!("'{ch}' is not a digit 0-7 in '{s}'"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if coords.is_empty() {
            return Err(Error::Parse("empty vector".into()));
        }
        Ok(OctVector(coords))
    }
}

/// Binary vector, one byte per bit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVector(Vec<u8>);

impl BitVector {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::Parameter("bit vectors hold only 0 and 1".into()));
        }
        Ok(BitVector(bits))
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn hamming_weight(&self) -> u32 {
        self.0.iter().map(|&b| b as u32).sum()
    }

    pub fn hamming_distance(&self, other: &BitVector) -> Result<u32> {
        if self.len() != other.len() {
            return Err(Error::Dimension {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count() as u32)
    }

    /// Packs into an integer, first bit most significant. Lengths up to 64.
    pub fn to_u64(&self) -> u64 {
        self.0.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Symbol counts ω0..ω7 of a vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Composition(pub [usize; 8]);

impl Composition {
    pub fn count(&self, symbol: u8) -> usize {
        self.0[symbol as usize]
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// ω1 + ω3 + ω5 + ω7 + 4ω2 + 4ω6 reduced mod 8.
    pub fn self_orthogonality_residue(&self) -> u8 {
        let w = &self.0;
        ((w[1] + w[3] + w[5] + w[7] + 4 * w[2] + 4 * w[6]) % 8) as u8
    }
}

pub(crate) fn weight_of(coords: &[u8], metric: Metric) -> u32 {
    let table = metric.table();
    coords.iter().map(|&x| table[x as usize]).sum()
}

pub(crate) fn dot_mod(a: &[u8], b: &[u8], modulus: u32) -> u32 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| x as u32 * y as u32)
        .sum::<u32>()
        % modulus
}
