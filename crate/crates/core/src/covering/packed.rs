use crate::ring::Metric;

/// Octonary vectors of length ≤ 16 packed one symbol per nibble.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Nibbles {
    high: u64,
    low: u64,
    bytes: usize,
}

impl Nibbles {
    pub(crate) const MAX_LEN: usize = 16;

    pub(crate) fn new(n: usize) -> Self {
        debug_assert!((1..=Self::MAX_LEN).contains(&n));
        let mask = if n == 16 { u64::MAX } else { (1u64 << (4 * n)) - 1 };
        Nibbles {
            high: 0x8888_8888_8888_8888 & mask,
            low: 0x7777_7777_7777_7777 & mask,
            bytes: n.div_ceil(2),
        }
    }

    pub(crate) fn pack(coords: &[u8]) -> u64 {
        coords
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &x)| acc | (u64::from(x) << (4 * i)))
    }

    /// Packs the base-8 digits of `index`, least significant digit first.
    pub(crate) fn spread(index: u64, n: usize) -> u64 {
        (0..n).fold(0, |acc, i| acc | (((index >> (3 * i)) & 7) << (4 * i)))
    }

    pub(crate) fn sub(&self, u: u64, c: u64) -> u64 {
        ((u | self.high) - c) & self.low
    }

    pub(crate) fn succ(&self, u: u64) -> u64 {
        ((u | self.high) + 1) & self.low
    }

    pub(crate) fn weight(&self, table: &[u32; 256], x: u64) -> u32 {
        (0..self.bytes)
            .map(|b| table[((x >> (8 * b)) & 0xff) as usize])
            .sum()
    }
}

/// Weight of two packed symbols per byte.
pub(crate) fn byte_weights(metric: Metric) -> [u32; 256] {
    let t = metric.table();
    let mut out = [0u32; 256];
    for (b, w) in out.iter_mut().enumerate() {
        *w = t[b & 7] + t[(b >> 4) & 7];
    }
    out
}

/// Packed fields of widths 1..=3 bits, added field-wise without carries
/// between fields.
#[derive(Debug, Clone)]
pub(crate) struct Fields {
    high: u64,
    bits: u32,
}

impl Fields {
    pub(crate) fn new(widths: &[u32]) -> Self {
        let mut high = 0u64;
        let mut off = 0u32;
        for &w in widths {
            high |= 1u64 << (off + w - 1);
            off += w;
        }
        debug_assert!(off <= 64);
        Fields { high, bits: off }
    }

    pub(crate) fn bits(&self) -> u32 {
        self.bits
    }

    pub(crate) fn add(&self, a: u64, d: u64) -> u64 {
        let h = self.high;
        ((a & !h) + (d & !h)) ^ ((a ^ d) & h)
    }
}
