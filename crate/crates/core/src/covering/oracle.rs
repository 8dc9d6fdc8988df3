use std::fmt;
use std::sync::atomic::{AtomicU16, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use super::packed::{byte_weights, Fields, Nibbles};
use crate::code::{LinearCode, Modulus};
use crate::config::Budgets;
use crate::error::{Error, Result};
use crate::ring::Metric;

/// Exact covering-radius algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Oracle {
    /// min over codewords for every ambient vector
    Scan,
    /// one pass over the ambient space keeping per-coset minima
    Coset,
    /// coset minima by dynamic programming over coordinates
    SyndromeDp,
}

impl Oracle {
    pub const ALL: [Oracle; 3] = [Oracle::Scan, Oracle::Coset, Oracle::SyndromeDp];

    pub fn name(self) -> &'static str {
        match self {
            Oracle::Scan => "scan",
            Oracle::Coset => "coset",
            Oracle::SyndromeDp => "syndrome-dp",
        }
    }

    /// log2 of the number of elementary steps and of the table entries.
    fn cost_log2(self, code: &LinearCode) -> (f64, f64) {
        let n = code.len() as f64;
        let k = code.cardinality_log2() as f64;
        let cosets = 3.0 * n - k;
        match self {
            Oracle::Scan => (3.0 * n + k, 0.0),
            Oracle::Coset => (3.0 * n, cosets),
            Oracle::SyndromeDp => ((8.0 * n).log2() + cosets, cosets),
        }
    }

    /// Refuses when the oracle would exceed `budgets` on `code`.
    pub fn check_budget(self, code: &LinearCode, budgets: &Budgets) -> Result<()> {
        let (steps, table) = self.cost_log2(code);
        if steps > (budgets.scan as f64).log2() {
            let what = match self {
                Oracle::Scan => "scan oracle distance evaluations",
                Oracle::Coset => "coset oracle ambient enumeration",
                Oracle::SyndromeDp => "syndrome DP steps",
            };
            return Err(Error::budget(what, format!("2^{steps:.1}"), budgets.scan));
        }
        if table > (budgets.table as f64).log2() {
            return Err(Error::budget("coset table entries", format!("2^{table:.0}"), budgets.table));
        }
        if self == Oracle::Scan && code.len() > Nibbles::MAX_LEN {
            return Err(Error::budget("scan oracle length", code.len(), Nibbles::MAX_LEN));
        }
        if (self == Oracle::Coset && steps > 63.0) || table > 40.0 {
            return Err(Error::budget("coset index width", format!("2^{steps:.0}"), "2^40"));
        }
        Ok(())
    }
}

impl fmt::Display for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoveringRadius {
    pub value: u32,
    pub oracle: Oracle,
}

fn require_z8(code: &LinearCode) -> Result<()> {
    if code.modulus() != Modulus::Z8 {
        return Err(Error::Parameter(format!(
            "covering radius is computed for Z8 codes, got {}",
            code.modulus()
        )));
    }
    Ok(())
}

/// Exact radius with the cheapest oracle the budgets admit.
pub fn covering_radius(code: &LinearCode, metric: Metric, budgets: &Budgets) -> Result<CoveringRadius> {
    require_z8(code)?;
    let mut candidates: Vec<(f64, Oracle)> = Oracle::ALL
        .iter()
        .filter(|o| o.check_budget(code, budgets).is_ok())
        .map(|&o| (o.cost_log2(code).0, o))
        .collect();
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0));
    match candidates.first() {
        Some(&(_, oracle)) => Ok(CoveringRadius {
            value: covering_radius_with(code, metric, oracle, budgets)?,
            oracle,
        }),
        None => Err(Oracle::SyndromeDp
            .check_budget(code, budgets)
            .expect_err("no oracle fits")),
    }
}

pub fn covering_radius_with(code: &LinearCode, metric: Metric, oracle: Oracle, budgets: &Budgets) -> Result<u32> {
    match oracle {
        Oracle::Scan => covering_radius_scan(code, metric, budgets),
        Oracle::Coset => covering_radius_coset(code, metric, budgets),
        Oracle::SyndromeDp => covering_radius_dp(code, metric, budgets),
    }
}

fn chunk_ranges(total: u64) -> Vec<(u64, u64)> {
    let chunks = (rayon::current_num_threads() as u64 * 8).clamp(1, total);
    (0..chunks)
        .map(|c| (total * c / chunks, total * (c + 1) / chunks))
        .filter(|(a, b)| a < b)
        .collect()
}

/// Exact radius as max over Z8^n of the min distance to a codeword.
pub fn covering_radius_scan(code: &LinearCode, metric: Metric, budgets: &Budgets) -> Result<u32> {
    require_z8(code)?;
    Oracle::Scan.check_budget(code, budgets)?;
    let n = code.len();
    let packing = Nibbles::new(n);
    let weights = byte_weights(metric);
    let words: Vec<u64> = code.codewords().map(|c| Nibbles::pack(&c)).collect();
    let ranges = chunk_ranges(1u64 << (3 * n));
    let radius = ranges
        .par_iter()
        .map(|&(start, end)| {
            let mut local = 0u32;
            let mut u = Nibbles::spread(start, n);
            for _ in start..end {
                let mut best = u32::MAX;
                for &c in &words {
                    let d = packing.weight(&weights, packing.sub(u, c));
                    if d < best {
                        best = d;
                        if best <= local {
                            break;
                        }
                    }
                }
                local = local.max(best);
                u = packing.succ(u);
            }
            local
        })
        .max()
        .unwrap_or(0);
    Ok(radius)
}

/// Syndrome map u ↦ (u·h >> level(h)) over the standard-form rows h of the
/// dual, packed as bit fields; a bijection from cosets onto 0..2^bits.
struct Syndromes {
    fields: Fields,
    /// contribution of symbol x at coordinate i, at `[i * 8 + x]`
    delta: Vec<u64>,
    n: usize,
}

impl Syndromes {
    fn new(code: &LinearCode) -> Result<Self> {
        let dual = code.dual()?;
        let sf = dual.standard_form();
        let rows = sf.rows_original();
        let widths: Vec<u32> = sf.levels().iter().map(|&l| 3 - l).collect();
        let fields = Fields::new(&widths);
        let expected = 3 * code.len() as u64 - code.cardinality_log2();
        if u64::from(fields.bits()) != expected {
            return Err(Error::Consistency(format!(
                "syndrome width {} differs from coset count 2^{expected}",
                fields.bits()
            )));
        }
        let n = code.len();
        let mut delta = vec![0u64; n * 8];
        for i in 0..n {
            for x in 0..8u64 {
                let mut off = 0;
                let mut s = 0u64;
                for ((row, &l), &w) in rows.iter().zip(sf.levels()).zip(&widths) {
                    let h = u64::from(row[i] >> l);
                    s |= ((x * h) & ((1 << w) - 1)) << off;
                    off += w;
                }
                delta[i * 8 + x as usize] = s;
            }
        }
        Ok(Syndromes { fields, delta, n })
    }

    fn cosets(&self) -> usize {
        1usize << self.fields.bits()
    }

    /// Tables over three coordinates at a time, indexed by 9 bits of the
    /// ambient index.
    fn triple_tables(&self) -> Vec<[u64; 512]> {
        (0..self.n.div_ceil(3))
            .map(|g| {
                let mut t = [0u64; 512];
                for (v, slot) in t.iter_mut().enumerate() {
                    *slot = (0..3)
                        .filter(|j| 3 * g + j < self.n)
                        .fold(0, |acc, j| {
                            let x = (v >> (3 * j)) & 7;
                            self.fields.add(acc, self.delta[(3 * g + j) * 8 + x])
                        });
                }
                t
            })
            .collect()
    }
}

fn triple_weights(metric: Metric) -> [u32; 512] {
    let t = metric.table();
    let mut out = [0u32; 512];
    for (v, w) in out.iter_mut().enumerate() {
        *w = t[v & 7] + t[(v >> 3) & 7] + t[(v >> 6) & 7];
    }
    out
}

const PRIVATE_TABLE_LIMIT: usize = 1 << 20;

/// Exact radius as the largest coset minimum weight, from one ambient pass.
pub fn covering_radius_coset(code: &LinearCode, metric: Metric, budgets: &Budgets) -> Result<u32> {
    require_z8(code)?;
    Oracle::Coset.check_budget(code, budgets)?;
    let syn = Syndromes::new(code)?;
    let cosets = syn.cosets();
    let groups = syn.triple_tables();
    let weights = triple_weights(metric);
    let n = code.len();
    let eval = |index: u64| -> (usize, u16) {
        let mut s = 0u64;
        let mut w = 0u32;
        for (g, t) in groups.iter().enumerate() {
            let v = ((index >> (9 * g)) & 511) as usize;
            s = syn.fields.add(s, t[v]);
            w += weights[v];
        }
        (s as usize, w as u16)
    };
    let ranges = chunk_ranges(1u64 << (3 * n));
    let minima: Vec<u16> = if cosets <= PRIVATE_TABLE_LIMIT {
        ranges
            .par_iter()
            .fold(
                || vec![u16::MAX; cosets],
                |mut table, &(start, end)| {
                    for index in start..end {
                        let (s, w) = eval(index);
                        if w < table[s] {
                            table[s] = w;
                        }
                    }
                    table
                },
            )
            .reduce_with(|mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x = (*x).min(y));
                a
            })
            .unwrap_or_default()
    } else {
        let table: Vec<AtomicU16> = (0..cosets).map(|_| AtomicU16::new(u16::MAX)).collect();
        ranges.par_iter().for_each(|&(start, end)| {
            for index in start..end {
                let (s, w) = eval(index);
                if w < table[s].load(Ordering::Relaxed) {
                    table[s].fetch_min(w, Ordering::Relaxed);
                }
            }
        });
        table.into_iter().map(AtomicU16::into_inner).collect()
    };
    finish(minima)
}

fn finish(minima: Vec<u16>) -> Result<u32> {
    let mut radius = 0u32;
    for m in minima {
        if m == u16::MAX {
            return Err(Error::Consistency("a coset was never reached".into()));
        }
        radius = radius.max(u32::from(m));
    }
    Ok(radius)
}

/// Exact radius from coset minimum weights built one coordinate at a time:
/// after coordinate i, `dist[s]` is the least weight of a vector supported
/// on coordinates 0..=i with syndrome s.
pub fn covering_radius_dp(code: &LinearCode, metric: Metric, budgets: &Budgets) -> Result<u32> {
    require_z8(code)?;
    Oracle::SyndromeDp.check_budget(code, budgets)?;
    let syn = Syndromes::new(code)?;
    let table = metric.table();
    let mut dist = vec![u16::MAX; syn.cosets()];
    dist[0] = 0;
    let mut next = vec![0u16; syn.cosets()];
    for i in 0..code.len() {
        // subtracting the contribution of x is adding that of -x
        let steps: Vec<(u64, u16)> = (0..8)
            .map(|x| (syn.delta[i * 8 + (8 - x) % 8], table[x] as u16))
            .collect();
        next.par_iter_mut().enumerate().for_each(|(s, out)| {
            *out = steps
                .iter()
                .map(|&(d, w)| dist[syn.fields.add(s as u64, d) as usize].saturating_add(w))
                .min()
                .unwrap_or(u16::MAX);
        });
        std::mem::swap(&mut dist, &mut next);
    }
    finish(dist)
}

/// Binary Hamming covering radius of the Gray image inside F2^(4n), by a
/// breadth-first search from every image codeword.
pub fn gray_image_covering_radius(code: &LinearCode, budgets: &Budgets) -> Result<u32> {
    require_z8(code)?;
    let n = code.len();
    if n > budgets.gray_max_n {
        return Err(Error::budget("Gray-image scan length", n, budgets.gray_max_n));
    }
    if 4 * n > 32 {
        return Err(Error::budget("Gray-image scan length", n, 8));
    }
    let bits = 4 * n;
    let size = 1usize << bits;
    let mut dist = vec![u8::MAX; size];
    let mut frontier: Vec<u32> = Vec::new();
    for c in code.codewords() {
        let image = crate::ring::OctVector::from_raw(c).gray_map().to_u64() as usize;
        if dist[image] == u8::MAX {
            dist[image] = 0;
            frontier.push(image as u32);
        }
    }
    let mut radius = 0u32;
    let mut level = 0u8;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        level += 1;
        for &v in &frontier {
            for b in 0..bits {
                let w = (v ^ (1 << b)) as usize;
                if dist[w] == u8::MAX {
                    dist[w] = level;
                    next.push(w as u32);
                }
            }
        }
        if !next.is_empty() {
            radius = u32::from(level);
        }
        frontier = next;
    }
    Ok(radius)
}
