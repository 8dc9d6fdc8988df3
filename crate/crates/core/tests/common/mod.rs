#![allow(dead_code)]

use std::collections::HashSet;

use proptest::prelude::*;
use rand::Rng;
use z8codes::{LinearCode, Metric, OctVector};

pub fn code_from_rows(rows: Vec<Vec<u8>>) -> LinearCode {
    LinearCode::new(rows.into_iter().map(|r| OctVector::new(r).unwrap()).collect()).unwrap()
}

pub fn random_code(rng: &mut impl Rng, max_n: usize, max_rows: usize) -> LinearCode {
    let n = rng.gen_range(1..=max_n);
    let k = rng.gen_range(1..=max_rows);
    let rows = (0..k)
        .map(|_| (0..n).map(|_| rng.gen_range(0..8u8)).collect())
        .collect();
    code_from_rows(rows)
}

pub fn rows_strategy(max_n: usize, max_rows: usize) -> impl Strategy<Value = Vec<Vec<u8>>> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(prop::collection::vec(0u8..8, n), 1..=max_rows)
    })
}

pub fn code_strategy(max_n: usize, max_rows: usize) -> impl Strategy<Value = LinearCode> {
    rows_strategy(max_n, max_rows).prop_map(code_from_rows)
}

/// Every Z8-combination of the generators, by closure under addition.
pub fn naive_span(gens: &[Vec<u8>], n: usize, q: u8) -> HashSet<Vec<u8>> {
    let mut set: HashSet<Vec<u8>> = HashSet::new();
    set.insert(vec![0; n]);
    let mut frontier: Vec<Vec<u8>> = vec![vec![0; n]];
    while let Some(v) = frontier.pop() {
        for g in gens {
            let w: Vec<u8> = v.iter().zip(g).map(|(a, b)| (a + b) % q).collect();
            if set.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    set
}

pub fn ambient(n: usize, q: u8) -> impl Iterator<Item = Vec<u8>> {
    let total = (q as u64).pow(n as u32);
    (0..total).map(move |mut i| {
        (0..n)
            .map(|_| {
                let d = (i % q as u64) as u8;
                i /= q as u64;
                d
            })
            .collect()
    })
}

pub fn weight(v: &[u8], metric: Metric) -> u32 {
    let t = metric.table();
    v.iter().map(|&x| t[x as usize]).sum()
}

/// max over the ambient space of min over codewords of d(x, c).
pub fn naive_radius(code: &LinearCode, metric: Metric) -> u32 {
    let n = code.len();
    let words: Vec<Vec<u8>> = naive_span(code.generators(), n, 8).into_iter().collect();
    ambient(n, 8)
        .map(|x| {
            words
                .iter()
                .map(|c| {
                    let diff: Vec<u8> = x.iter().zip(c).map(|(a, b)| (8 + a - b) % 8).collect();
                    weight(&diff, metric)
                })
                .min()
                .unwrap()
        })
        .max()
        .unwrap()
}
