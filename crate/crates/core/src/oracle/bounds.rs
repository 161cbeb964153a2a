//! Cheap certificates that a graph is not k-planar.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LowerBound {
    /// More than `3.81 sqrt(k) n` edges.
    Density,
    /// Some three vertices have at least `7k + 1` common neighbors, so the
    /// graph contains `K_{7k+1,3}`.
    BipartiteObstruction,
}

/// Largest number of neighbor triples the common-neighbor count will
/// enumerate before giving up on that test.
pub const TRIPLE_WORK_LIMIT: u64 = 50_000_000;

/// `100^2 m^2 > 381^2 k n^2`, i.e. `m > 3.81 sqrt(k) n`.
pub fn exceeds_density(n: usize, m: usize, k: usize) -> bool {
    let lhs = 10_000u128 * (m as u128) * (m as u128);
    let rhs = 145_161u128 * (k as u128) * (n as u128) * (n as u128);
    lhs > rhs
}

/// Three vertices with at least `t` common neighbors, if any. Returns
/// `None` without answering when the enumeration would exceed
/// [`TRIPLE_WORK_LIMIT`].
pub fn common_neighbor_triple(g: &Graph, t: usize) -> Option<[usize; 3]> {
    let work: u64 = (0..g.n())
        .map(|v| {
            let d = g.degree(v) as u64;
            if d < 3 {
                0
            } else {
                d * (d - 1) * (d - 2) / 6
            }
        })
        .sum();
    if work > TRIPLE_WORK_LIMIT || t == 0 {
        return None;
    }
    let mut count: HashMap<[u32; 3], u32> = HashMap::new();
    for v in 0..g.n() {
        let nb = g.neighbors(v);
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                for l in j + 1..nb.len() {
                    let key = [nb[i] as u32, nb[j] as u32, nb[l] as u32];
                    let c = count.entry(key).or_insert(0);
                    *c += 1;
                    if *c as usize >= t {
                        return Some([nb[i], nb[j], nb[l]]);
                    }
                }
            }
        }
    }
    None
}

/// A reason why `g` cannot be k-planar, when one of the cheap tests fires.
/// `None` implies nothing.
pub fn lower_bound_reject(g: &Graph, k: usize) -> Option<LowerBound> {
    assert!(k >= 1, "lower bounds are stated for k >= 1");
    if exceeds_density(g.n(), g.m(), k) {
        return Some(LowerBound::Density);
    }
    if common_neighbor_triple(g, 7 * k + 1).is_some() {
        return Some(LowerBound::BipartiteObstruction);
    }
    None
}
