//! Unary bin packing: split a multiset of positive integers into `b` bins
//! of equal sum `B`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UbpInstance {
    pub items: Vec<u64>,
    pub capacity: u64,
    pub bins: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UbpError {
    #[error("item {index} is zero")]
    ZeroItem { index: usize },
    #[error("need at least one bin")]
    NoBins,
    #[error("capacity must be positive")]
    ZeroCapacity,
    #[error("items sum to {sum} but {bins} bins of capacity {capacity} need {}", *bins as u128 * *capacity as u128)]
    SumMismatch { sum: u128, bins: usize, capacity: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("expected {expected} bins, got {got}")]
    BinCount { expected: usize, got: usize },
    #[error("item index {0} is out of range")]
    OutOfRange(usize),
    #[error("item {0} is used twice")]
    Repeated(usize),
    #[error("item {0} is not used")]
    Missing(usize),
    #[error("bin {bin} sums to {sum}, not {capacity}")]
    WrongSum { bin: usize, sum: u128, capacity: u64 },
}

impl UbpInstance {
    pub fn new(items: Vec<u64>, capacity: u64, bins: usize) -> Result<Self, UbpError> {
        let inst = UbpInstance { items, capacity, bins };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<(), UbpError> {
        if let Some(index) = self.items.iter().position(|&x| x == 0) {
            return Err(UbpError::ZeroItem { index });
        }
        if self.bins == 0 {
            return Err(UbpError::NoBins);
        }
        if self.capacity == 0 {
            return Err(UbpError::ZeroCapacity);
        }
        let sum: u128 = self.items.iter().map(|&x| x as u128).sum();
        if sum != self.bins as u128 * self.capacity as u128 {
            return Err(UbpError::SumMismatch {
                sum,
                bins: self.bins,
                capacity: self.capacity,
            });
        }
        Ok(())
    }
}

/// Checks that `bins` (lists of item indices) is a solution.
pub fn verify_partition(inst: &UbpInstance, bins: &[Vec<usize>]) -> Result<(), PartitionError> {
    if bins.len() != inst.bins {
        return Err(PartitionError::BinCount {
            expected: inst.bins,
            got: bins.len(),
        });
    }
    let mut used = vec![false; inst.items.len()];
    for (bin, idx) in bins.iter().enumerate() {
        let mut sum = 0u128;
        for &i in idx {
            if i >= used.len() {
                return Err(PartitionError::OutOfRange(i));
            }
            if std::mem::replace(&mut used[i], true) {
                return Err(PartitionError::Repeated(i));
            }
            sum += inst.items[i] as u128;
        }
        if sum != inst.capacity as u128 {
            return Err(PartitionError::WrongSum {
                bin,
                sum,
                capacity: inst.capacity,
            });
        }
    }
    match used.iter().position(|&u| !u) {
        Some(i) => Err(PartitionError::Missing(i)),
        None => Ok(()),
    }
}

struct Solver {
    values: Vec<u64>,
    capacity: u64,
    failed: HashSet<Vec<usize>>,
}

impl Solver {
    // Fills the remaining bins; `out` receives per-bin value counts.
    fn bins(&mut self, counts: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) -> bool {
        let Some(first) = counts.iter().position(|&c| c > 0) else {
            return true;
        };
        if self.failed.contains(counts) {
            return false;
        }
        // The largest remaining item goes into the current bin.
        counts[first] -= 1;
        let mut take = vec![0usize; counts.len()];
        take[first] = 1;
        let ok = self.values[first] <= self.capacity
            && self.fill(counts, &mut take, first, self.capacity - self.values[first], out);
        counts[first] += 1;
        if !ok {
            self.failed.insert(counts.clone());
        }
        ok
    }

    fn fill(
        &mut self,
        counts: &mut Vec<usize>,
        take: &mut Vec<usize>,
        from: usize,
        left: u64,
        out: &mut Vec<Vec<usize>>,
    ) -> bool {
        if left == 0 {
            out.push(take.clone());
            if self.bins(counts, out) {
                return true;
            }
            out.pop();
            return false;
        }
        for i in from..self.values.len() {
            let v = self.values[i];
            if counts[i] == 0 || v > left {
                continue;
            }
            counts[i] -= 1;
            take[i] += 1;
            let ok = self.fill(counts, take, i, left - v, out);
            take[i] -= 1;
            counts[i] += 1;
            if ok {
                return true;
            }
        }
        false
    }
}

/// Exact solver. Items are grouped by value and processed in decreasing
/// order; every bin contains the largest item not yet placed, and failed
/// remainders are memoized. Returns item indices per bin, bins sorted by
/// their smallest item.
pub fn solve_ubp(inst: &UbpInstance) -> Option<Vec<Vec<usize>>> {
    let mut values: Vec<u64> = inst.items.clone();
    values.sort_unstable_by(|a, b| b.cmp(a));
    values.dedup();
    let mut counts: Vec<usize> = values
        .iter()
        .map(|v| inst.items.iter().filter(|&x| x == v).count())
        .collect();
    let mut solver = Solver {
        values,
        capacity: inst.capacity,
        failed: HashSet::new(),
    };
    let mut out = Vec::new();
    if !solver.bins(&mut counts, &mut out) || out.len() != inst.bins {
        return None;
    }
    // Hand out concrete indices, lowest first for each value.
    let mut pool: Vec<Vec<usize>> = solver
        .values
        .iter()
        .map(|v| {
            let mut ids: Vec<usize> = (0..inst.items.len()).filter(|&i| inst.items[i] == *v).collect();
            ids.reverse();
            ids
        })
        .collect();
    let mut bins: Vec<Vec<usize>> = out
        .iter()
        .map(|take| {
            let mut bin: Vec<usize> = take
                .iter()
                .enumerate()
                .flat_map(|(i, &c)| (0..c).map(move |_| i))
                .map(|i| pool[i].pop().expect("counts match the pool"))
                .collect();
            bin.sort_unstable();
            bin
        })
        .collect();
    bins.sort_by_key(|bin| {
        let low = bin.iter().map(|&i| inst.items[i]).min().unwrap_or(0);
        (low, bin.first().copied())
    });
    Some(bins)
}
