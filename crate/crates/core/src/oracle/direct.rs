//! Brute-force local crossing number test for very small graphs.
//!
//! Enumerates multisets of crossing pairs (adjacent edges and repeated
//! pairs allowed) with at most `k` crossings per edge, and every order of
//! the crossings along each edge. Shares no search logic with the
//! planarization search, so the two can check each other.

use std::time::Instant;

use super::{next_permutation, Answer, NoReason, OracleError, Verdict};
use crate::graph::{EdgeId, Graph};
use crate::plan::{planarize, CrossingPlan};
use crate::planarity::PlanarityTester;

/// Largest edge count accepted by [`lcr_direct_small`].
pub const DIRECT_MAX_EDGES: usize = 9;

struct Enumerator<'a> {
    g: &'a Graph,
    k: usize,
    pairs: Vec<(EdgeId, EdgeId)>,
    chosen: Vec<usize>,
    load: Vec<usize>,
    tester: PlanarityTester,
    tests: u64,
    budget: u64,
}

enum Step {
    Found(CrossingPlan),
    Continue,
    OutOfBudget,
}

impl Enumerator<'_> {
    fn choose(&mut self, start: usize, left: usize) -> Step {
        if left == 0 {
            return self.try_orders();
        }
        for i in start..self.pairs.len() {
            let (e, f) = self.pairs[i];
            if self.load[e] == self.k || self.load[f] == self.k {
                continue;
            }
            self.load[e] += 1;
            self.load[f] += 1;
            self.chosen.push(i);
            let r = self.choose(i, left - 1);
            self.chosen.pop();
            self.load[e] -= 1;
            self.load[f] -= 1;
            if !matches!(r, Step::Continue) {
                return r;
            }
        }
        Step::Continue
    }

    fn try_orders(&mut self) -> Step {
        let crossings: Vec<(EdgeId, EdgeId)> = self.chosen.iter().map(|&i| self.pairs[i]).collect();
        let mut orders: Vec<(EdgeId, Vec<usize>)> = Vec::new();
        for e in 0..self.g.m() {
            let seq: Vec<usize> = (0..crossings.len())
                .filter(|&c| crossings[c].0 == e || crossings[c].1 == e)
                .collect();
            if !seq.is_empty() {
                orders.push((e, seq));
            }
        }
        // Odometer over per-edge permutations; each sequence starts sorted.
        loop {
            self.tests += 1;
            if self.tests > self.budget {
                return Step::OutOfBudget;
            }
            let plan = CrossingPlan {
                crossings: crossings.clone(),
                orders: orders.clone(),
            };
            let p = planarize(self.g, &plan).expect("enumerated plans are well formed");
            if self.tester.is_planar(&p) {
                return Step::Found(plan.canonical());
            }
            let mut advanced = false;
            for (_, seq) in orders.iter_mut() {
                if next_permutation(seq) {
                    advanced = true;
                    break;
                }
                // next_permutation wrapped the sequence back to sorted order.
            }
            if !advanced {
                return Step::Continue;
            }
        }
    }
}

/// Exact test of `lcr(g) <= k` by exhaustive enumeration. For `k >= 1`
/// the graph may have at most [`DIRECT_MAX_EDGES`] edges; `k = 0` is a
/// single planarity test and has no size limit.
pub fn lcr_direct_small(g: &Graph, k: usize, budget: u64) -> Result<Verdict, OracleError> {
    if k > 0 && g.m() > DIRECT_MAX_EDGES {
        return Err(OracleError::TooLarge {
            m: g.m(),
            limit: DIRECT_MAX_EDGES,
        });
    }
    let start = Instant::now();
    let m = g.m();
    let pairs = (0..m).flat_map(|e| (e + 1..m).map(move |f| (e, f))).collect();
    let mut en = Enumerator {
        g,
        k,
        pairs,
        chosen: Vec::new(),
        load: vec![0; m],
        tester: PlanarityTester::new(),
        tests: 0,
        budget,
    };
    for c in 0..=k * m / 2 {
        match en.choose(0, c) {
            Step::Found(plan) => {
                return Ok(Verdict::yes(plan, en.tests, start.elapsed()));
            }
            Step::OutOfBudget => {
                return Ok(Verdict::inconclusive(en.tests, start.elapsed()));
            }
            Step::Continue => {}
        }
    }
    Ok(Verdict {
        answer: Answer::No,
        witness: None,
        reason: Some(NoReason::ExhaustedSearch),
        nodes: en.tests,
        elapsed: start.elapsed(),
    })
}
