//! Verification and transport of crossing plans.
//!
//! Acceptance is one-sided: a plan that verifies at level `k` certifies
//! `lcr(g) <= k`. A planar planarization yields a drawing with exactly the
//! listed crossings, except that some may turn into touchings, which only
//! lowers crossing counts. A rejected plan says nothing about `g`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeId, Graph, Vertex};
use crate::plan::{planarize, CrossingPlan, PlanError};
use crate::planarity::is_planar;
use crate::transforms::SubdivisionMap;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "reason")]
pub enum Rejection {
    Malformed { detail: String },
    CapExceeded { edge: (Vertex, Vertex), count: usize, k: usize },
    NonplanarPlanarization,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::Malformed { detail } => write!(f, "malformed plan: {detail}"),
            Rejection::CapExceeded { edge, count, k } => write!(
                f,
                "edge {{{}, {}}} has {count} crossings, more than {k}",
                edge.0, edge.1
            ),
            Rejection::NonplanarPlanarization => write!(f, "planarization nonplanar"),
        }
    }
}

/// Accepts iff the plan is well formed, every edge has at most `k`
/// crossings, and the planarization is planar. Checks run in that order.
pub fn verify(g: &Graph, k: usize, plan: &CrossingPlan) -> Result<(), Rejection> {
    let p = planarize(g, plan).map_err(|e| Rejection::Malformed {
        detail: e.to_string(),
    })?;
    let counts = plan.counts(g.m());
    if let Some((e, &count)) = counts.iter().enumerate().find(|(_, &c)| c > k) {
        return Err(Rejection::CapExceeded {
            edge: g.edge(e),
            count,
            k,
        });
    }
    if !is_planar(&p) {
        return Err(Rejection::NonplanarPlanarization);
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeCounts {
    pub counts: Vec<usize>,
    pub max: usize,
}

pub fn crossings_per_edge(g: &Graph, plan: &CrossingPlan) -> Result<EdgeCounts, PlanError> {
    plan.validate(g.m())?;
    let counts = plan.counts(g.m());
    let max = counts.iter().copied().max().unwrap_or(0);
    Ok(EdgeCounts { counts, max })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjectError {
    #[error("plan does not verify on the subdivided graph at level 1: {0}")]
    NotOnePlanar(Rejection),
    #[error("projected plan failed verification: {0}")]
    Projection(Rejection),
}

/// Transports a 1-planar plan of `G_k` to a plan of the original graph
/// with at most `k` crossings per edge.
///
/// Walking each original edge from its smaller endpoint, a crossing
/// between two of its own segments `s < j` closes a loop; the loop is cut
/// out, which deletes that crossing and every crossing on segments strictly
/// between `s` and `j`. The remaining crossings keep their segment order.
pub fn project_subdivided(
    map: &SubdivisionMap,
    plan1: &CrossingPlan,
) -> Result<CrossingPlan, ProjectError> {
    verify(&map.graph, 1, plan1).map_err(ProjectError::NotOnePlanar)?;
    let k = map.k;
    let seg = map.segments();
    let m = map.original.m();
    // cross_on[e * k + s]: the crossing on segment s of original edge e.
    let mut cross_on = vec![usize::MAX; m * k];
    for (c, &(a, b)) in plan1.crossings.iter().enumerate() {
        for x in [a, b] {
            let (e, s) = seg[x];
            cross_on[e * k + s] = c;
        }
    }
    let mut alive = vec![true; plan1.len()];
    for e in 0..m {
        let mut s = 0;
        while s < k {
            let c = cross_on[e * k + s];
            if c != usize::MAX && alive[c] {
                let (a, b) = plan1.crossings[c];
                let (ea, sa) = seg[a];
                let (eb, sb) = seg[b];
                if ea == e && eb == e {
                    let j = sa.max(sb);
                    alive[c] = false;
                    for mid in s + 1..j {
                        let d = cross_on[e * k + mid];
                        if d != usize::MAX {
                            alive[d] = false;
                        }
                    }
                    s = j + 1;
                    continue;
                }
            }
            s += 1;
        }
    }

    // Surviving crossings, visited along each original edge in segment
    // order, define the per-edge orders of the projected plan.
    let mut new_id = vec![usize::MAX; plan1.len()];
    let mut pairs: Vec<(EdgeId, EdgeId)> = Vec::new();
    let mut seqs: Vec<Vec<usize>> = vec![Vec::new(); m];
    for e in 0..m {
        for s in 0..k {
            let c = cross_on[e * k + s];
            if c == usize::MAX || !alive[c] {
                continue;
            }
            if new_id[c] == usize::MAX {
                let (a, b) = plan1.crossings[c];
                new_id[c] = pairs.len();
                pairs.push((seg[a].0, seg[b].0));
            }
            seqs[e].push(new_id[c]);
        }
    }
    let raw = CrossingPlan {
        crossings: pairs,
        orders: seqs
            .into_iter()
            .enumerate()
            .filter(|(_, s)| !s.is_empty())
            .collect(),
    };
    let plan = raw.canonical();
    verify(&map.original, k, &plan).map_err(ProjectError::Projection)?;
    Ok(plan)
}
