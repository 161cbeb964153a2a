//! Two-layer drawings: layer `X` on one line, `Y` on a parallel line,
//! straight edges. Edges `{x, y}` and `{x', y'}` cross iff the orders of
//! their endpoints disagree on the two lines.

use serde::{Deserialize, Serialize};

use super::{next_permutation, OracleError};
use crate::graph::{Graph, Vertex};
use crate::plan::{CrossingPlan, PlanBuilder};

/// Largest `|X|! * |Y|!` (over non-isolated vertices) that
/// [`two_layer_lcr`] will enumerate.
pub const TWO_LAYER_MAX_ORDERINGS: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoLayerResult {
    /// Minimum over orderings of the largest per-edge crossing count.
    pub lcr: usize,
    /// Left-to-right order of `X` (isolated vertices last).
    pub x_order: Vec<Vertex>,
    pub y_order: Vec<Vertex>,
}

fn positions(n: usize, order: &[Vertex]) -> Vec<usize> {
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    pos
}

/// Checks that `x` and `y` partition the vertices with every edge between
/// them. Returns `is_x` per vertex.
pub fn check_layers(g: &Graph, x: &[Vertex], y: &[Vertex]) -> Result<Vec<bool>, OracleError> {
    let mut side = vec![None; g.n()];
    for (list, s) in [(x, true), (y, false)] {
        for &v in list {
            if v >= g.n() || side[v].is_some() {
                return Err(OracleError::BadLayers(format!(
                    "vertex {v} is out of range or listed twice"
                )));
            }
            side[v] = Some(s);
        }
    }
    if let Some(v) = side.iter().position(|s| s.is_none()) {
        return Err(OracleError::BadLayers(format!("vertex {v} is in neither layer")));
    }
    let is_x: Vec<bool> = side.into_iter().map(|s| s.unwrap()).collect();
    if let Some(&(u, v)) = g.edges().iter().find(|&&(u, v)| is_x[u] == is_x[v]) {
        return Err(OracleError::NotBipartite(u, v));
    }
    Ok(is_x)
}

/// Largest per-edge crossing count for the given orderings.
pub fn two_layer_max_crossings(g: &Graph, x_order: &[Vertex], y_order: &[Vertex]) -> usize {
    let px = positions(g.n(), x_order);
    let py = positions(g.n(), y_order);
    let ends: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            if px[u] != usize::MAX {
                (px[u], py[v])
            } else {
                (px[v], py[u])
            }
        })
        .collect();
    max_crossings(&ends)
}

fn max_crossings(ends: &[(usize, usize)]) -> usize {
    let mut count = vec![0usize; ends.len()];
    for i in 0..ends.len() {
        for j in i + 1..ends.len() {
            let (a, b) = ends[i];
            let (c, d) = ends[j];
            if (a < c && b > d) || (a > c && b < d) {
                count[i] += 1;
                count[j] += 1;
            }
        }
    }
    count.into_iter().max().unwrap_or(0)
}

fn factorial_capped(k: usize, cap: u64) -> u64 {
    let mut f: u64 = 1;
    for i in 2..=k as u64 {
        f = f.saturating_mul(i);
        if f > cap {
            return cap + 1;
        }
    }
    f
}

/// Exact two-layer local crossing number by trying every pair of orders of
/// the non-isolated vertices.
pub fn two_layer_lcr(g: &Graph, x: &[Vertex], y: &[Vertex]) -> Result<TwoLayerResult, OracleError> {
    check_layers(g, x, y)?;
    let (mut xs, iso_x): (Vec<Vertex>, Vec<Vertex>) = x.iter().partition(|&&v| g.degree(v) > 0);
    let (mut ys, iso_y): (Vec<Vertex>, Vec<Vertex>) = y.iter().partition(|&&v| g.degree(v) > 0);
    xs.sort_unstable();
    ys.sort_unstable();
    let work = factorial_capped(xs.len(), TWO_LAYER_MAX_ORDERINGS)
        .saturating_mul(factorial_capped(ys.len(), TWO_LAYER_MAX_ORDERINGS));
    if work > TWO_LAYER_MAX_ORDERINGS {
        return Err(OracleError::TooManyOrderings {
            x: xs.len(),
            y: ys.len(),
        });
    }
    let mut best: Option<(usize, Vec<Vertex>, Vec<Vertex>)> = None;
    let mut xo = xs.clone();
    'outer: loop {
        let px = positions(g.n(), &xo);
        let mut yo = ys.clone();
        loop {
            let py = positions(g.n(), &yo);
            let ends: Vec<(usize, usize)> = g
                .edges()
                .iter()
                .map(|&(u, v)| if px[u] != usize::MAX { (px[u], py[v]) } else { (px[v], py[u]) })
                .collect();
            let c = max_crossings(&ends);
            if best.as_ref().is_none_or(|b| c < b.0) {
                best = Some((c, xo.clone(), yo.clone()));
                if c == 0 {
                    break 'outer;
                }
            }
            if !next_permutation(&mut yo) {
                break;
            }
        }
        if !next_permutation(&mut xo) {
            break;
        }
    }
    let (lcr, mut x_order, mut y_order) = best.unwrap_or((0, Vec::new(), Vec::new()));
    x_order.extend(iso_x);
    y_order.extend(iso_y);
    Ok(TwoLayerResult {
        lcr,
        x_order,
        y_order,
    })
}

/// Crossing plan of the straight-line two-layer drawing with the given
/// orders, realized as a wiring diagram: edges leave the `X` line sorted by
/// `(x, y)` positions and arrive at the `Y` line sorted by `(y, x)`; each
/// adjacent swap of a bubble sort is one crossing. Exactly the inverted
/// pairs cross, each once.
pub fn two_layer_plan(g: &Graph, x_order: &[Vertex], y_order: &[Vertex]) -> CrossingPlan {
    let px = positions(g.n(), x_order);
    let py = positions(g.n(), y_order);
    let ends: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(u, v)| if px[u] != usize::MAX { (px[u], py[v]) } else { (px[v], py[u]) })
        .collect();
    let mut line: Vec<usize> = (0..g.m()).collect();
    line.sort_by_key(|&e| ends[e]);
    let target = |e: usize| (ends[e].1, ends[e].0);
    let mut b = PlanBuilder::new();
    // Along every edge the swaps happen in time order from the X side.
    for (e, &(u, _)) in g.edges().iter().enumerate() {
        if px[u] == usize::MAX {
            b.reverse(e);
        }
    }
    let len = line.len();
    for pass in 0..len {
        let mut swapped = false;
        for i in 0..len.saturating_sub(1 + pass) {
            if target(line[i]) > target(line[i + 1]) {
                b.cross(line[i], line[i + 1]);
                line.swap(i, i + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::witness::{crossings_per_edge, verify};

    #[test]
    fn small_examples() {
        let r = two_layer_lcr(&star(3), &[0], &[1, 2, 3]).unwrap();
        assert_eq!(r.lcr, 0);
        let k22 = complete_bipartite(2, 2);
        let r = two_layer_lcr(&k22, &[0, 1], &[2, 3]).unwrap();
        assert_eq!(r.lcr, 1);
        // P4 0-1-2-3 with layers {0, 2} and {1, 3}.
        let r = two_layer_lcr(&path(4), &[0, 2], &[1, 3]).unwrap();
        assert_eq!(r.lcr, 0);
    }

    #[test]
    fn every_k22_ordering_has_one_crossing() {
        let g = complete_bipartite(2, 2);
        for xo in [[0, 1], [1, 0]] {
            for yo in [[2, 3], [3, 2]] {
                assert_eq!(two_layer_max_crossings(&g, &xo, &yo), 1);
                let plan = two_layer_plan(&g, &xo, &yo);
                assert_eq!(plan.len(), 1);
                assert_eq!(verify(&g, 1, &plan), Ok(()));
            }
        }
    }

    #[test]
    fn layer_errors() {
        assert!(matches!(
            two_layer_lcr(&cycle(3), &[0], &[1, 2]),
            Err(OracleError::NotBipartite(1, 2))
        ));
        assert!(matches!(
            two_layer_lcr(&path(3), &[0], &[1]),
            Err(OracleError::BadLayers(_))
        ));
        let big = complete_bipartite(8, 8);
        let x: Vec<usize> = (0..8).collect();
        let y: Vec<usize> = (8..16).collect();
        assert!(matches!(
            two_layer_lcr(&big, &x, &y),
            Err(OracleError::TooManyOrderings { .. })
        ));
    }

    #[test]
    fn wiring_plan_matches_counts() {
        let g = complete_bipartite(3, 3);
        let plan = two_layer_plan(&g, &[0, 1, 2], &[3, 4, 5]);
        let counts = crossings_per_edge(&g, &plan).unwrap();
        assert_eq!(counts.max, two_layer_max_crossings(&g, &[0, 1, 2], &[3, 4, 5]));
        assert_eq!(verify(&g, counts.max, &plan), Ok(()));
    }
}
