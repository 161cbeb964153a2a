//! Edge subdivision, spoke attachment, and elimination forests.

mod forest;

pub use forest::{
    ceil_log2, lift_elimination_forest, validate_elimination_forest, EliminationForest,
    ForestCheck, ForestError,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeId, Graph, GraphBuilder, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("subdivision parameter must be at least 1")]
    ZeroK,
    #[error("spoke target set is empty")]
    NoTargets,
    #[error("spoke count must be at least 1")]
    ZeroCount,
    #[error("vertex {vertex} out of range (n = {n})")]
    OutOfRange { vertex: Vertex, n: usize },
}

/// `G_k`: every edge of the original graph replaced by a path of `k` edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionMap {
    pub k: usize,
    pub original: Graph,
    pub graph: Graph,
    /// Per original edge id: the path `u, p_1, ..., p_{k-1}, v` from the
    /// smaller endpoint.
    pub paths: Vec<Vec<Vertex>>,
}

impl SubdivisionMap {
    /// Id of the `i`-th internal vertex (1-based) on original edge `e`.
    pub fn internal_vertex(&self, e: EdgeId, i: usize) -> Vertex {
        self.original.n() + e * (self.k - 1) + (i - 1)
    }

    /// For every edge of `G_k`, its original edge and its segment index
    /// (0-based from the smaller endpoint).
    pub fn segments(&self) -> Vec<(EdgeId, usize)> {
        let mut seg = vec![(0, 0); self.graph.m()];
        for (e, path) in self.paths.iter().enumerate() {
            for (s, w) in path.windows(2).enumerate() {
                let id = self.graph.edge_id(w[0], w[1]).expect("path edge exists");
                seg[id] = (e, s);
            }
        }
        seg
    }
}

/// Subdivides every edge `k - 1` times. Original vertices keep their ids;
/// new vertices are numbered in canonical edge order, then path position.
pub fn subdivide(g: &Graph, k: usize) -> Result<SubdivisionMap, TransformError> {
    if k == 0 {
        return Err(TransformError::ZeroK);
    }
    let n = g.n();
    let mut b = GraphBuilder::new(n + (k - 1) * g.m());
    let mut paths = Vec::with_capacity(g.m());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let mut path = Vec::with_capacity(k + 1);
        path.push(u);
        path.extend((1..k).map(|i| n + e * (k - 1) + (i - 1)));
        path.push(v);
        for w in path.windows(2) {
            b.add_edge(w[0], w[1]);
        }
        paths.push(path);
    }
    Ok(SubdivisionMap {
        k,
        original: g.clone(),
        graph: b.build().expect("subdivision of a simple graph is simple"),
        paths,
    })
}

/// Hub vertex plus, per target, the midpoints of its spokes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpokeRegistry {
    pub hub: Vertex,
    pub spokes: Vec<(Vertex, Vec<Vertex>)>,
}

impl SpokeRegistry {
    pub fn midpoints(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.spokes.iter().flat_map(|(_, mids)| mids.iter().copied())
    }

    pub fn spoke_count(&self) -> usize {
        self.spokes.iter().map(|(_, mids)| mids.len()).sum()
    }

    /// Checks that every midpoint has exactly the hub and its target as
    /// neighbors.
    pub fn check(&self, g: &Graph) -> bool {
        self.spokes.iter().all(|(t, mids)| {
            mids.iter().all(|&p| {
                let mut want = [self.hub, *t];
                want.sort_unstable();
                p < g.n() && g.neighbors(p) == want
            })
        })
    }
}

/// Adds spokes from `hub` to each target on a builder. Targets are
/// processed in the given order.
pub fn add_spokes_to(
    b: &mut GraphBuilder,
    hub: Vertex,
    targets: &[Vertex],
    count: usize,
) -> SpokeRegistry {
    let spokes = targets
        .iter()
        .map(|&t| (t, b.add_spokes(hub, t, count)))
        .collect();
    SpokeRegistry { hub, spokes }
}

/// Adds a hub `r = n` and `count` spokes from `r` to every vertex of
/// `targets` (sorted, deduplicated).
pub fn attach_spokes(
    g: &Graph,
    targets: &[Vertex],
    count: usize,
) -> Result<(Graph, SpokeRegistry), TransformError> {
    if targets.is_empty() {
        return Err(TransformError::NoTargets);
    }
    if count == 0 {
        return Err(TransformError::ZeroCount);
    }
    if let Some(&vertex) = targets.iter().find(|&&t| t >= g.n()) {
        return Err(TransformError::OutOfRange { vertex, n: g.n() });
    }
    let mut targets = targets.to_vec();
    targets.sort_unstable();
    targets.dedup();
    let mut b = GraphBuilder::from_graph(g);
    let hub = b.add_vertex();
    let reg = add_spokes_to(&mut b, hub, &targets, count);
    Ok((b.build().expect("spokes keep the graph simple"), reg))
}
