//! Simple undirected graphs with a canonical edge list.
//!
//! Vertices are `0..n`. Edges are stored with the smaller endpoint first and
//! sorted lexicographically, so an edge id is its index in that sorted list.
//! Every procedure in the crate addresses edges by this id.

pub mod families;
pub mod io;
pub mod params;
pub mod structure;

use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use io::{parse_graph, write_graph, GraphDoc, ParseError};
pub use params::{
    approx_vertex_cover, param_report, strip_low_degree, twin_partition, ParamReport, Stripped,
    TwinClass, TwinKind, TwinPartition,
};
pub use structure::{check_structure, Property, StructureCheck};

pub type Vertex = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    Loop(Vertex),
    #[error("duplicate edge {{{0}, {1}}}")]
    Duplicate(Vertex, Vertex),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: Vertex, n: usize },
}

/// Immutable; clones share storage.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    data: Arc<GraphData>,
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct GraphData {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    // Neighbors of `v` are `nbrs[start[v]..start[v + 1]]`, sorted.
    start: Vec<usize>,
    nbrs: Vec<Vertex>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            data: Arc::new(GraphData {
                n,
                edges: Vec::new(),
                start: vec![0; n + 1],
                nbrs: Vec::new(),
            }),
        }
    }

    /// Builds a graph, rejecting loops, duplicates and out-of-range ids.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::OutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::Duplicate(w[0].0, w[0].1));
        }
        Ok(Self::from_canonical(n, list))
    }

    /// Like [`Graph::from_edges`] but collapses parallel edges into one.
    /// Loops are still rejected.
    pub fn from_edges_dedup<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::OutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        list.dedup();
        Ok(Self::from_canonical(n, list))
    }

    // `edges` must already be sorted, deduplicated and normalized.
    fn from_canonical(n: usize, edges: Vec<(Vertex, Vertex)>) -> Self {
        let mut start = vec![0usize; n + 1];
        for &(u, v) in &edges {
            start[u + 1] += 1;
            start[v + 1] += 1;
        }
        for v in 0..n {
            start[v + 1] += start[v];
        }
        let mut fill = start[..n].to_vec();
        let mut nbrs = vec![0; 2 * edges.len()];
        // Smaller neighbors first, then larger ones; the sorted edge list
        // delivers each group in increasing order.
        for &(u, v) in &edges {
            nbrs[fill[v]] = u;
            fill[v] += 1;
        }
        for &(u, v) in &edges {
            nbrs[fill[u]] = v;
            fill[u] += 1;
        }
        Graph {
            data: Arc::new(GraphData {
                n,
                edges,
                start,
                nbrs,
            }),
        }
    }

    pub fn n(&self) -> usize {
        self.data.n
    }

    pub fn m(&self) -> usize {
        self.data.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.data.edges
    }

    pub fn edge(&self, id: EdgeId) -> (Vertex, Vertex) {
        self.data.edges[id]
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.data.nbrs[self.data.start[v]..self.data.start[v + 1]]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.data.start[v + 1] - self.data.start[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.data.n && v < self.data.n && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Id of edge `{u, v}` if present.
    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        let key = (u.min(v), u.max(v));
        self.data.edges.binary_search(&key).ok()
    }

    /// Number of connected components, isolated vertices included.
    pub fn component_count(&self) -> usize {
        self.components().1
    }

    /// Component label per vertex and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.data.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.data.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &w in self.neighbors(v) {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn is_connected(&self) -> bool {
        self.data.n <= 1 || self.component_count() == 1
    }

    /// Subgraph induced by the vertices with `keep[v]`, relabeled in
    /// increasing order. Returns the graph and the old id of each new vertex.
    pub fn induced(&self, keep: &[bool]) -> (Graph, Vec<Vertex>) {
        let mut new_id = vec![usize::MAX; self.data.n];
        let mut old = Vec::new();
        for v in 0..self.data.n {
            if keep[v] {
                new_id[v] = old.len();
                old.push(v);
            }
        }
        let edges = self
            .edges()
            .iter()
            .filter(|&&(u, v)| keep[u] && keep[v])
            .map(|&(u, v)| (new_id[u], new_id[v]))
            .collect();
        (Graph::from_canonical(old.len(), edges), old)
    }

    /// Graph with the given vertices deleted (relabeled, see [`Graph::induced`]).
    pub fn remove_vertices(&self, gone: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut keep = vec![true; self.data.n];
        for &v in gone {
            if v < self.data.n {
                keep[v] = false;
            }
        }
        self.induced(&keep)
    }

    /// Spanning subgraph on the edges with `keep[e]`.
    pub fn edge_subgraph(&self, keep: &[bool]) -> Graph {
        let edges = self
            .edges()
            .iter()
            .zip(keep)
            .filter(|(_, &k)| k)
            .map(|(&e, _)| e)
            .collect();
        Graph::from_canonical(self.data.n, edges)
    }

    /// Two-coloring of the graph, or `None` when it has an odd cycle.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut color = vec![None; self.data.n];
        let mut stack = Vec::new();
        for s in 0..self.data.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            stack.push(s);
            while let Some(v) = stack.pop() {
                let c = color[v].unwrap();
                for &w in self.neighbors(v) {
                    match color[w] {
                        None => {
                            color[w] = Some(!c);
                            stack.push(w);
                        }
                        Some(cw) if cw == c => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap()).collect())
    }
}

// Serialized as `{"n": .., "edges": [[u, v], ..]}`; deserialization
// re-validates the edge list.
impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphDoc::from_graph(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = GraphDoc::deserialize(d)?;
        doc.to_graph().map_err(serde::de::Error::custom)
    }
}

/// Incremental construction used by transforms and generators.
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            n,
            edges: Vec::new(),
        }
    }

    pub fn from_graph(g: &Graph) -> Self {
        GraphBuilder {
            n: g.n(),
            edges: g.edges().to_vec(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.n += 1;
        self.n - 1
    }

    pub fn add_vertices(&mut self, count: usize) -> std::ops::Range<Vertex> {
        let start = self.n;
        self.n += count;
        start..self.n
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) {
        self.edges.push((u, v));
    }

    /// Adds `count` paths of length two between `hub` and `target` and
    /// returns the new midpoints.
    pub fn add_spokes(&mut self, hub: Vertex, target: Vertex, count: usize) -> Vec<Vertex> {
        let mids = self.add_vertices(count);
        for p in mids.clone() {
            self.edges.push((hub, p));
            self.edges.push((p, target));
        }
        mids.collect()
    }

    pub fn build(self) -> Result<Graph, GraphError> {
        Graph::from_edges(self.n, self.edges)
    }
}
