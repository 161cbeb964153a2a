//! Structural parameters: leaf stripping, a 2-approximate vertex cover,
//! twin classes (neighborhood diversity), and a summary report.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{Graph, Vertex};

/// Result of [`strip_low_degree`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stripped {
    pub graph: Graph,
    /// Old id of each vertex of `graph`.
    pub kept: Vec<Vertex>,
    /// Removed vertices (old ids) in removal order.
    pub removed: Vec<Vertex>,
}

/// Repeatedly deletes vertices of degree at most one. Leaves and isolated
/// vertices never affect the local crossing number.
pub fn strip_low_degree(g: &Graph) -> Stripped {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut queued = vec![false; n];
    let mut queue = VecDeque::new();
    for v in 0..n {
        if deg[v] <= 1 {
            queued[v] = true;
            queue.push_back(v);
        }
    }
    let mut removed = Vec::new();
    while let Some(v) = queue.pop_front() {
        alive[v] = false;
        removed.push(v);
        for &w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
                if deg[w] <= 1 && !queued[w] {
                    queued[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let (graph, kept) = if removed.is_empty() {
        (g.clone(), (0..n).collect())
    } else {
        g.induced(&alive)
    };
    Stripped {
        graph,
        kept,
        removed,
    }
}

/// Both endpoints of a greedy maximal matching, scanning edges in canonical
/// order. Covers every edge and is at most twice the optimum. Sorted.
pub fn approx_vertex_cover(g: &Graph) -> Vec<Vertex> {
    let mut matched = vec![false; g.n()];
    for &(u, v) in g.edges() {
        if !matched[u] && !matched[v] {
            matched[u] = true;
            matched[v] = true;
        }
    }
    (0..g.n()).filter(|&v| matched[v]).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwinKind {
    /// Pairwise adjacent, equal closed neighborhoods.
    TrueTwin,
    /// Pairwise non-adjacent, equal open neighborhoods.
    FalseTwin,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwinClass {
    pub kind: TwinKind,
    pub vertices: Vec<Vertex>,
}

/// Coarsest partition into twin classes. Singletons are reported as
/// false-twin classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwinPartition {
    pub classes: Vec<TwinClass>,
    /// Class index of every vertex.
    pub class_of: Vec<usize>,
}

impl TwinPartition {
    /// Neighborhood diversity.
    pub fn diversity(&self) -> usize {
        self.classes.len()
    }
}

// Groups vertices with identical keys; returns a group id per vertex and the
// size of each group. Groups are numbered by their smallest member.
fn group_by<'a, F>(n: usize, key: F) -> (Vec<usize>, Vec<usize>)
where
    F: Fn(Vertex) -> &'a [Vertex],
{
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by(|&a, &b| key(a).cmp(key(b)).then(a.cmp(&b)));
    let mut raw = vec![0usize; n];
    let mut g = 0;
    for (i, &v) in order.iter().enumerate() {
        if i > 0 && key(order[i - 1]) != key(v) {
            g += 1;
        }
        raw[v] = g;
    }
    // Renumber by smallest member for a deterministic output order.
    let mut renumber = vec![usize::MAX; g + 1];
    let mut sizes = Vec::new();
    let mut id = vec![0usize; n];
    for v in 0..n {
        if renumber[raw[v]] == usize::MAX {
            renumber[raw[v]] = sizes.len();
            sizes.push(0);
        }
        id[v] = renumber[raw[v]];
        sizes[id[v]] += 1;
    }
    (id, sizes)
}

pub fn twin_partition(g: &Graph) -> TwinPartition {
    let n = g.n();
    let closed: Vec<Vec<Vertex>> = (0..n)
        .map(|v| {
            let mut c = g.neighbors(v).to_vec();
            let pos = c.partition_point(|&w| w < v);
            c.insert(pos, v);
            c
        })
        .collect();
    let (open_id, open_size) = group_by(n, |v| g.neighbors(v));
    let (closed_id, closed_size) = group_by(n, |v| closed[v].as_slice());

    let mut classes: Vec<TwinClass> = Vec::new();
    let mut class_of = vec![usize::MAX; n];
    // (kind, group id) -> class index, created in order of smallest member.
    let mut true_class = vec![usize::MAX; closed_size.len()];
    let mut false_class = vec![usize::MAX; open_size.len()];
    for v in 0..n {
        let (slot, kind) = if closed_size[closed_id[v]] >= 2 {
            (&mut true_class[closed_id[v]], TwinKind::TrueTwin)
        } else {
            (&mut false_class[open_id[v]], TwinKind::FalseTwin)
        };
        if *slot == usize::MAX {
            *slot = classes.len();
            classes.push(TwinClass {
                kind,
                vertices: Vec::new(),
            });
        }
        classes[*slot].vertices.push(v);
        class_of[v] = *slot;
    }
    TwinPartition { classes, class_of }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamReport {
    pub n: usize,
    pub m: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub components: usize,
    /// Equals `m - n + components`.
    pub feedback_edge_number: usize,
    pub neighborhood_diversity: usize,
    /// Size of the greedy-matching cover (at most twice the optimum).
    pub approx_vertex_cover: usize,
}

pub fn param_report(g: &Graph) -> ParamReport {
    let components = g.component_count();
    let degrees = (0..g.n()).map(|v| g.degree(v));
    ParamReport {
        n: g.n(),
        m: g.m(),
        min_degree: degrees.clone().min().unwrap_or(0),
        max_degree: degrees.max().unwrap_or(0),
        components,
        feedback_edge_number: g.m() + components - g.n(),
        neighborhood_diversity: twin_partition(g).diversity(),
        approx_vertex_cover: approx_vertex_cover(g).len(),
    }
}
