//! Elimination forests (treedepth decompositions) and their transport to
//! subdivided graphs.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// Rooted forest over `0..n` given by parent pointers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationForest {
    pub parent: Vec<Option<Vertex>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForestError {
    #[error("parent structure has a cycle through vertex {0}")]
    Cyclic(Vertex),
    #[error("forest has {forest} vertices but the graph has {graph}")]
    SizeMismatch { forest: usize, graph: usize },
    #[error("parent {parent} of vertex {vertex} is out of range")]
    OutOfRange { vertex: Vertex, parent: Vertex },
    #[error("edge {{{0}, {1}}} joins two vertices that are not ancestor-related")]
    Invalid(Vertex, Vertex),
    #[error("subdivision parameter must be at least 1")]
    ZeroK,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestCheck {
    pub valid: bool,
    /// Maximum number of vertices on a root-to-leaf path.
    pub height: usize,
    /// First edge (canonical order) without an ancestor relation.
    pub violated: Option<(Vertex, Vertex)>,
}

impl EliminationForest {
    /// The path `0 <- 1 <- ... <- n-1` rooted at 0; valid for every graph.
    pub fn chain(n: usize) -> Self {
        EliminationForest {
            parent: (0..n).map(|v| v.checked_sub(1)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Depth of every vertex, roots at depth 1.
    pub fn depths(&self) -> Result<Vec<usize>, ForestError> {
        let n = self.parent.len();
        let mut depth = vec![0usize; n];
        let mut trail = Vec::new();
        for s in 0..n {
            let mut v = s;
            // 0 = unknown; walk up until a known depth or a root.
            while depth[v] == 0 {
                trail.push(v);
                if trail.len() > n {
                    return Err(ForestError::Cyclic(s));
                }
                match self.parent[v] {
                    None => break,
                    Some(p) if p >= n => return Err(ForestError::OutOfRange { vertex: v, parent: p }),
                    Some(p) => v = p,
                }
            }
            let mut d = if depth[v] == 0 { 0 } else { depth[v] };
            while let Some(w) = trail.pop() {
                d += 1;
                depth[w] = d;
            }
        }
        Ok(depth)
    }

    pub fn height(&self) -> Result<usize, ForestError> {
        Ok(self.depths()?.into_iter().max().unwrap_or(0))
    }

    // Preorder entry/exit times for O(1) ancestor queries.
    fn euler_times(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.parent.len();
        let mut children = vec![Vec::new(); n];
        let mut roots = Vec::new();
        for v in 0..n {
            match self.parent[v] {
                Some(p) => children[p].push(v),
                None => roots.push(v),
            }
        }
        let (mut tin, mut tout) = (vec![0; n], vec![0; n]);
        let mut clock = 0;
        let mut stack: Vec<(Vertex, usize)> = Vec::new();
        for r in roots {
            tin[r] = clock;
            clock += 1;
            stack.push((r, 0));
            while let Some(&mut (v, ref mut i)) = stack.last_mut() {
                if *i < children[v].len() {
                    let c = children[v][*i];
                    *i += 1;
                    tin[c] = clock;
                    clock += 1;
                    stack.push((c, 0));
                } else {
                    tout[v] = clock;
                    stack.pop();
                }
            }
        }
        (tin, tout)
    }
}

/// Checks that every edge of `g` joins an ancestor and a descendant.
pub fn validate_elimination_forest(
    g: &Graph,
    f: &EliminationForest,
) -> Result<ForestCheck, ForestError> {
    if f.len() != g.n() {
        return Err(ForestError::SizeMismatch {
            forest: f.len(),
            graph: g.n(),
        });
    }
    let height = f.height()?;
    let (tin, tout) = f.euler_times();
    let is_anc = |a: Vertex, d: Vertex| tin[a] <= tin[d] && tout[d] <= tout[a];
    let violated = g
        .edges()
        .iter()
        .copied()
        .find(|&(u, v)| !is_anc(u, v) && !is_anc(v, u));
    Ok(ForestCheck {
        valid: violated.is_none(),
        height,
        violated,
    })
}

// Hangs a balanced elimination tree of `path` (a path in this order) below
// `root` by recursive midpoint splitting.
fn hang_balanced(parent: &mut [Option<Vertex>], path: &[Vertex], root: Vertex) {
    let mut stack = vec![(0, path.len(), root)];
    while let Some((lo, hi, above)) = stack.pop() {
        if lo >= hi {
            continue;
        }
        let mid = lo + (hi - lo) / 2;
        parent[path[mid]] = Some(above);
        stack.push((lo, mid, path[mid]));
        stack.push((mid + 1, hi, path[mid]));
    }
}

/// Transports an elimination forest of `g` to the subdivision `G_k`
/// (vertex numbering as in [`crate::transforms::subdivide`]). For every
/// edge the `k - 1` internal vertices form a balanced tree below the deeper
/// endpoint, so the height grows by at most `ceil(log2 k)`.
pub fn lift_elimination_forest(
    g: &Graph,
    f: &EliminationForest,
    k: usize,
) -> Result<EliminationForest, ForestError> {
    if k == 0 {
        return Err(ForestError::ZeroK);
    }
    let check = validate_elimination_forest(g, f)?;
    if let Some((u, v)) = check.violated {
        return Err(ForestError::Invalid(u, v));
    }
    if k == 1 {
        return Ok(f.clone());
    }
    let depth = f.depths()?;
    let n = g.n();
    let mut parent = f.parent.clone();
    parent.resize(n + (k - 1) * g.m(), None);
    let mut path = Vec::with_capacity(k - 1);
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let deeper = if depth[u] > depth[v] { u } else { v };
        path.clear();
        path.extend((1..k).map(|i| n + e * (k - 1) + (i - 1)));
        hang_balanced(&mut parent, &path, deeper);
    }
    Ok(EliminationForest { parent })
}

/// `ceil(log2 k)` for `k >= 1`.
pub fn ceil_log2(k: usize) -> usize {
    assert!(k >= 1);
    (usize::BITS - (k - 1).leading_zeros()) as usize
}
