//! Planarity testing with the left-right criterion, and Kuratowski
//! subgraph extraction.
//!
//! The test runs on raw edge lists so callers that build many similar
//! graphs (the search oracle) can reuse one [`PlanarityTester`] and avoid
//! constructing a [`Graph`] per query.

mod kuratowski;

pub use kuratowski::{
    classify_subdivision, kuratowski, minimal_nonplanar, Obstruction, ObstructionKind,
    PlanarityError,
};

use crate::graph::Graph;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Interval {
    low: usize,
    high: usize,
}

impl Interval {
    const EMPTY: Interval = Interval {
        low: NONE,
        high: NONE,
    };

    fn is_empty(&self) -> bool {
        self.low == NONE && self.high == NONE
    }
}

#[derive(Debug, Clone, Copy)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

/// Reusable buffers for the left-right planarity test.
#[derive(Debug, Default, Clone)]
pub struct PlanarityTester {
    off: Vec<usize>,
    adj: Vec<(usize, usize)>,
    height: Vec<usize>,
    parent_edge: Vec<usize>,
    oriented: Vec<bool>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<usize>,
    out_off: Vec<usize>,
    out: Vec<usize>,
    lowpt_edge: Vec<usize>,
    reference: Vec<usize>,
    stack_bottom: Vec<usize>,
    stack: Vec<ConflictPair>,
    frames: Vec<(usize, usize)>,
    roots: Vec<usize>,
}

impl PlanarityTester {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_planar(&mut self, g: &Graph) -> bool {
        self.is_planar_edges(g.n(), g.edges())
    }

    /// Tests the simple graph on vertices `0..n` with the given edges.
    /// Parallel edges are tolerated by the traversal but defeat the edge
    /// count shortcut, so callers should pass simple graphs.
    pub fn is_planar_edges(&mut self, n: usize, edges: &[(usize, usize)]) -> bool {
        let m = edges.len();
        if n >= 3 && m > 3 * n - 6 {
            return false;
        }
        if m < 9 {
            return true;
        }
        self.orient(n, edges);
        self.sort_by_nesting(n, m);
        self.test_all(m)
    }

    fn orient(&mut self, n: usize, edges: &[(usize, usize)]) {
        let m = edges.len();
        reset(&mut self.off, n + 1, 0);
        for &(u, v) in edges {
            self.off[u + 1] += 1;
            self.off[v + 1] += 1;
        }
        for i in 0..n {
            self.off[i + 1] += self.off[i];
        }
        reset(&mut self.adj, 2 * m, (0, 0));
        let mut fill = self.off.clone();
        for (e, &(u, v)) in edges.iter().enumerate() {
            self.adj[fill[u]] = (v, e);
            fill[u] += 1;
            self.adj[fill[v]] = (u, e);
            fill[v] += 1;
        }

        reset(&mut self.height, n, NONE);
        reset(&mut self.parent_edge, n, NONE);
        reset(&mut self.oriented, m, false);
        reset(&mut self.src, m, 0);
        reset(&mut self.tgt, m, 0);
        reset(&mut self.lowpt, m, 0);
        reset(&mut self.lowpt2, m, 0);
        reset(&mut self.nesting, m, 0);
        self.roots.clear();

        for root in 0..n {
            if self.height[root] != NONE {
                continue;
            }
            self.height[root] = 0;
            self.roots.push(root);
            self.frames.clear();
            self.frames.push((root, self.off[root]));
            while let Some(&(v, pos)) = self.frames.last() {
                if pos < self.off[v + 1] {
                    self.frames.last_mut().unwrap().1 += 1;
                    let (w, e) = self.adj[pos];
                    if self.oriented[e] {
                        continue;
                    }
                    self.oriented[e] = true;
                    self.src[e] = v;
                    self.tgt[e] = w;
                    self.lowpt[e] = self.height[v];
                    self.lowpt2[e] = self.height[v];
                    if self.height[w] == NONE {
                        self.parent_edge[w] = e;
                        self.height[w] = self.height[v] + 1;
                        self.frames.push((w, self.off[w]));
                    } else {
                        self.lowpt[e] = self.height[w];
                        self.finish_edge(v, e);
                    }
                } else {
                    self.frames.pop();
                    let e = self.parent_edge[v];
                    if e != NONE {
                        self.finish_edge(self.src[e], e);
                    }
                }
            }
        }
    }

    // Nesting depth of `vw` and lowpoint propagation into the parent edge of `v`.
    fn finish_edge(&mut self, v: usize, vw: usize) {
        self.nesting[vw] = 2 * self.lowpt[vw];
        if self.lowpt2[vw] < self.height[v] {
            self.nesting[vw] += 1;
        }
        let e = self.parent_edge[v];
        if e == NONE {
            return;
        }
        if self.lowpt[vw] < self.lowpt[e] {
            self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
            self.lowpt[e] = self.lowpt[vw];
        } else if self.lowpt[vw] > self.lowpt[e] {
            self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
        } else {
            self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
        }
    }

    fn sort_by_nesting(&mut self, n: usize, m: usize) {
        reset(&mut self.out_off, n + 1, 0);
        for e in 0..m {
            self.out_off[self.src[e] + 1] += 1;
        }
        for i in 0..n {
            self.out_off[i + 1] += self.out_off[i];
        }
        reset(&mut self.out, m, 0);
        let mut fill = self.out_off.clone();
        for e in 0..m {
            let s = self.src[e];
            self.out[fill[s]] = e;
            fill[s] += 1;
        }
        for v in 0..n {
            let nesting = &self.nesting;
            self.out[self.out_off[v]..self.out_off[v + 1]].sort_unstable_by_key(|&e| nesting[e]);
        }
    }

    fn test_all(&mut self, m: usize) -> bool {
        reset(&mut self.lowpt_edge, m, NONE);
        reset(&mut self.reference, m, NONE);
        reset(&mut self.stack_bottom, m, 0);
        self.stack.clear();
        let roots = std::mem::take(&mut self.roots);
        let ok = roots.iter().all(|&r| self.test_from(r));
        self.roots = roots;
        ok
    }

    fn test_from(&mut self, root: usize) -> bool {
        // Frame: (vertex, position in its out list). A position pointing at a
        // tree edge whose child frame has completed is resumed by `returned`.
        self.frames.clear();
        self.frames.push((root, self.out_off[root]));
        let mut returned = false;
        while let Some(&(v, pos)) = self.frames.last() {
            if returned {
                returned = false;
                let ei = self.out[pos];
                if !self.after_edge(v, ei, pos == self.out_off[v]) {
                    return false;
                }
                self.frames.last_mut().unwrap().1 += 1;
                continue;
            }
            if pos < self.out_off[v + 1] {
                let ei = self.out[pos];
                self.stack_bottom[ei] = self.stack.len();
                let w = self.tgt[ei];
                if self.parent_edge[w] == ei {
                    self.frames.push((w, self.out_off[w]));
                    continue;
                }
                self.lowpt_edge[ei] = ei;
                self.stack.push(ConflictPair {
                    left: Interval::EMPTY,
                    right: Interval { low: ei, high: ei },
                });
                if !self.after_edge(v, ei, pos == self.out_off[v]) {
                    return false;
                }
                self.frames.last_mut().unwrap().1 += 1;
            } else {
                self.frames.pop();
                let e = self.parent_edge[v];
                if e != NONE {
                    self.remove_back_edges(e);
                    returned = true;
                }
            }
        }
        true
    }

    fn after_edge(&mut self, v: usize, ei: usize, first: bool) -> bool {
        if self.lowpt[ei] < self.height[v] {
            let e = self.parent_edge[v];
            if first {
                self.lowpt_edge[e] = self.lowpt_edge[ei];
            } else if !self.add_constraints(ei, e) {
                return false;
            }
        }
        true
    }

    fn conflicting(&self, i: Interval, b: usize) -> bool {
        !i.is_empty() && self.lowpt[i.high] > self.lowpt[b]
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            return self.lowpt[p.right.low];
        }
        if p.right.is_empty() {
            return self.lowpt[p.left.low];
        }
        self.lowpt[p.left.low].min(self.lowpt[p.right.low])
    }

    fn set_ref(&mut self, e: usize, to: usize) {
        if e != NONE {
            self.reference[e] = to;
        }
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair {
            left: Interval::EMPTY,
            right: Interval::EMPTY,
        };
        // Merge return edges of ei into the right side of p.
        loop {
            let mut q = self.stack.pop().expect("return edges of ei are on the stack");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            if self.lowpt[q.right.low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.set_ref(p.right.low, q.right.high);
                }
                p.right.low = q.right.low;
            } else {
                self.set_ref(q.right.low, self.lowpt_edge[e]);
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        // Merge conflicting return edges of earlier siblings into the left side.
        while let Some(&top) = self.stack.last() {
            if !(self.conflicting(top.left, ei) || self.conflicting(top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(q.right, ei) {
                q.swap();
            }
            if self.conflicting(q.right, ei) {
                return false;
            }
            self.set_ref(p.right.low, q.right.high);
            if q.right.low != NONE {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else {
                self.set_ref(p.left.low, q.left.high);
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            self.stack.pop();
        }
        if let Some(mut p) = self.stack.pop() {
            while p.left.high != NONE && self.tgt[p.left.high] == u {
                p.left.high = self.reference[p.left.high];
            }
            if p.left.high == NONE && p.left.low != NONE {
                self.reference[p.left.low] = p.right.low;
                p.left.low = NONE;
            }
            while p.right.high != NONE && self.tgt[p.right.high] == u {
                p.right.high = self.reference[p.right.high];
            }
            if p.right.high == NONE && p.right.low != NONE {
                self.reference[p.right.low] = p.left.low;
                p.right.low = NONE;
            }
            self.stack.push(p);
        }
    }
}

fn reset<T: Clone>(v: &mut Vec<T>, len: usize, value: T) {
    v.clear();
    v.resize(len, value);
}

/// True iff `g` admits a plane embedding.
pub fn is_planar(g: &Graph) -> bool {
    PlanarityTester::new().is_planar(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    #[test]
    fn named_graphs() {
        assert!(is_planar(&complete(4)));
        assert!(!is_planar(&complete(5)));
        assert!(!is_planar(&complete_bipartite(3, 3)));
        assert!(!is_planar(&petersen()));
        assert!(is_planar(&grid(6, 7)));
        assert!(is_planar(&wheel(9)));
        assert!(is_planar(&complete_bipartite(2, 40)));
        assert!(!is_planar(&disjoint_union(&grid(3, 3), &complete(5))));
    }

    #[test]
    fn subdivided_k33_is_nonplanar() {
        // K3,3 with every edge replaced by a path of length two.
        let k = complete_bipartite(3, 3);
        let mut edges = Vec::new();
        for (i, &(u, v)) in k.edges().iter().enumerate() {
            edges.push((u, 6 + i));
            edges.push((6 + i, v));
        }
        let g = Graph::from_edges(6 + k.m(), edges).unwrap();
        assert!(!is_planar(&g));
    }

    #[test]
    fn maximal_planar_minus_nothing_plus_one() {
        // Octahedron is maximal planar; adding any missing edge breaks planarity.
        let oct = Graph::from_edges(
            6,
            (0..6)
                .flat_map(|u| (u + 1..6).map(move |v| (u, v)))
                .filter(|&(u, v)| !(u % 2 == 0 && v == u + 1)),
        )
        .unwrap();
        assert_eq!(oct.m(), 12);
        assert!(is_planar(&oct));
        let mut edges = oct.edges().to_vec();
        edges.push((0, 1));
        assert!(!is_planar(&Graph::from_edges(6, edges).unwrap()));
    }
}
