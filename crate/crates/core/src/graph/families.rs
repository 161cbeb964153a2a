//! Named graph families and seeded random generators.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Graph, Vertex};

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edges(n, edges).expect("complete graph is simple")
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
    Graph::from_edges(a + b, edges).expect("complete bipartite graph is simple")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least three vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

/// Path on `n` vertices.
pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

/// Star with center 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
}

pub fn grid(rows: usize, cols: usize) -> Graph {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::from_edges(rows * cols, edges).unwrap()
}

/// Wheel with hub 0 and a rim of `rim` vertices.
pub fn wheel(rim: usize) -> Graph {
    let mut edges: Vec<_> = (1..=rim).map(|i| (0, i)).collect();
    edges.extend((0..rim).map(|i| (1 + i, 1 + (i + 1) % rim)));
    Graph::from_edges(rim + 1, edges).unwrap()
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, edges).unwrap()
}

/// Disjoint union; vertices of `h` are shifted by `g.n()`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let shift = g.n();
    let edges = g
        .edges()
        .iter()
        .copied()
        .chain(h.edges().iter().map(|&(u, v)| (u + shift, v + shift)));
    Graph::from_edges(g.n() + h.n(), edges).unwrap()
}

/// Adds `count` new vertices adjacent to exactly `hubs`.
pub fn with_twins(g: &Graph, hubs: &[Vertex], count: usize) -> Graph {
    let n = g.n();
    let mut edges = g.edges().to_vec();
    for t in 0..count {
        for &h in hubs {
            edges.push((h, n + t));
        }
    }
    Graph::from_edges(n + count, edges).unwrap()
}

/// Uniform random labeled tree on `n` vertices (random attachment order).
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(rng);
    let edges = (1..n).map(|i| (order[rng.gen_range(0..i)], order[i]));
    Graph::from_edges(n, edges).unwrap()
}

/// Random connected graph with `n` vertices and `m >= n - 1` edges.
pub fn random_connected<R: Rng>(n: usize, m: usize, rng: &mut R) -> Graph {
    let max = n * n.saturating_sub(1) / 2;
    assert!(m + 1 >= n && m <= max, "edge count out of range");
    let tree = random_tree(n, rng);
    let mut edges: Vec<(Vertex, Vertex)> = tree.edges().to_vec();
    let mut missing: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !tree.has_edge(u, v))
        .collect();
    missing.shuffle(rng);
    edges.extend(missing.into_iter().take(m + 1 - n.max(1)));
    Graph::from_edges(n, edges).unwrap()
}

/// Erdős–Rényi style graph: each pair present with probability `p`.
pub fn random_gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn family_sizes() {
        assert_eq!(complete(5).m(), 10);
        assert_eq!(complete_bipartite(3, 3).m(), 9);
        assert_eq!(petersen().m(), 15);
        assert_eq!(grid(5, 5).m(), 40);
        assert_eq!(wheel(5).m(), 10);
        assert_eq!(with_twins(&path(2), &[0, 1], 3).m(), 7);
    }

    #[test]
    fn random_connected_has_requested_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in 5..=10 {
            let g = random_connected(6, m, &mut rng);
            assert_eq!(g.m(), m);
            assert!(g.is_connected());
        }
        let t = random_tree(9, &mut rng);
        assert_eq!(t.m(), 8);
        assert!(t.is_connected());
    }
}
