//! Kuratowski subgraph extraction by edge deletion.
//!
//! Deleting edges whose removal keeps the graph nonplanar leaves a minimal
//! nonplanar subgraph, which is a subdivision of K5 or K3,3 plus isolated
//! vertices. Candidates are deleted in bisected blocks so large graphs with
//! small obstructions need few planarity calls.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::PlanarityTester;
use crate::graph::{EdgeId, Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ObstructionKind {
    #[serde(rename = "k5-subdivision")]
    K5,
    #[serde(rename = "k33-subdivision")]
    K33,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    pub kind: ObstructionKind,
    /// Edge ids of the host graph, sorted.
    pub edges: Vec<EdgeId>,
    /// The five or six vertices of degree greater than two, sorted.
    pub branch_vertices: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanarityError {
    #[error("graph is planar; no Kuratowski subgraph exists")]
    Planar,
}

/// Indices into `edges` of a minimal nonplanar subgraph. Edges earlier in
/// `order` are tried for deletion first, so the result avoids them when it
/// can. Edges missing from `order` are never deleted. The input must be
/// nonplanar.
pub fn minimal_nonplanar(
    tester: &mut PlanarityTester,
    n: usize,
    edges: &[(Vertex, Vertex)],
    order: &[usize],
) -> Vec<usize> {
    let mut keep = vec![true; edges.len()];
    let mut buf = Vec::with_capacity(edges.len());
    let mut nonplanar_without = |keep: &[bool], buf: &mut Vec<(Vertex, Vertex)>| {
        buf.clear();
        buf.extend(edges.iter().zip(keep).filter(|(_, &k)| k).map(|(&e, _)| e));
        !tester.is_planar_edges(n, buf)
    };
    debug_assert!(nonplanar_without(&keep, &mut buf));
    let mut pending: Vec<&[usize]> = vec![order];
    while let Some(block) = pending.pop() {
        if block.is_empty() {
            continue;
        }
        for &e in block {
            keep[e] = false;
        }
        if nonplanar_without(&keep, &mut buf) {
            continue;
        }
        for &e in block {
            keep[e] = true;
        }
        if block.len() > 1 {
            let (a, b) = block.split_at(block.len() / 2);
            pending.push(b);
            pending.push(a);
        }
    }
    (0..edges.len()).filter(|&e| keep[e]).collect()
}

/// Recognizes a subdivision of K5 or K3,3 (isolated vertices allowed).
/// Returns the kind and sorted branch vertices.
pub fn classify_subdivision(
    n: usize,
    edges: &[(Vertex, Vertex)],
) -> Option<(ObstructionKind, Vec<Vertex>)> {
    let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let branch: Vec<Vertex> = (0..n).filter(|&v| adj[v].len() > 2).collect();
    if adj.iter().any(|a| a.len() == 1) {
        return None;
    }
    let kind = match branch.len() {
        5 if branch.iter().all(|&b| adj[b].len() == 4) => ObstructionKind::K5,
        6 if branch.iter().all(|&b| adj[b].len() == 3) => ObstructionKind::K33,
        _ => return None,
    };
    let index = |v: Vertex| branch.binary_search(&v).ok();
    let mut pairs = Vec::new();
    let mut walked = 0;
    for &b in &branch {
        for &first in &adj[b] {
            let (mut prev, mut cur) = (b, first);
            let mut len = 1;
            while index(cur).is_none() {
                let next = if adj[cur][0] == prev {
                    adj[cur][1]
                } else {
                    adj[cur][0]
                };
                prev = cur;
                cur = next;
                len += 1;
                if len > edges.len() {
                    return None;
                }
            }
            if cur == b {
                return None;
            }
            walked += len;
            pairs.push((index(b)?.min(index(cur)?), index(b)?.max(index(cur)?)));
        }
    }
    // Every path was walked once from each end; leftover edges would form
    // cycles of degree-two vertices.
    if walked != 2 * edges.len() {
        return None;
    }
    pairs.sort_unstable();
    pairs.dedup();
    let ok = match kind {
        ObstructionKind::K5 => pairs.len() == 10,
        ObstructionKind::K33 => {
            if pairs.len() != 9 {
                return None;
            }
            // The six branch vertices must split 3 + 3 with all pairs across.
            let mut side = [None::<bool>; 6];
            side[0] = Some(false);
            for _ in 0..6 {
                for &(a, c) in &pairs {
                    match (side[a], side[c]) {
                        (Some(s), None) => side[c] = Some(!s),
                        (None, Some(s)) => side[a] = Some(!s),
                        _ => {}
                    }
                }
            }
            pairs.iter().all(|&(a, c)| side[a].is_some() && side[a] != side[c])
                && side.iter().filter(|s| **s == Some(false)).count() == 3
        }
    };
    ok.then_some((kind, branch))
}

/// Extracts a Kuratowski subgraph of a nonplanar graph.
pub fn kuratowski(g: &Graph) -> Result<Obstruction, PlanarityError> {
    let mut tester = PlanarityTester::new();
    if tester.is_planar(g) {
        return Err(PlanarityError::Planar);
    }
    let order: Vec<usize> = (0..g.m()).collect();
    let kept = minimal_nonplanar(&mut tester, g.n(), g.edges(), &order);
    let sub: Vec<(Vertex, Vertex)> = kept.iter().map(|&e| g.edge(e)).collect();
    let (kind, branch_vertices) = classify_subdivision(g.n(), &sub)
        .expect("minimal nonplanar subgraph is a Kuratowski subdivision");
    Ok(Obstruction {
        kind,
        edges: kept,
        branch_vertices,
    })
}
