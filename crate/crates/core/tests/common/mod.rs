#![allow(dead_code)]

use kplanar::graph::families::*;
use kplanar::graph::{Graph, GraphBuilder, Vertex};
use kplanar::oracle::{decide_k_planar, Answer, CrossingPlan, SearchConfig};
use kplanar::witness::verify;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Re-expresses a plan of `core` on a supergraph that keeps the core's
/// vertex ids.
pub fn lift_plan(core: &Graph, plan: &CrossingPlan, g: &Graph) -> CrossingPlan {
    let id: Vec<usize> = core
        .edges()
        .iter()
        .map(|&(u, v)| g.edge_id(u, v).expect("core edge"))
        .collect();
    CrossingPlan {
        crossings: plan.crossings.iter().map(|&(e, f)| (id[e], id[f])).collect(),
        orders: plan.orders.iter().map(|(e, s)| (id[*e], s.clone())).collect(),
    }
    .canonical()
}

/// Adds `per` degree-2 twins on each of the first `edges` uncrossed edges
/// of the core. Each twin path runs next to its edge, so the lifted plan
/// stays valid.
pub fn twins_on_uncrossed(core: &Graph, plan: &CrossingPlan, edges: usize, per: usize) -> (Graph, CrossingPlan) {
    let counts = plan.counts(core.m());
    let free: Vec<(Vertex, Vertex)> = core
        .edges()
        .iter()
        .enumerate()
        .filter(|&(e, _)| counts[e] == 0)
        .map(|(_, &x)| x)
        .take(edges)
        .collect();
    assert_eq!(free.len(), edges, "not enough uncrossed edges");
    let mut b = GraphBuilder::from_graph(core);
    for &(a, c) in &free {
        for w in b.add_vertices(per) {
            b.add_edge(a, w);
            b.add_edge(w, c);
        }
    }
    let g = b.build().unwrap();
    let lifted = lift_plan(core, plan, &g);
    (g, lifted)
}

/// Appends a pendant path of `len` vertices at `at`.
pub fn with_pendant(g: &Graph, at: Vertex, len: usize) -> Graph {
    let mut b = GraphBuilder::from_graph(g);
    let mut prev = at;
    for v in b.add_vertices(len) {
        b.add_edge(prev, v);
        prev = v;
    }
    b.build().unwrap()
}

/// `K_s` plus one vertex per pair of core vertices, adjacent to that pair.
pub fn clique_with_pair_vertices(s: usize) -> Graph {
    let mut b = GraphBuilder::from_graph(&complete(s));
    for i in 0..s {
        for j in i + 1..s {
            let w = b.add_vertex();
            b.add_edge(i, w);
            b.add_edge(w, j);
        }
    }
    b.build().unwrap()
}

fn oracle_plan(core: &Graph, k: usize) -> CrossingPlan {
    let v = decide_k_planar(core, k, &SearchConfig::default()).unwrap();
    assert_eq!(v.answer, Answer::Yes);
    v.witness.unwrap()
}

pub struct Case {
    pub name: &'static str,
    pub graph: Graph,
    pub k: usize,
    pub expected: bool,
    /// A verified drawing for yes-instances.
    pub plan: Option<CrossingPlan>,
}

/// Twin-heavy yes-instances drawn from a known core plan, and
/// no-instances containing a dense or `K_{7k+1,3}` part.
pub fn kernel_suite() -> Vec<Case> {
    let mut cases = Vec::new();
    let mut yes = |name, core: Graph, plan: CrossingPlan, k, edges, per| {
        let (graph, plan) = twins_on_uncrossed(&core, &plan, edges, per);
        assert_eq!(verify(&graph, k, &plan), Ok(()), "{name}");
        cases.push(Case {
            name,
            graph,
            k,
            expected: true,
            plan: Some(plan),
        });
    };
    let empty = CrossingPlan::empty;
    yes("grid-6x6 + 100 twins", grid(6, 6), empty(), 1, 1, 100);
    yes("wheel-8 + 2x40 twins", wheel(8), empty(), 1, 2, 40);
    yes("K2 + 300 twins", path(2), empty(), 1, 1, 300);
    yes("K5 + 80 twins", complete(5), oracle_plan(&complete(5), 1), 1, 1, 80);
    yes("K6 + 3x30 twins", complete(6), oracle_plan(&complete(6), 1), 1, 3, 30);
    yes("petersen + 2x60 twins", petersen(), oracle_plan(&petersen(), 1), 1, 2, 60);
    yes("K3,4 + 70 twins", complete_bipartite(3, 4), oracle_plan(&complete_bipartite(3, 4), 1), 1, 1, 70);
    yes("grid-5x5 + 3x200 twins", grid(5, 5), empty(), 2, 3, 200);
    yes("K5 + 150 twins", complete(5), oracle_plan(&complete(5), 1), 2, 1, 150);
    yes("K6 + 2x40 twins", complete(6), oracle_plan(&complete(6), 1), 2, 2, 40);

    let mut no = |name, graph: Graph, k| {
        cases.push(Case {
            name,
            graph,
            k,
            expected: false,
            plan: None,
        });
    };
    let k11_3 = with_pendant(&with_pendant(&complete_bipartite(11, 3), 0, 2), 11, 1);
    no("K11,3 + pendants", k11_3, 1);
    no("K18,3 + pendant", with_pendant(&complete_bipartite(18, 3), 18, 3), 2);
    no("K8,3", complete_bipartite(8, 3), 1);
    no("K8,3 + hub twins", with_twins(&complete_bipartite(8, 3), &[8, 9], 30), 1);
    no("K9 + pendants", with_pendant(&with_pendant(&complete(9), 0, 4), 5, 2), 1);
    no("K10", complete(10), 1);
    no("K12", complete(12), 2);
    no("K13 + pair vertices", clique_with_pair_vertices(13), 1);
    no("K18 + pair vertices", clique_with_pair_vertices(18), 2);
    no("K15,3 + grid", disjoint_union(&complete_bipartite(15, 3), &grid(4, 4)), 2);
    cases
}

/// Two hubs with degree-2 twins plus a sparse noise component with random
/// chords, about `m` edges in total.
pub fn scaling_instance(m: usize, seed: u64) -> Graph {
    let mut r = rng(seed);
    let twins = m / 4;
    let side = ((m / 2) as f64 / 2.0).sqrt().max(2.0) as usize;
    let noise = grid(side, side);
    let mut b = GraphBuilder::from_graph(&with_twins(&Graph::empty(2), &[0, 1], twins));
    let off = b.n();
    b.add_vertices(noise.n());
    for &(u, v) in noise.edges() {
        b.add_edge(off + u, off + v);
    }
    let extra = m.saturating_sub(2 * twins + noise.m());
    let mut seen = std::collections::HashSet::new();
    let mut added = 0;
    while added < extra {
        let u = off + r.gen_range(0..noise.n());
        let v = off + r.gen_range(0..noise.n());
        if u != v && !noise.has_edge(u - off, v - off) && seen.insert((u.min(v), u.max(v))) {
            b.add_edge(u, v);
            added += 1;
        }
    }
    b.build().unwrap()
}

/// Random graph whose vertices are grouped into twin classes: `classes`
/// class representatives on a random sparse quotient, each blown up to a
/// random clique or independent set.
pub fn twin_class_graph(classes: usize, max_size: usize, seed: u64) -> Graph {
    let mut r = rng(seed);
    let quotient = random_connected(classes, (classes + classes / 2).min(classes * (classes - 1) / 2), &mut r);
    let sizes: Vec<usize> = (0..classes).map(|_| r.gen_range(1..=max_size)).collect();
    let clique: Vec<bool> = (0..classes).map(|_| r.gen_bool(0.5)).collect();
    let mut start = vec![0; classes + 1];
    for i in 0..classes {
        start[i + 1] = start[i] + sizes[i];
    }
    let mut b = GraphBuilder::new(start[classes]);
    for i in 0..classes {
        if clique[i] {
            for a in start[i]..start[i + 1] {
                for c in a + 1..start[i + 1] {
                    b.add_edge(a, c);
                }
            }
        }
    }
    for &(i, j) in quotient.edges() {
        for a in start[i]..start[i + 1] {
            for c in start[j]..start[j + 1] {
                b.add_edge(a, c);
            }
        }
    }
    b.build().unwrap()
}

/// Random connected graph with `n` vertices and `m` edges, vertex ids
/// shuffled.
pub fn random_small(n: usize, m: usize, r: &mut ChaCha8Rng) -> Graph {
    let g = random_connected(n, m, r);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(r);
    Graph::from_edges(n, g.edges().iter().map(|&(u, v)| (perm[u], perm[v]))).unwrap()
}

/// Kernel rejection, or the oracle's answer on the kernel.
pub fn pipeline_answer(report: &kplanar::kernel::KernelReport, cfg: &SearchConfig) -> Answer {
    match report.kernel() {
        None => Answer::No,
        Some(kernel) => decide_k_planar(kernel, report.k, cfg).unwrap().answer,
    }
}

/// Independent recount of outside vertices by degree in the kernel, and
/// the bounds they must satisfy.
pub fn kernel_degree_check(report: &kplanar::kernel::KernelReport) -> Option<(usize, usize, f64, f64)> {
    let kplanar::kernel::KernelVerdict::Kernel { graph, original } = &report.verdict else {
        return None;
    };
    let cover: std::collections::HashSet<usize> = report.cover.iter().copied().collect();
    let (mut d3, mut d2) = (0, 0);
    for (v, o) in original.iter().enumerate() {
        if cover.contains(o) {
            continue;
        }
        match graph.degree(v) {
            0 | 1 => {}
            2 => d2 += 1,
            _ => d3 += 1,
        }
    }
    let s = report.cover.len() as f64;
    let k = report.k as f64;
    let labels = (3.81 * s * (2.0 * k).sqrt()).ceil();
    let b3 = 7.0 * k * (s - 2.0).max(0.0) * labels;
    let b2 = 16.0 * k * k * s * labels;
    Some((d3, d2, b3, b2))
}

/// Solvable unary bin-packing instance: `bins` random compositions of
/// `capacity` into parts of at most `max_item`, shuffled.
pub fn random_ubp(bins: usize, capacity: u64, max_item: u64, r: &mut ChaCha8Rng) -> kplanar::ubp::UbpInstance {
    let mut items = Vec::new();
    for _ in 0..bins {
        let mut left = capacity;
        while left > 0 {
            let x = r.gen_range(1..=left.min(max_item));
            items.push(x);
            left -= x;
        }
    }
    items.shuffle(r);
    kplanar::ubp::UbpInstance::new(items, capacity, bins).unwrap()
}

/// Random tree with its bipartition, both sides sorted.
pub fn random_layered_tree(n: usize, r: &mut ChaCha8Rng) -> (Graph, Vec<Vertex>, Vec<Vertex>) {
    let t = random_tree(n, r);
    let side = t.bipartition().expect("trees are bipartite");
    let x = (0..n).filter(|&v| side[v]).collect();
    let y = (0..n).filter(|&v| !side[v]).collect();
    (t, x, y)
}

/// Random forest on `n` vertices and a graph whose edges all join an
/// ancestor to a descendant in it.
pub fn forest_graph(n: usize, r: &mut ChaCha8Rng) -> (Graph, kplanar::transforms::EliminationForest) {
    let parent: Vec<Option<usize>> = (0..n)
        .map(|v| if v == 0 || r.gen_bool(0.15) { None } else { Some(r.gen_range(0..v)) })
        .collect();
    let mut b = GraphBuilder::new(n);
    for v in 0..n {
        let mut a = parent[v];
        while let Some(u) = a {
            if a == parent[v] || r.gen_bool(0.3) {
                b.add_edge(u, v);
            }
            a = parent[u];
        }
    }
    (b.build().unwrap(), kplanar::transforms::EliminationForest { parent })
}
