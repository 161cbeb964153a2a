//! Exact 1-planarity by planarization search.
//!
//! A search state fixes some crossing pairs and forbids some edges from
//! being crossed. If the planarization of the state is planar we are done.
//! Otherwise some Kuratowski subgraph of it must be destroyed, and the only
//! way to do that is to cross one of its still-crossable edges. Branch `i`
//! crosses the `i`-th such edge with each admissible partner while edges
//! `1..i` stay uncrossed, so the branches partition the remaining space.
//!
//! Crossing pairs are restricted to vertex-disjoint edges, each edge crossed
//! at most once. This loses nothing: in a 1-planar drawing, crossings of
//! adjacent edges can be uncrossed by swapping the two curve pieces near
//! the shared endpoint without creating new crossings.

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use crate::graph::{EdgeId, Vertex};
use crate::planarity::{minimal_nonplanar, PlanarityTester};

const NONE: usize = usize::MAX;

pub(crate) enum Outcome {
    Found(Vec<(EdgeId, EdgeId)>),
    Exhausted,
    Stopped,
}

pub(crate) struct Shared {
    pub nodes: AtomicU64,
    pub stop: AtomicBool,
    pub budget_hit: AtomicBool,
    pub budget: u64,
}

impl Shared {
    pub fn new(budget: u64) -> Self {
        Shared {
            nodes: AtomicU64::new(0),
            stop: AtomicBool::new(false),
            budget_hit: AtomicBool::new(false),
            budget,
        }
    }
}

/// Problem data shared by all workers.
pub(crate) struct Problem<'a> {
    pub n: usize,
    pub edges: &'a [(Vertex, Vertex)],
    /// Pairs of edges that need not be tried together (e.g. two pieces of
    /// one subdivided edge). Must not exclude every solution.
    pub group: Option<&'a [usize]>,
    /// For a subdivided graph: the edge ids of each path in order. Sliding
    /// subdivision vertices along a curve shows that the crossings of a
    /// path can be assumed to lie on a prefix of its segments, so once a
    /// segment is frozen every later segment is frozen too.
    pub paths: Option<&'a [Vec<EdgeId>]>,
    pub units: Option<&'a Units>,
}

/// Interchangeable parts of the graph. Units of one class come from
/// vertices with equal neighborhoods, and their edge lists correspond
/// position by position. While none of two units' edges is crossed or
/// frozen, swapping them maps the search state to itself, so partners
/// that differ only by such a swap give isomorphic subtrees.
#[derive(Debug, Default)]
pub(crate) struct Units {
    pub class: Vec<usize>,
    pub edges: Vec<Vec<EdgeId>>,
    /// Per problem edge: `(unit, position)`, or `NONE` for the unit.
    pub edge_unit: Vec<(usize, usize)>,
}

impl Units {
    pub fn new(m: usize, classes: Vec<Vec<Vec<EdgeId>>>) -> Self {
        let mut u = Units {
            edge_unit: vec![(NONE, 0); m],
            ..Default::default()
        };
        for (c, members) in classes.into_iter().enumerate() {
            for edges in members {
                let id = u.class.len();
                for (pos, &e) in edges.iter().enumerate() {
                    u.edge_unit[e] = (id, pos);
                }
                u.class.push(c);
                u.edges.push(edges);
            }
        }
        u
    }
}

impl Problem<'_> {
    fn admissible(&self, e: EdgeId, f: EdgeId) -> bool {
        let (a, b) = self.edges[e];
        let (c, d) = self.edges[f];
        if a == c || a == d || b == c || b == d {
            return false;
        }
        match self.group {
            Some(g) => g[e] != g[f],
            None => true,
        }
    }
}

#[derive(Clone)]
struct State {
    partner: Vec<usize>,
    frozen: Vec<bool>,
    crossings: Vec<(EdgeId, EdgeId)>,
}

struct Child {
    freeze: Vec<EdgeId>,
    pair: (EdgeId, EdgeId),
}

enum Expansion {
    Found,
    Leaf,
    Children(Vec<Child>),
    Stopped,
}

struct Worker<'a> {
    p: &'a Problem<'a>,
    shared: &'a Shared,
    tester: PlanarityTester,
    pe: Vec<(Vertex, Vertex)>,
    origin: Vec<usize>,
    crossable: Vec<bool>,
    partners: Vec<usize>,
}

impl<'a> Worker<'a> {
    fn new(p: &'a Problem<'a>, shared: &'a Shared) -> Self {
        Worker {
            p,
            shared,
            tester: PlanarityTester::new(),
            pe: Vec::new(),
            origin: Vec::new(),
            crossable: Vec::new(),
            partners: Vec::new(),
        }
    }

    fn expand(&mut self, s: &State) -> Expansion {
        if self.shared.stop.load(Ordering::Relaxed) {
            return Expansion::Stopped;
        }
        let count = self.shared.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if count > self.shared.budget {
            self.shared.budget_hit.store(true, Ordering::Relaxed);
            self.shared.stop.store(true, Ordering::Relaxed);
            return Expansion::Stopped;
        }
        let (n, m) = (self.p.n, self.p.edges.len());

        // Planarization: uncrossed edges keep their original id as origin;
        // the four half-edges at a crossing are never crossable.
        self.pe.clear();
        self.origin.clear();
        for e in 0..m {
            if s.partner[e] == NONE {
                self.pe.push(self.p.edges[e]);
                self.origin.push(e);
            }
        }
        for (i, &(e, f)) in s.crossings.iter().enumerate() {
            let d = n + i;
            for x in [e, f] {
                let (u, v) = self.p.edges[x];
                self.pe.push((u, d));
                self.pe.push((d, v));
                self.origin.push(NONE);
                self.origin.push(NONE);
            }
        }
        let big_n = n + s.crossings.len();
        let big_m = self.pe.len();

        // Crossable: uncrossed, not frozen, and with some admissible partner
        // that is itself crossable (iterated to a fixpoint).
        self.crossable.clear();
        self.crossable
            .extend((0..m).map(|e| s.partner[e] == NONE && !s.frozen[e]));
        if let Some(paths) = self.p.paths {
            for path in paths {
                let mut blocked = false;
                for &e in path {
                    if blocked {
                        if s.partner[e] != NONE {
                            return Expansion::Leaf;
                        }
                        self.crossable[e] = false;
                    }
                    blocked |= s.frozen[e];
                }
            }
        }
        loop {
            let mut changed = false;
            for e in 0..m {
                if self.crossable[e]
                    && !(0..m).any(|f| f != e && self.crossable[f] && self.p.admissible(e, f))
                {
                    self.crossable[e] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let available = self.crossable.iter().filter(|&&c| c).count();

        // Each new crossing adds one vertex and two edges; the final
        // planarization must satisfy M <= 3N - 6.
        if big_n >= 3 && big_m + 6 > 3 * big_n {
            let need = big_m + 6 - 3 * big_n;
            if need > available / 2 {
                return Expansion::Leaf;
            }
        }
        if self.tester.is_planar_edges(big_n, &self.pe) {
            return Expansion::Found;
        }
        let fixed: Vec<(Vertex, Vertex)> = self
            .pe
            .iter()
            .zip(&self.origin)
            .filter(|(_, &o)| o == NONE || !self.crossable[o])
            .map(|(&e, _)| e)
            .collect();
        if !self.tester.is_planar_edges(big_n, &fixed) {
            return Expansion::Leaf;
        }

        let mut pristine: Vec<bool> = match self.p.units {
            Some(u) => u
                .edges
                .iter()
                .map(|es| es.iter().all(|&x| s.partner[x] == NONE && !s.frozen[x]))
                .collect(),
            None => Vec::new(),
        };
        // Deletion order for the obstruction: untouched twin edges first,
        // then other crossable edges, so the obstruction prefers fixed
        // edges and avoids interchangeable ones.
        let twin = |o: usize| {
            self.p
                .units
                .is_some_and(|u| u.edge_unit[o].0 != NONE && pristine[u.edge_unit[o].0])
        };
        let crossable_at = |i: usize| self.origin[i] != NONE && self.crossable[self.origin[i]];
        let mut order: Vec<usize> = (0..big_m).filter(|&i| crossable_at(i) && twin(self.origin[i])).collect();
        order.extend((0..big_m).filter(|&i| crossable_at(i) && !twin(self.origin[i])));
        order.extend((0..big_m).filter(|&i| !crossable_at(i)));
        let kept = minimal_nonplanar(&mut self.tester, big_n, &self.pe, &order);
        let in_obstruction: Vec<EdgeId> = kept
            .iter()
            .map(|&i| self.origin[i])
            .filter(|&o| o != NONE && self.crossable[o])
            .collect();
        debug_assert!(!in_obstruction.is_empty());
        let mut in_obs = vec![false; m];
        for &e in &in_obstruction {
            in_obs[e] = true;
        }

        self.partners.clear();
        self.partners.resize(m, 0);
        for &e in &in_obstruction {
            let c = (0..m)
                .filter(|&f| f != e && self.crossable[f] && self.p.admissible(e, f))
                .count();
            self.partners[e] = c;
        }
        let mut branch = in_obstruction;
        branch.sort_by_key(|&e| (self.partners[e], e));

        let mut seen = HashSet::new();
        let mut children = Vec::new();
        let mut frozen_so_far: Vec<EdgeId> = Vec::new();
        for &e in &branch {
            // The swap must also fix this edge and the ones frozen with it.
            if let Some(u) = self.p.units {
                let (unit, _) = u.edge_unit[e];
                if unit != NONE {
                    pristine[unit] = false;
                }
            }
            seen.clear();
            let mut fs: Vec<EdgeId> = (0..m)
                .filter(|&f| {
                    f != e
                        && self.crossable[f]
                        && !frozen_so_far.contains(&f)
                        && self.p.admissible(e, f)
                })
                .collect();
            fs.sort_by_key(|&f| (!in_obs[f], f));
            for f in fs {
                if let Some(u) = self.p.units {
                    let (unit, pos) = u.edge_unit[f];
                    if unit != NONE && pristine[unit] && !seen.insert((u.class[unit], pos)) {
                        continue;
                    }
                }
                children.push(Child {
                    freeze: frozen_so_far.clone(),
                    pair: (e.min(f), e.max(f)),
                });
            }
            frozen_so_far.push(e);
        }
        Expansion::Children(children)
    }

    fn apply(s: &mut State, c: &Child) {
        for &x in &c.freeze {
            s.frozen[x] = true;
        }
        let (e, f) = c.pair;
        s.partner[e] = f;
        s.partner[f] = e;
        s.crossings.push(c.pair);
    }

    fn undo(s: &mut State, c: &Child) {
        for &x in &c.freeze {
            s.frozen[x] = false;
        }
        let (e, f) = c.pair;
        s.partner[e] = NONE;
        s.partner[f] = NONE;
        s.crossings.pop();
    }

    fn run(&mut self, s: &mut State) -> Outcome {
        match self.expand(s) {
            Expansion::Found => Outcome::Found(s.crossings.clone()),
            Expansion::Leaf => Outcome::Exhausted,
            Expansion::Stopped => Outcome::Stopped,
            Expansion::Children(children) => {
                for c in &children {
                    Self::apply(s, c);
                    let r = self.run(s);
                    Self::undo(s, c);
                    match r {
                        Outcome::Exhausted => {}
                        other => return other,
                    }
                }
                Outcome::Exhausted
            }
        }
    }
}

/// Runs the search; `Found` carries the crossing pairs.
pub(crate) fn search(p: &Problem<'_>, shared: &Shared, parallel: bool) -> Outcome {
    let m = p.edges.len();
    let mut root = State {
        partner: vec![NONE; m],
        frozen: vec![false; m],
        crossings: Vec::new(),
    };
    let mut w = Worker::new(p, shared);
    if !parallel {
        return w.run(&mut root);
    }
    let children = match w.expand(&root) {
        Expansion::Found => return Outcome::Found(Vec::new()),
        Expansion::Leaf => return Outcome::Exhausted,
        Expansion::Stopped => return Outcome::Stopped,
        Expansion::Children(c) => c,
    };
    let found = children.par_iter().find_map_any(|c| {
        let mut s = root.clone();
        Worker::apply(&mut s, c);
        let mut w = Worker::new(p, shared);
        match w.run(&mut s) {
            Outcome::Found(x) => {
                shared.stop.store(true, Ordering::Relaxed);
                Some(x)
            }
            _ => None,
        }
    });
    match found {
        Some(x) => Outcome::Found(x),
        None if shared.budget_hit.load(Ordering::Relaxed) => Outcome::Stopped,
        None => Outcome::Exhausted,
    }
}
