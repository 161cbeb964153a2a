//! Exact k-planarity decisions.
//!
//! `k = 0` is planarity. `k = 1` runs the planarization search directly.
//! Larger `k` subdivides every edge `k - 1` times, decides 1-planarity of
//! the result, and projects the witness back: a graph is k-planar exactly
//! when its `(k-1)`-fold subdivision is 1-planar.

mod bounds;
mod direct;
mod search;
mod two_layer;

use std::collections::HashMap;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use bounds::{
    common_neighbor_triple, exceeds_density, lower_bound_reject, LowerBound, TRIPLE_WORK_LIMIT,
};
pub use direct::{lcr_direct_small, DIRECT_MAX_EDGES};
pub use two_layer::{
    check_layers, two_layer_lcr, two_layer_max_crossings, two_layer_plan, TwoLayerResult,
    TWO_LAYER_MAX_ORDERINGS,
};

pub use crate::plan::{planarize, CrossingPlan};

use crate::graph::{Graph, Vertex};
use crate::plan::PlanDoc;
use crate::planarity::is_planar;
use crate::transforms::{subdivide, SubdivisionMap};
use crate::witness::project_subdivided;
use search::{search, Outcome, Problem, Shared, Units};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {m} edges; the brute-force test accepts at most {limit}")]
    TooLarge { m: usize, limit: usize },
    #[error("edge {{{0}, {1}}} lies inside one layer")]
    NotBipartite(Vertex, Vertex),
    #[error("invalid layers: {0}")]
    BadLayers(String),
    #[error("{x}! * {y}! orderings exceed the enumeration limit")]
    TooManyOrderings { x: usize, y: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Answer {
    Yes,
    No,
    /// The node budget ran out before the search finished.
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoReason {
    Density,
    BipartiteObstruction,
    ExhaustedSearch,
    /// `k = 0` and the graph is not planar.
    Nonplanar,
}

impl From<LowerBound> for NoReason {
    fn from(b: LowerBound) -> Self {
        match b {
            LowerBound::Density => NoReason::Density,
            LowerBound::BipartiteObstruction => NoReason::BipartiteObstruction,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub answer: Answer,
    pub witness: Option<CrossingPlan>,
    pub reason: Option<NoReason>,
    /// Search nodes (or planarity tests, for the brute-force test).
    pub nodes: u64,
    pub elapsed: Duration,
}

impl Verdict {
    pub(crate) fn yes(plan: CrossingPlan, nodes: u64, elapsed: Duration) -> Self {
        Verdict {
            answer: Answer::Yes,
            witness: Some(plan),
            reason: None,
            nodes,
            elapsed,
        }
    }

    pub(crate) fn no(reason: NoReason, nodes: u64, elapsed: Duration) -> Self {
        Verdict {
            answer: Answer::No,
            witness: None,
            reason: Some(reason),
            nodes,
            elapsed,
        }
    }

    pub(crate) fn inconclusive(nodes: u64, elapsed: Duration) -> Self {
        Verdict {
            answer: Answer::Inconclusive,
            witness: None,
            reason: None,
            nodes,
            elapsed,
        }
    }

    pub fn to_doc(&self, g: &Graph, k: usize) -> VerdictDoc {
        VerdictDoc {
            k,
            answer: self.answer,
            reason: self.reason,
            nodes: self.nodes,
            elapsed_ms: self.elapsed.as_secs_f64() * 1e3,
            plan: self.witness.as_ref().map(|p| p.to_doc(g)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictDoc {
    pub k: usize,
    pub answer: Answer,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<NoReason>,
    pub nodes: u64,
    pub elapsed_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plan: Option<PlanDoc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Planarity for `k = 0`, direct search for `k = 1`. Above that, a
    /// direct 1-planarity attempt on a quarter of the budget, then the
    /// subdivided search.
    #[default]
    Auto,
    /// Always route through the subdivided graph.
    Subdivide,
    /// Brute-force enumeration on the input graph (small graphs only).
    Direct,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Mode::Auto),
            "subdivide" => Ok(Mode::Subdivide),
            "direct" => Ok(Mode::Direct),
            _ => Err(format!("unknown mode `{s}` (expected auto, subdivide or direct)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub budget: u64,
    pub parallel: bool,
    /// Try [`lower_bound_reject`] before searching.
    pub use_lower_bounds: bool,
    pub mode: Mode,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: DEFAULT_BUDGET,
            parallel: false,
            use_lower_bounds: true,
            mode: Mode::Auto,
        }
    }
}

impl SearchConfig {
    pub fn with_budget(budget: u64) -> Self {
        SearchConfig {
            budget,
            ..Self::default()
        }
    }

    /// No lower-bound shortcuts: every "no" comes from exhaustive search.
    pub fn search_only() -> Self {
        SearchConfig {
            use_lower_bounds: false,
            ..Self::default()
        }
    }
}

// Classes of false twins of `g` (equal open neighborhoods), split by the
// direction of their subdivided paths when `map` is given. Each member
// lists its edges, or path segments from the member outwards, by neighbor.
fn twin_units(g: &Graph, map: Option<&SubdivisionMap>) -> Units {
    let mut by_key: HashMap<(&[Vertex], Vec<bool>), Vec<Vertex>> = HashMap::new();
    for w in 0..g.n() {
        let nb = g.neighbors(w);
        if nb.is_empty() {
            continue;
        }
        let sig = match map {
            Some(_) => nb.iter().map(|&x| w < x).collect(),
            None => Vec::new(),
        };
        by_key.entry((nb, sig)).or_default().push(w);
    }
    let mut classes: Vec<Vec<Vertex>> = by_key.into_values().filter(|c| c.len() >= 2).collect();
    classes.sort_unstable();
    let member_edges = |w: Vertex| -> Vec<usize> {
        match map {
            None => g.neighbors(w).iter().map(|&x| g.edge_id(w, x).unwrap()).collect(),
            Some(map) => g
                .neighbors(w)
                .iter()
                .flat_map(|&x| {
                    let p = &map.paths[g.edge_id(w, x).unwrap()];
                    let mut segs: Vec<usize> =
                        p.windows(2).map(|s| map.graph.edge_id(s[0], s[1]).unwrap()).collect();
                    if p[0] != w {
                        segs.reverse();
                    }
                    segs
                })
                .collect(),
        }
    };
    let m = map.map_or(g.m(), |mp| mp.graph.m());
    Units::new(
        m,
        classes
            .iter()
            .map(|c| c.iter().map(|&w| member_edges(w)).collect())
            .collect(),
    )
}

// 1-planarity search on an explicit edge list with an optional grouping of
// edges that need not cross each other.
fn one_planar_search(
    g: &Graph,
    group: Option<&[usize]>,
    paths: Option<&[Vec<usize>]>,
    units: &Units,
    cfg: &SearchConfig,
    start: Instant,
) -> Verdict {
    let problem = Problem {
        n: g.n(),
        edges: g.edges(),
        group,
        paths,
        units: Some(units),
    };
    let shared = Shared::new(cfg.budget);
    let outcome = search(&problem, &shared, cfg.parallel);
    let nodes = shared.nodes.load(std::sync::atomic::Ordering::Relaxed).min(cfg.budget);
    match outcome {
        Outcome::Found(pairs) => Verdict::yes(CrossingPlan::from_pairs(pairs), nodes, start.elapsed()),
        Outcome::Exhausted => Verdict::no(NoReason::ExhaustedSearch, nodes, start.elapsed()),
        Outcome::Stopped => Verdict::inconclusive(nodes, start.elapsed()),
    }
}

/// Decides 1-planarity. A "yes" carries a plan whose crossings pair
/// vertex-disjoint edges, each edge crossed at most once. Running out of
/// budget gives [`Answer::Inconclusive`], never "no".
pub fn decide_one_planar(g: &Graph, cfg: &SearchConfig) -> Verdict {
    let start = Instant::now();
    if cfg.use_lower_bounds {
        if let Some(b) = lower_bound_reject(g, 1) {
            return Verdict::no(b.into(), 0, start.elapsed());
        }
    }
    one_planar_search(g, None, None, &twin_units(g, None), cfg, start)
}

/// Decides `lcr(g) <= k`. The witness, when present, is a plan for `g`
/// with at most `k` crossings per edge.
pub fn decide_k_planar(g: &Graph, k: usize, cfg: &SearchConfig) -> Result<Verdict, OracleError> {
    let start = Instant::now();
    if cfg.mode == Mode::Direct {
        return lcr_direct_small(g, k, cfg.budget);
    }
    if k == 0 {
        return Ok(if is_planar(g) {
            Verdict::yes(CrossingPlan::empty(), 1, start.elapsed())
        } else {
            Verdict::no(NoReason::Nonplanar, 1, start.elapsed())
        });
    }
    if cfg.use_lower_bounds {
        if let Some(b) = lower_bound_reject(g, k) {
            return Ok(Verdict::no(b.into(), 0, start.elapsed()));
        }
    }
    if is_planar(g) {
        return Ok(Verdict::yes(CrossingPlan::empty(), 1, start.elapsed()));
    }
    if k == 1 && cfg.mode == Mode::Auto {
        return Ok(one_planar_search(g, None, None, &twin_units(g, None), cfg, start));
    }
    // A 1-planar drawing is k-planar, and the direct search is much
    // cheaper than the subdivided one; give it a share of the budget.
    let mut spent = 0;
    if k >= 2 && cfg.mode == Mode::Auto {
        let quick = SearchConfig {
            budget: cfg.budget / 4,
            ..*cfg
        };
        let v = one_planar_search(g, None, None, &twin_units(g, None), &quick, start);
        if v.answer == Answer::Yes {
            return Ok(v);
        }
        spent = v.nodes;
    }
    let cfg = &SearchConfig {
        budget: cfg.budget - spent,
        ..*cfg
    };
    let map = subdivide(g, k).expect("k >= 1");
    // Two pieces of the same original edge never need to cross.
    let group: Vec<usize> = map.segments().into_iter().map(|(e, _)| e).collect();
    let paths: Vec<Vec<usize>> = map
        .paths
        .iter()
        .map(|p| {
            p.windows(2)
                .map(|w| map.graph.edge_id(w[0], w[1]).expect("path edge"))
                .collect()
        })
        .collect();
    let units = twin_units(g, Some(&map));
    let mut v = one_planar_search(&map.graph, Some(&group), Some(&paths), &units, cfg, start);
    if let Some(plan1) = v.witness.take() {
        let plan = project_subdivided(&map, &plan1)
            .expect("search witnesses verify on the subdivided graph");
        v.witness = Some(plan);
    }
    v.nodes += spent;
    v.elapsed = start.elapsed();
    Ok(v)
}

/// Lexicographic successor; on the last permutation, resets to sorted
/// order and returns false.
pub(crate) fn next_permutation<T: Ord>(a: &mut [T]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        a.reverse();
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}
