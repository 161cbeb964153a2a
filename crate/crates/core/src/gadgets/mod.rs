//! Hardness gadgets: two-sided spoke constructions, the bandwidth and gap
//! instances built on them, and the bin-packing gadgets with their forward
//! witnesses and structural certificates.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphBuilder, Vertex};
use crate::oracle::{check_layers, OracleError};
use crate::transforms::{
    validate_elimination_forest, add_spokes_to, EliminationForest, ForestError, SpokeRegistry,
};
use crate::ubp::{UbpError, UbpInstance};

mod certify;
mod witness;

pub use certify::{certify, Claim, NearPlanar, StructuralCertificate, NEAR_PLANAR_GUARD};
pub use witness::{witness_two_sided, witness_ubp, WitnessError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UbpVariant {
    Basic,
    Domination,
    Twincover,
}

impl FromStr for UbpVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "basic" => Ok(UbpVariant::Basic),
            "domination" => Ok(UbpVariant::Domination),
            "twincover" | "twin-cover" => Ok(UbpVariant::Twincover),
            _ => Err(format!("unknown variant {s:?} (basic, domination, twincover)")),
        }
    }
}

impl fmt::Display for UbpVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UbpVariant::Basic => "basic",
            UbpVariant::Domination => "domination",
            UbpVariant::Twincover => "twincover",
        })
    }
}

/// Family tag and the parameters the instance was built from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    TwoSided {
        source: Graph,
        x: Vec<Vertex>,
        y: Vec<Vertex>,
        n_x: usize,
        n_y: usize,
        m: usize,
        l1: usize,
        l2: usize,
    },
    Bandwidth {
        tree: Graph,
        b: usize,
        ell: usize,
        x: Vec<Vertex>,
        y: Vec<Vertex>,
        forest: Option<EliminationForest>,
    },
    Gap {
        tree: Graph,
        b: usize,
        t: usize,
        c: usize,
        ell: usize,
        x: Vec<Vertex>,
        y: Vec<Vertex>,
        yes_threshold: usize,
        no_threshold: usize,
    },
    Ubp {
        instance: UbpInstance,
        variant: UbpVariant,
        m: usize,
        l1: usize,
        l2: usize,
        /// Cycle vertices in order, starting at `v1`.
        cycle: Vec<Vertex>,
        /// Vertices of the path (or clique) of each item.
        groups: Vec<Vec<Vertex>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetInstance {
    pub graph: Graph,
    pub k: usize,
    pub named: BTreeMap<String, Vertex>,
    pub spokes: Vec<SpokeRegistry>,
    pub source: Family,
}

impl GadgetInstance {
    pub fn family_name(&self) -> &'static str {
        match &self.source {
            Family::TwoSided { .. } => "two-sided",
            Family::Bandwidth { .. } => "bandwidth",
            Family::Gap { .. } => "gap",
            Family::Ubp { variant, .. } => match variant {
                UbpVariant::Basic => "ubp-basic",
                UbpVariant::Domination => "ubp-domination",
                UbpVariant::Twincover => "ubp-twincover",
            },
        }
    }

    pub fn vertex(&self, name: &str) -> Option<Vertex> {
        self.named.get(name).copied()
    }

    /// Named vertices exist and every registry has the family's spoke
    /// count per target.
    pub fn check_invariants(&self) -> Result<(), String> {
        if let Some((name, &v)) = self.named.iter().find(|(_, &v)| v >= self.graph.n()) {
            return Err(format!("named vertex {name} = {v} is out of range"));
        }
        let want: Vec<usize> = match &self.source {
            Family::TwoSided { l1, l2, .. } | Family::Ubp { l1, l2, .. } => vec![*l1, *l2],
            _ => Vec::new(),
        };
        if want.len() != self.spokes.len() {
            return Err(format!("expected {} spoke registries, found {}", want.len(), self.spokes.len()));
        }
        for (reg, &count) in self.spokes.iter().zip(&want) {
            if !reg.check(&self.graph) {
                return Err(format!("spokes of hub {} are malformed", reg.hub));
            }
            if let Some((t, mids)) = reg.spokes.iter().find(|(_, mids)| mids.len() != count) {
                return Err(format!(
                    "hub {} has {} spokes to {t}, expected {count}",
                    reg.hub,
                    mids.len()
                ));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error(transparent)]
    Layers(#[from] OracleError),
    #[error("target k must be at least 1")]
    ZeroK,
    #[error("graph is not a tree")]
    NotATree,
    #[error("ell = {0} must be even")]
    OddEll(usize),
    #[error("ell = {ell} is below 2b^2 = {need}")]
    EllTooSmall { ell: usize, need: usize },
    #[error("b must be at least {min}, got {b}")]
    TooFewBins { b: usize, min: usize },
    #[error("t = {t} is below b^2 + 2 = {need}")]
    TTooSmall { t: usize, need: usize },
    #[error("c must be at least 1")]
    ZeroC,
    #[error(transparent)]
    Ubp(#[from] UbpError),
    #[error("item {item} is larger than sqrt(B) - 1 for B = {capacity}; pad the instance first (pad-ubp)")]
    ItemTooLarge { item: u64, capacity: u64 },
    #[error("item {item} exceeds the capacity {capacity}")]
    ItemAboveCapacity { item: u64, capacity: u64 },
    #[error("padded item {item} is larger than sqrt(B') - 1 for B' = {capacity}")]
    PaddingTooSmall { item: u64, capacity: u64 },
    #[error(transparent)]
    Forest(#[from] ForestError),
    #[error("instance is too large to build ({0} vertices)")]
    TooLarge(u128),
}

/// Largest vertex count a generator will materialize.
pub const MAX_GADGET_VERTICES: u128 = 50_000_000;

fn guard_size(n: u128) -> Result<usize, GadgetError> {
    if n > MAX_GADGET_VERTICES {
        Err(GadgetError::TooLarge(n))
    } else {
        Ok(n as usize)
    }
}

/// Spoke construction on a two-layer graph: `u_X` with `km + 1` spokes to
/// each `x` in `X`, `u_Y` with `k(l1 n_X + m) + 1` spokes to each `y` in `Y`
/// and to `u_X`. The original vertices keep their ids; `u_X = n`,
/// `u_Y = n + 1`.
pub fn gen_two_sided(g: &Graph, x: &[Vertex], y: &[Vertex], k: usize) -> Result<GadgetInstance, GadgetError> {
    if k == 0 {
        return Err(GadgetError::ZeroK);
    }
    check_layers(g, x, y)?;
    let mut xs = x.to_vec();
    let mut ys = y.to_vec();
    xs.sort_unstable();
    ys.sort_unstable();
    let (n, m) = (g.n(), g.m());
    let l1 = k as u128 * m as u128 + 1;
    let l2 = k as u128 * (l1 * xs.len() as u128 + m as u128) + 1;
    guard_size(n as u128 + 2 + l1 * xs.len() as u128 + l2 * (ys.len() as u128 + 1))?;
    let (l1, l2) = (l1 as usize, l2 as usize);

    let mut b = GraphBuilder::from_graph(g);
    let ux = b.add_vertex();
    let uy = b.add_vertex();
    let rx = add_spokes_to(&mut b, ux, &xs, l1);
    let mut targets = ys.clone();
    targets.push(ux);
    let ry = add_spokes_to(&mut b, uy, &targets, l2);
    let graph = b.build().expect("spokes keep the graph simple");
    let named = BTreeMap::from([("u_X".to_string(), ux), ("u_Y".to_string(), uy)]);
    Ok(GadgetInstance {
        graph,
        k,
        named,
        spokes: vec![rx, ry],
        source: Family::TwoSided {
            source: g.clone(),
            n_x: xs.len(),
            n_y: ys.len(),
            x: xs,
            y: ys,
            m,
            l1,
            l2,
        },
    })
}

fn is_tree(t: &Graph) -> bool {
    t.n() >= 1 && t.m() + 1 == t.n() && t.is_connected()
}

/// Tree with every edge subdivided once and `ell` leaves on each original
/// vertex, split into layers by its 2-coloring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayeredTree {
    pub graph: Graph,
    /// Original vertices (ids `0..n`).
    pub x: Vec<Vertex>,
    /// Subdivision vertices (`n + e`) and leaves.
    pub y: Vec<Vertex>,
    pub k: usize,
    /// Elimination forest lifted from the one supplied for the tree.
    pub forest: Option<EliminationForest>,
}

/// Bandwidth-to-two-sided construction with `k = (ell + 4)(b - 1) / 2`.
/// Vertex `n + e` subdivides tree edge `e`; the leaves of vertex `v` are
/// `n + (n - 1) + v * ell ..`.
pub fn gen_bandwidth_to_two_sided(
    tree: &Graph,
    b: usize,
    ell: usize,
    forest: Option<&EliminationForest>,
) -> Result<LayeredTree, GadgetError> {
    if !is_tree(tree) {
        return Err(GadgetError::NotATree);
    }
    if b == 0 {
        return Err(GadgetError::TooFewBins { b, min: 1 });
    }
    if ell % 2 == 1 {
        return Err(GadgetError::OddEll(ell));
    }
    let need = 2 * b * b;
    if ell < need {
        return Err(GadgetError::EllTooSmall { ell, need });
    }
    let (n, m) = (tree.n(), tree.m());
    guard_size(n as u128 + m as u128 + ell as u128 * n as u128)?;
    let mut gb = GraphBuilder::new(n);
    for &(u, v) in tree.edges() {
        let w = gb.add_vertex();
        gb.add_edge(u, w);
        gb.add_edge(w, v);
    }
    for v in 0..n {
        for leaf in gb.add_vertices(ell) {
            gb.add_edge(v, leaf);
        }
    }
    let graph = gb.build().expect("a subdivided tree with leaves is simple");

    let lifted = match forest {
        None => None,
        Some(f) => {
            let check = validate_elimination_forest(tree, f)?;
            if let Some((u, v)) = check.violated {
                return Err(ForestError::Invalid(u, v).into());
            }
            let depth = f.depths()?;
            let mut parent = f.parent.clone();
            parent.resize(graph.n(), None);
            for (e, &(u, v)) in tree.edges().iter().enumerate() {
                parent[n + e] = Some(if depth[u] > depth[v] { u } else { v });
            }
            for v in 0..n {
                for j in 0..ell {
                    parent[n + m + v * ell + j] = Some(v);
                }
            }
            Some(EliminationForest { parent })
        }
    };
    Ok(LayeredTree {
        x: (0..n).collect(),
        y: (n..graph.n()).collect(),
        graph,
        k: (ell + 4) * (b - 1) / 2,
        forest: lifted,
    })
}

/// Wraps a layered tree into an instance document (no spokes).
pub fn bandwidth_instance(tree: &Graph, b: usize, ell: usize, forest: Option<&EliminationForest>) -> Result<GadgetInstance, GadgetError> {
    let lt = gen_bandwidth_to_two_sided(tree, b, ell, forest)?;
    Ok(GadgetInstance {
        graph: lt.graph,
        k: lt.k,
        named: BTreeMap::new(),
        spokes: Vec::new(),
        source: Family::Bandwidth {
            tree: tree.clone(),
            b,
            ell,
            x: lt.x,
            y: lt.y,
            forest: lt.forest,
        },
    })
}

/// Gap instance with `ell = 2t - 4`; `k` is the yes-threshold `t(b - 1)`,
/// the no-threshold is `tcb`.
pub fn gen_gap_instance(tree: &Graph, b: usize, t: usize, c: usize) -> Result<GadgetInstance, GadgetError> {
    let need = b * b + 2;
    if t < need {
        return Err(GadgetError::TTooSmall { t, need });
    }
    if c == 0 {
        return Err(GadgetError::ZeroC);
    }
    let ell = 2 * t - 4;
    let lt = gen_bandwidth_to_two_sided(tree, b, ell, None)?;
    let yes_threshold = t * (b - 1);
    Ok(GadgetInstance {
        graph: lt.graph,
        k: yes_threshold,
        named: BTreeMap::new(),
        spokes: Vec::new(),
        source: Family::Gap {
            tree: tree.clone(),
            b,
            t,
            c,
            ell,
            x: lt.x,
            y: lt.y,
            yes_threshold,
            no_threshold: t * c * b,
        },
    })
}

// (x + 1)^2 <= cap, i.e. x <= sqrt(cap) - 1.
fn fits_sqrt(x: u64, cap: u64) -> bool {
    let y = x as u128 + 1;
    y * y <= cap as u128
}

/// Bin-packing gadget. Vertex layout: `u1 = 0`, `u2 = 1`, the cycle, then
/// the item paths (or cliques) in item order, then the spoke midpoints.
pub fn gen_ubp(inst: &UbpInstance, variant: UbpVariant) -> Result<GadgetInstance, GadgetError> {
    inst.validate()?;
    let (b, cap) = (inst.bins, inst.capacity);
    if b < 3 {
        return Err(GadgetError::TooFewBins { b, min: 3 });
    }
    if variant == UbpVariant::Twincover {
        if let Some(&item) = inst.items.iter().find(|&&x| !fits_sqrt(x, cap)) {
            return Err(GadgetError::ItemTooLarge { item, capacity: cap });
        }
    }
    let items_total: u128 = inst.items.iter().map(|&x| x as u128).sum();
    let cycle_len: u128 = match variant {
        UbpVariant::Twincover => b as u128,
        _ => b as u128 * cap as u128,
    };
    guard_size(2 + cycle_len + items_total)?;
    let s = inst.items.len();

    let mut gb = GraphBuilder::new(2);
    let (u1, u2) = (0, 1);
    let cycle: Vec<Vertex> = gb.add_vertices(cycle_len as usize).collect();
    for i in 0..cycle.len() {
        gb.add_edge(cycle[i], cycle[(i + 1) % cycle.len()]);
    }
    let step = cycle.len() / b;
    let v: Vec<Vertex> = (0..b).map(|i| cycle[i * step]).collect();
    let mut groups = Vec::with_capacity(s);
    for &x in &inst.items {
        let grp: Vec<Vertex> = gb.add_vertices(x as usize).collect();
        for (i, &p) in grp.iter().enumerate() {
            gb.add_edge(p, u1);
            gb.add_edge(p, u2);
            match variant {
                UbpVariant::Twincover => {
                    for &q in &grp[i + 1..] {
                        gb.add_edge(p, q);
                    }
                }
                _ => {
                    if let Some(&q) = grp.get(i + 1) {
                        gb.add_edge(p, q);
                    }
                }
            }
        }
        groups.push(grp);
    }
    if variant == UbpVariant::Domination {
        for &c in &cycle {
            gb.add_edge(u1, c);
        }
    }
    // Every edge so far is a non-spoke edge.
    let m = gb.m();
    let (l1, l2, k) = match variant {
        UbpVariant::Twincover => {
            let big = cap as u128;
            let l1 = big * m as u128 + 1;
            let l2 = big * (b as u128 * l1 + m as u128) + 1;
            (l1, l2, cap as usize)
        }
        _ => {
            let l1 = m as u128 + 1;
            (l1, l1 * b as u128 + m as u128 + 1, 1)
        }
    };
    guard_size(gb.n() as u128 + b as u128 * (l1 + l2))?;
    let (l1, l2) = (l1 as usize, l2 as usize);
    let r1 = add_spokes_to(&mut gb, u1, &v, l1);
    let r2 = add_spokes_to(&mut gb, u2, &v, l2);
    let graph = gb.build().expect("gadget is simple");

    let mut named = BTreeMap::from([("u1".to_string(), u1), ("u2".to_string(), u2)]);
    for (i, &vi) in v.iter().enumerate() {
        named.insert(format!("v{}", i + 1), vi);
    }
    Ok(GadgetInstance {
        graph,
        k,
        named,
        spokes: vec![r1, r2],
        source: Family::Ubp {
            instance: inst.clone(),
            variant,
            m,
            l1,
            l2,
            cycle,
            groups,
        },
    })
}

/// Adds `2bB` copies of `B + 1` and raises the capacity to
/// `B + 2B(B + 1)`, without checking the size condition.
pub fn pad_items(inst: &UbpInstance) -> UbpInstance {
    let big = inst.capacity;
    let mut items = inst.items.clone();
    items.extend(std::iter::repeat_n(big + 1, 2 * inst.bins * big as usize));
    UbpInstance {
        items,
        capacity: big + 2 * big * (big + 1),
        bins: inst.bins,
    }
}

/// Padding that makes every item at most `sqrt(B') - 1` while keeping
/// solvability. Fails when the padded items themselves are too large,
/// which happens for `B <= 2`.
pub fn pad_ubp(inst: &UbpInstance) -> Result<UbpInstance, GadgetError> {
    inst.validate()?;
    if let Some(&item) = inst.items.iter().find(|&&x| x > inst.capacity) {
        return Err(GadgetError::ItemAboveCapacity {
            item,
            capacity: inst.capacity,
        });
    }
    let padded = pad_items(inst);
    if let Some(&item) = padded.items.iter().find(|&&x| !fits_sqrt(x, padded.capacity)) {
        return Err(GadgetError::PaddingTooSmall {
            item,
            capacity: padded.capacity,
        });
    }
    Ok(padded)
}
