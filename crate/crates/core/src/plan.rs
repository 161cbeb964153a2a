//! Crossing plans: combinatorial drawings given by which edge pairs cross
//! and in what order the crossings occur along each edge.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeId, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanError {
    #[error("crossing {crossing} references edge id {edge}, but the graph has {m} edges")]
    UnknownEdge { crossing: usize, edge: EdgeId, m: usize },
    #[error("crossing {0} pairs an edge with itself")]
    SelfCrossing(usize),
    #[error("order list for edge id {0} appears twice")]
    DuplicateOrder(EdgeId),
    #[error("order lists are not sorted by edge id (at edge id {0})")]
    UnsortedOrders(EdgeId),
    #[error("order list names edge id {0}, which is not in the graph")]
    UnknownOrderEdge(EdgeId),
    #[error("crossing {crossing} is missing from or repeated in the order of edge id {edge}")]
    OrderMismatch { crossing: usize, edge: EdgeId },
    #[error("order of edge id {edge} lists crossing {crossing}, which does not involve it")]
    ForeignCrossing { crossing: usize, edge: EdgeId },
    #[error("edge {{{0}, {1}}} is not in the graph")]
    NoSuchEdge(Vertex, Vertex),
}

/// Crossings as pairs of edge ids, plus for each crossed edge the crossing
/// ids in order from its smaller endpoint. Edges without crossings have no
/// order entry.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CrossingPlan {
    pub crossings: Vec<(EdgeId, EdgeId)>,
    /// `(edge, crossing ids)` sorted by edge id.
    pub orders: Vec<(EdgeId, Vec<usize>)>,
}

impl CrossingPlan {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    /// Plan in which every edge is crossed at most once, so orders are
    /// implied by the pairs.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (EdgeId, EdgeId)>) -> Self {
        let mut b = PlanBuilder::new();
        for (e, f) in pairs {
            b.cross(e, f);
        }
        b.build()
    }

    /// Checks that the plan is well formed for a graph with `m` edges.
    pub fn validate(&self, m: usize) -> Result<(), PlanError> {
        for (c, &(e, f)) in self.crossings.iter().enumerate() {
            for edge in [e, f] {
                if edge >= m {
                    return Err(PlanError::UnknownEdge { crossing: c, edge, m });
                }
            }
            if e == f {
                return Err(PlanError::SelfCrossing(c));
            }
        }
        let mut listed = vec![false; m];
        // seen[c] counts how often crossing c was listed under each of its edges.
        let mut seen = vec![[0u8; 2]; self.crossings.len()];
        for (i, (edge, seq)) in self.orders.iter().enumerate() {
            let edge = *edge;
            if edge >= m {
                return Err(PlanError::UnknownOrderEdge(edge));
            }
            if std::mem::replace(&mut listed[edge], true) {
                return Err(PlanError::DuplicateOrder(edge));
            }
            if i > 0 && self.orders[i - 1].0 > edge {
                return Err(PlanError::UnsortedOrders(edge));
            }
            for &c in seq {
                let &(a, b) = self
                    .crossings
                    .get(c)
                    .ok_or(PlanError::ForeignCrossing { crossing: c, edge })?;
                let slot = if a == edge {
                    0
                } else if b == edge {
                    1
                } else {
                    return Err(PlanError::ForeignCrossing { crossing: c, edge });
                };
                seen[c][slot] += 1;
            }
        }
        for (c, &(a, b)) in self.crossings.iter().enumerate() {
            if seen[c][0] != 1 {
                return Err(PlanError::OrderMismatch { crossing: c, edge: a });
            }
            if seen[c][1] != 1 {
                return Err(PlanError::OrderMismatch { crossing: c, edge: b });
            }
        }
        Ok(())
    }

    /// Crossing count of every edge (no validation).
    pub fn counts(&self, m: usize) -> Vec<usize> {
        let mut count = vec![0; m];
        for &(e, f) in &self.crossings {
            count[e] += 1;
            count[f] += 1;
        }
        count
    }

    /// Crossing ids along edge `e` from its smaller endpoint.
    pub fn order_of(&self, e: EdgeId) -> &[usize] {
        match self.orders.binary_search_by_key(&e, |(x, _)| *x) {
            Ok(i) => &self.orders[i].1,
            Err(_) => &[],
        }
    }

    /// Canonical form: each pair stored with the smaller edge id first,
    /// crossings sorted lexicographically (ties by position along the first
    /// edge), and ids renumbered accordingly. Assumes a well-formed plan.
    pub fn canonical(&self) -> Self {
        let c = self.crossings.len();
        let mut pos_on_first = vec![0usize; c];
        for (edge, seq) in &self.orders {
            for (p, &x) in seq.iter().enumerate() {
                let (a, b) = self.crossings[x];
                if a.min(b) == *edge {
                    pos_on_first[x] = p;
                }
            }
        }
        let mut idx: Vec<usize> = (0..c).collect();
        let key = |x: usize| {
            let (a, b) = self.crossings[x];
            (a.min(b), a.max(b), pos_on_first[x])
        };
        idx.sort_by_key(|&x| key(x));
        let mut renum = vec![0; c];
        for (new, &old) in idx.iter().enumerate() {
            renum[old] = new;
        }
        let crossings = idx
            .iter()
            .map(|&x| {
                let (a, b) = self.crossings[x];
                (a.min(b), a.max(b))
            })
            .collect();
        let mut orders: Vec<(EdgeId, Vec<usize>)> = self
            .orders
            .iter()
            .filter(|(_, seq)| !seq.is_empty())
            .map(|(e, seq)| (*e, seq.iter().map(|&x| renum[x]).collect()))
            .collect();
        orders.sort_by_key(|(e, _)| *e);
        CrossingPlan { crossings, orders }
    }

    pub fn to_doc(&self, g: &Graph) -> PlanDoc {
        let ends = |e: EdgeId| {
            let (u, v) = g.edge(e);
            [u, v]
        };
        PlanDoc {
            crossings: self.crossings.iter().map(|&(e, f)| [ends(e), ends(f)]).collect(),
            orders: self
                .orders
                .iter()
                .map(|(e, seq)| OrderDoc {
                    edge: ends(*e),
                    sequence: seq.clone(),
                })
                .collect(),
        }
    }

    pub fn from_doc(g: &Graph, doc: &PlanDoc) -> Result<Self, PlanError> {
        let id = |[u, v]: [Vertex; 2]| g.edge_id(u, v).ok_or(PlanError::NoSuchEdge(u, v));
        let crossings = doc
            .crossings
            .iter()
            .map(|[a, b]| Ok((id(*a)?, id(*b)?)))
            .collect::<Result<Vec<_>, PlanError>>()?;
        let mut orders = doc
            .orders
            .iter()
            .map(|o| Ok((id(o.edge)?, o.sequence.clone())))
            .collect::<Result<Vec<_>, PlanError>>()?;
        orders.sort_by_key(|(e, _)| *e);
        let plan = CrossingPlan { crossings, orders };
        plan.validate(g.m())?;
        Ok(plan)
    }
}

/// Builds a plan crossing by crossing. Along each edge, crossings are
/// ordered by call order, read from the smaller endpoint unless the edge
/// is marked reversed.
#[derive(Debug, Clone, Default)]
pub struct PlanBuilder {
    crossings: Vec<(EdgeId, EdgeId)>,
    seq: std::collections::BTreeMap<EdgeId, Vec<usize>>,
    reversed: std::collections::BTreeSet<EdgeId>,
}

impl PlanBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cross(&mut self, e: EdgeId, f: EdgeId) -> usize {
        let id = self.crossings.len();
        self.crossings.push((e, f));
        self.seq.entry(e).or_default().push(id);
        self.seq.entry(f).or_default().push(id);
        id
    }

    /// Call order along `e` runs from its larger endpoint.
    pub fn reverse(&mut self, e: EdgeId) {
        self.reversed.insert(e);
    }

    pub fn build(self) -> CrossingPlan {
        let reversed = self.reversed;
        let orders = self
            .seq
            .into_iter()
            .map(|(e, mut s)| {
                if reversed.contains(&e) {
                    s.reverse();
                }
                (e, s)
            })
            .collect();
        CrossingPlan {
            crossings: self.crossings,
            orders,
        }
        .canonical()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderDoc {
    pub edge: [Vertex; 2],
    pub sequence: Vec<usize>,
}

/// Serialized plan: crossings as endpoint pairs, orders keyed by endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanDoc {
    pub crossings: Vec<[[Vertex; 2]; 2]>,
    #[serde(default)]
    pub orders: Vec<OrderDoc>,
}

/// Replaces every crossing by a dummy vertex (`n + crossing id`) splitting
/// both edges at their recorded positions. Parallel segments, which arise
/// when two edges cross twice, are merged.
pub fn planarize(g: &Graph, plan: &CrossingPlan) -> Result<Graph, PlanError> {
    plan.validate(g.m())?;
    let n = g.n();
    let mut edges = Vec::with_capacity(g.m() + 2 * plan.len());
    let mut next = 0;
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let seq: &[usize] = match plan.orders.get(next) {
            Some((x, s)) if *x == e => {
                next += 1;
                s
            }
            _ => &[],
        };
        let mut prev = u;
        for &c in seq {
            edges.push((prev, n + c));
            prev = n + c;
        }
        edges.push((prev, v));
    }
    Ok(Graph::from_edges_dedup(n + plan.len(), edges).expect("segments are loop-free"))
}
