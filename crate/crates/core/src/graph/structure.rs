//! Structural predicates used to certify gadget properties.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "property", content = "set")]
pub enum Property {
    Acyclic,
    /// Disjoint union of paths (acyclic, max degree two).
    PathForest,
    DominatingSet(Vec<Vertex>),
    /// Every component of `G - S` consists of pairwise true twins of `G`.
    TwinCover(Vec<Vertex>),
    /// Exactly one cycle overall: cyclomatic number `m - n + c` equals one.
    Unicyclic,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
    #[error("vertex {vertex} of the supplied set is not in the graph (n = {n})")]
    OutOfRange { vertex: Vertex, n: usize },
}

impl FromStr for Property {
    type Err = StructureError;

    /// Parses `acyclic`, `path-forest`, `unicyclic`, `dominating-set:1,2`,
    /// `twin-cover:0,3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, set) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let parse_set = |set: Option<&str>| -> Result<Vec<Vertex>, StructureError> {
            set.unwrap_or("")
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| StructureError::UnknownProperty(s.to_string()))
                })
                .collect()
        };
        match name {
            "acyclic" => Ok(Property::Acyclic),
            "path-forest" => Ok(Property::PathForest),
            "unicyclic" => Ok(Property::Unicyclic),
            "dominating-set" => Ok(Property::DominatingSet(parse_set(set)?)),
            "twin-cover" => Ok(Property::TwinCover(parse_set(set)?)),
            _ => Err(StructureError::UnknownProperty(s.to_string())),
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::Acyclic => write!(f, "acyclic"),
            Property::PathForest => write!(f, "path-forest"),
            Property::Unicyclic => write!(f, "unicyclic"),
            Property::DominatingSet(d) => write!(f, "dominating-set({} vertices)", d.len()),
            Property::TwinCover(s) => write!(f, "twin-cover({} vertices)", s.len()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureCheck {
    pub holds: bool,
    pub explanation: String,
}

impl StructureCheck {
    fn ok(msg: impl Into<String>) -> Self {
        StructureCheck {
            holds: true,
            explanation: msg.into(),
        }
    }

    fn fail(msg: impl Into<String>) -> Self {
        StructureCheck {
            holds: false,
            explanation: msg.into(),
        }
    }
}

/// Finds some cycle as a vertex sequence, if the graph has one.
pub fn find_cycle(g: &Graph) -> Option<Vec<Vertex>> {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if w == parent[v] {
                    continue;
                }
                if seen[w] {
                    // Non-tree edge {v, w}: splice the two tree paths.
                    let mut anc_v = vec![v];
                    let mut x = v;
                    while parent[x] != usize::MAX {
                        x = parent[x];
                        anc_v.push(x);
                    }
                    let mut path_w = vec![w];
                    let mut y = w;
                    while !anc_v.contains(&y) {
                        y = parent[y];
                        path_w.push(y);
                    }
                    let meet = anc_v.iter().position(|&a| a == y).unwrap();
                    let mut cycle: Vec<Vertex> = anc_v[..=meet].to_vec();
                    path_w.pop();
                    cycle.extend(path_w.into_iter().rev());
                    return Some(cycle);
                }
                seen[w] = true;
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    None
}

pub fn check_structure(g: &Graph, property: &Property) -> Result<StructureCheck, StructureError> {
    let in_range = |set: &[Vertex]| -> Result<(), StructureError> {
        match set.iter().find(|&&v| v >= g.n()) {
            Some(&vertex) => Err(StructureError::OutOfRange { vertex, n: g.n() }),
            None => Ok(()),
        }
    };
    Ok(match property {
        Property::Acyclic => match find_cycle(g) {
            Some(c) => StructureCheck::fail(format!("cycle {c:?}")),
            None => StructureCheck::ok("no cycle"),
        },
        Property::PathForest => {
            if let Some(v) = (0..g.n()).find(|&v| g.degree(v) > 2) {
                StructureCheck::fail(format!("vertex {v} has degree {}", g.degree(v)))
            } else if let Some(c) = find_cycle(g) {
                StructureCheck::fail(format!("cycle {c:?}"))
            } else {
                StructureCheck::ok(format!("{} path components", g.component_count()))
            }
        }
        Property::Unicyclic => {
            let rank = g.m() + g.component_count() - g.n();
            if rank == 1 {
                StructureCheck::ok(format!("single cycle {:?}", find_cycle(g).unwrap()))
            } else if rank == 0 {
                StructureCheck::fail("graph is acyclic")
            } else {
                StructureCheck::fail(format!(
                    "cyclomatic number {rank}; one cycle is {:?}",
                    find_cycle(g).unwrap()
                ))
            }
        }
        Property::DominatingSet(d) => {
            in_range(d)?;
            let mut dominated = vec![false; g.n()];
            for &v in d {
                dominated[v] = true;
                for &w in g.neighbors(v) {
                    dominated[w] = true;
                }
            }
            match dominated.iter().position(|&x| !x) {
                Some(v) => StructureCheck::fail(format!("vertex {v} is not dominated")),
                None => StructureCheck::ok(format!("{} vertices dominate", d.len())),
            }
        }
        Property::TwinCover(s) => {
            in_range(s)?;
            check_twin_cover(g, s)
        }
    })
}

fn check_twin_cover(g: &Graph, s: &[Vertex]) -> StructureCheck {
    let (rest, old) = g.remove_vertices(s);
    let (label, count) = rest.components();
    let mut first: Vec<Option<Vertex>> = vec![None; count];
    let closed = |v: Vertex| {
        let mut c = g.neighbors(v).to_vec();
        let pos = c.partition_point(|&w| w < v);
        c.insert(pos, v);
        c
    };
    for (i, &v) in old.iter().enumerate() {
        match first[label[i]] {
            None => first[label[i]] = Some(v),
            Some(rep) => {
                if closed(rep) != closed(v) {
                    return StructureCheck::fail(format!(
                        "vertices {rep} and {v} share a component of G - S but are not true twins"
                    ));
                }
            }
        }
    }
    StructureCheck::ok(format!("{count} components, each a true-twin clique"))
}
