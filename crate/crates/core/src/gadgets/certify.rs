//! Structural claims about generated gadgets, each re-checked on the graph.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Family, GadgetInstance, UbpVariant};
use crate::graph::structure::{check_structure, find_cycle, Property};
use crate::graph::Vertex;
use crate::planarity::PlanarityTester;
use crate::transforms::{validate_elimination_forest, ForestCheck};

/// Largest edge count for the brute-force near-planar edge search.
pub const NEAR_PLANAR_GUARD: usize = 50_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub name: String,
    /// Vertices removed before checking.
    pub deleted: Vec<Vertex>,
    pub property: Property,
    pub holds: bool,
    pub explanation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum NearPlanar {
    NotClaimed,
    NotChecked { m: usize, guard: usize },
    /// Removing this edge leaves a planar graph.
    Found { edge: [Vertex; 2] },
    NotFound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralCertificate {
    pub family: String,
    pub claims: Vec<Claim>,
    pub near_planar: NearPlanar,
    /// Validity of a lifted elimination forest, when the instance has one.
    pub forest: Option<ForestCheck>,
    pub passed: bool,
}

fn claim(inst: &GadgetInstance, name: &str, deleted: Vec<Vertex>, property: Property) -> Claim {
    let (rest, old) = inst.graph.remove_vertices(&deleted);
    // Sets in the property refer to the full graph; translate them.
    let mut new_id = vec![usize::MAX; inst.graph.n()];
    for (i, &o) in old.iter().enumerate() {
        new_id[o] = i;
    }
    let local = match &property {
        Property::DominatingSet(s) => Property::DominatingSet(s.iter().map(|&v| new_id[v]).collect()),
        Property::TwinCover(s) => Property::TwinCover(s.iter().map(|&v| new_id[v]).collect()),
        p => p.clone(),
    };
    let (holds, explanation) = match check_structure(&rest, &local) {
        Ok(c) => (c.holds, c.explanation),
        Err(e) => (false, e.to_string()),
    };
    Claim {
        name: name.to_string(),
        deleted,
        property,
        holds,
        explanation,
    }
}

fn near_planar_edge(inst: &GadgetInstance) -> NearPlanar {
    let g = &inst.graph;
    if g.m() > NEAR_PLANAR_GUARD {
        return NearPlanar::NotChecked {
            m: g.m(),
            guard: NEAR_PLANAR_GUARD,
        };
    }
    let edges = g.edges();
    let found = (0..edges.len()).into_par_iter().find_first(|&e| {
        let rest: Vec<(Vertex, Vertex)> = edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, &x)| x)
            .collect();
        PlanarityTester::new().is_planar_edges(g.n(), &rest)
    });
    match found {
        Some(e) => NearPlanar::Found {
            edge: [edges[e].0, edges[e].1],
        },
        None => NearPlanar::NotFound,
    }
}

/// Re-checks every structural claim of the instance's family.
pub fn certify(inst: &GadgetInstance) -> StructuralCertificate {
    let mut claims = Vec::new();
    let mut near_planar = NearPlanar::NotClaimed;
    let mut forest = None;
    match &inst.source {
        Family::TwoSided { source, .. } => {
            if find_cycle(source).is_none() {
                let hubs = vec![inst.vertex("u_X").unwrap(), inst.vertex("u_Y").unwrap()];
                claims.push(claim(inst, "feedback-vertex-set", hubs, Property::Acyclic));
            }
        }
        Family::Bandwidth { forest: f, .. } => {
            claims.push(claim(inst, "tree", Vec::new(), Property::Acyclic));
            if let Some(f) = f {
                forest = Some(validate_elimination_forest(&inst.graph, f).unwrap_or(ForestCheck {
                    valid: false,
                    height: 0,
                    violated: None,
                }));
            }
        }
        Family::Gap { .. } => {
            claims.push(claim(inst, "tree", Vec::new(), Property::Acyclic));
        }
        Family::Ubp { variant, cycle, .. } => {
            let u = vec![inst.vertex("u1").unwrap(), inst.vertex("u2").unwrap()];
            match variant {
                UbpVariant::Basic | UbpVariant::Domination => {
                    let mut del = u.clone();
                    del.extend(inst.named.iter().filter(|(k, _)| k.starts_with('v')).map(|(_, &v)| v));
                    del.sort_unstable();
                    claims.push(claim(inst, "path-forest", del, Property::PathForest));
                    claims.push(claim(inst, "feedback-vertex-set", u.clone(), Property::Unicyclic));
                    if *variant == UbpVariant::Domination {
                        claims.push(claim(inst, "domination", Vec::new(), Property::DominatingSet(u)));
                    } else {
                        near_planar = near_planar_edge(inst);
                    }
                }
                UbpVariant::Twincover => {
                    let mut s = u;
                    s.extend(cycle.iter().copied());
                    s.sort_unstable();
                    claims.push(claim(inst, "twin-cover", Vec::new(), Property::TwinCover(s)));
                }
            }
        }
    }
    let passed = claims.iter().all(|c| c.holds)
        && !matches!(near_planar, NearPlanar::NotFound)
        && forest.as_ref().is_none_or(|f| f.valid);
    StructuralCertificate {
        family: inst.family_name().to_string(),
        claims,
        near_planar,
        forest,
        passed,
    }
}
