//! Forward witnesses: drawings of a gadget built from a solution of the
//! source problem.

use thiserror::Error;

use super::{Family, GadgetInstance, UbpVariant};
use crate::graph::Vertex;
use crate::oracle::{two_layer_max_crossings, two_layer_plan};
use crate::plan::{CrossingPlan, PlanBuilder};
use crate::ubp::{verify_partition, PartitionError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("expected a {expected} instance, got {got}")]
    WrongFamily { expected: &'static str, got: &'static str },
    #[error("invalid partition: {0}")]
    InvalidPartition(#[from] PartitionError),
    #[error("{0}")]
    BadOrder(String),
    #[error("the orderings put {max} crossings on some edge, more than k = {k}")]
    Exceeds { max: usize, k: usize },
}

fn check_order(order: &[Vertex], layer: &[Vertex], name: &str) -> Result<(), WitnessError> {
    let mut a = order.to_vec();
    a.sort_unstable();
    if a != layer {
        return Err(WitnessError::BadOrder(format!(
            "{name} order is not a permutation of the layer"
        )));
    }
    Ok(())
}

/// Plan for a two-sided gadget: the source's two-layer drawing with the
/// given orders, hubs outside the strip and spokes uncrossed. Only
/// source edges cross.
pub fn witness_two_sided(
    inst: &GadgetInstance,
    x_order: &[Vertex],
    y_order: &[Vertex],
) -> Result<CrossingPlan, WitnessError> {
    let Family::TwoSided { source, x, y, .. } = &inst.source else {
        return Err(WitnessError::WrongFamily {
            expected: "two-sided",
            got: inst.family_name(),
        });
    };
    check_order(x_order, x, "X")?;
    check_order(y_order, y, "Y")?;
    let max = two_layer_max_crossings(source, x_order, y_order);
    if max > inst.k {
        return Err(WitnessError::Exceeds { max, k: inst.k });
    }
    let plan = two_layer_plan(source, x_order, y_order);
    // Original vertices keep their ids, so edge orientations carry over.
    let id: Vec<usize> = source
        .edges()
        .iter()
        .map(|&(u, v)| inst.graph.edge_id(u, v).expect("source edge survives"))
        .collect();
    Ok(CrossingPlan {
        crossings: plan.crossings.iter().map(|&(e, f)| (id[e], id[f])).collect(),
        orders: plan.orders.iter().map(|(e, s)| (id[*e], s.clone())).collect(),
    }
    .canonical())
}

/// 1-planar plan for a basic or domination bin-packing gadget. Bin `i`
/// goes into the region between the spokes at `v_i` and `v_{i+1}`; its
/// items are laid out in index order along the cycle path, and the
/// `t`-th path vertex reaches `u2` through the `t`-th edge of that path.
/// In the domination variant the edge from `u1` to a cycle vertex crosses
/// the path edge in front of it, when there is one.
pub fn witness_ubp(inst: &GadgetInstance, bins: &[Vec<usize>]) -> Result<CrossingPlan, WitnessError> {
    let Family::Ubp {
        instance,
        variant,
        cycle,
        groups,
        ..
    } = &inst.source
    else {
        return Err(WitnessError::WrongFamily {
            expected: "ubp",
            got: inst.family_name(),
        });
    };
    if *variant == UbpVariant::Twincover {
        return Err(WitnessError::WrongFamily {
            expected: "ubp-basic or ubp-domination",
            got: inst.family_name(),
        });
    }
    verify_partition(instance, bins)?;
    let g = &inst.graph;
    let (u1, u2) = (inst.vertex("u1").unwrap(), inst.vertex("u2").unwrap());
    let cap = instance.capacity as usize;
    let len = cycle.len();
    let edge = |a: Vertex, b: Vertex| g.edge_id(a, b).expect("gadget edge");
    let mut b = PlanBuilder::new();
    for (i, bin) in bins.iter().enumerate() {
        let mut items = bin.clone();
        items.sort_unstable();
        // (vertex, item, position in its path)
        let q: Vec<(Vertex, usize, usize)> = items
            .iter()
            .flat_map(|&j| groups[j].iter().enumerate().map(move |(p, &v)| (v, j, p)))
            .collect();
        debug_assert_eq!(q.len(), cap);
        for (t, &(v, _, _)) in q.iter().enumerate() {
            let a = cycle[i * cap + t];
            let c = cycle[(i * cap + t + 1) % len];
            b.cross(edge(a, c), edge(v, u2));
        }
        if *variant == UbpVariant::Domination {
            for t in 1..cap {
                let (v0, j0, p0) = q[t - 1];
                let (v1, j1, p1) = q[t];
                if j0 == j1 && p1 == p0 + 1 {
                    b.cross(edge(u1, cycle[i * cap + t]), edge(v0, v1));
                }
            }
        }
    }
    Ok(b.build())
}
