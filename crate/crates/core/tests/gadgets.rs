mod common;

use common::*;
use kplanar::gadgets::*;
use kplanar::graph::families::*;
use kplanar::oracle::two_layer_lcr;
use kplanar::ubp::{solve_ubp, UbpInstance};
use kplanar::witness::{crossings_per_edge, verify};
use rand::Rng;

#[test]
fn ubp_witnesses_verify_on_random_instances() {
    let mut r = rng(31);
    for _ in 0..25 {
        let b = r.gen_range(3..=4);
        let cap = r.gen_range(1..=5);
        let inst = random_ubp(b, cap, cap, &mut r);
        let bins = solve_ubp(&inst).expect("built solvable");
        for variant in [UbpVariant::Basic, UbpVariant::Domination] {
            let g = gen_ubp(&inst, variant).unwrap();
            assert_eq!(g.check_invariants(), Ok(()));
            let plan = witness_ubp(&g, &bins).unwrap();
            assert_eq!(verify(&g.graph, 1, &plan), Ok(()), "{inst:?} {variant}");
            let counts = crossings_per_edge(&g.graph, &plan).unwrap();
            let Family::Ubp { cycle, .. } = &g.source else { unreachable!() };
            for i in 0..cycle.len() {
                let e = g.graph.edge_id(cycle[i], cycle[(i + 1) % cycle.len()]).unwrap();
                assert_eq!(counts.counts[e], 1);
            }
        }
    }
}

#[test]
fn two_sided_witnesses_on_random_trees() {
    let mut r = rng(12);
    for _ in 0..40 {
        let (t, x, y) = random_layered_tree(r.gen_range(2..=7), &mut r);
        let best = two_layer_lcr(&t, &x, &y).unwrap();
        let k = best.lcr.max(1);
        let inst = gen_two_sided(&t, &x, &y, k).unwrap();
        assert_eq!(inst.check_invariants(), Ok(()));
        assert!(certify(&inst).passed);
        let plan = witness_two_sided(&inst, &best.x_order, &best.y_order).unwrap();
        assert_eq!(verify(&inst.graph, k, &plan), Ok(()));
        if best.lcr >= 2 {
            let tight = gen_two_sided(&t, &x, &y, best.lcr - 1).unwrap();
            assert!(matches!(
                witness_two_sided(&tight, &best.x_order, &best.y_order),
                Err(WitnessError::Exceeds { .. })
            ));
        }
    }
}

#[test]
fn certificates_hold_across_seeds() {
    let mut r = rng(2);
    for _ in 0..15 {
        let b = r.gen_range(3..=5);
        let inst = random_ubp(b, r.gen_range(1..=6), 6, &mut r);
        for variant in [UbpVariant::Basic, UbpVariant::Domination] {
            let g = gen_ubp(&inst, variant).unwrap();
            let cert = certify(&g);
            assert!(cert.passed, "{cert:?}");
        }
        let tc = random_ubp(b, 9, 2, &mut r);
        let cert = certify(&gen_ubp(&tc, UbpVariant::Twincover).unwrap());
        assert!(cert.passed, "{cert:?}");
    }
}

#[test]
fn bandwidth_and_gap_instances_are_trees() {
    let mut r = rng(6);
    for _ in 0..10 {
        let tree = random_tree(r.gen_range(2..=8), &mut r);
        let b = r.gen_range(1..=3);
        let ell = 2 * b * b + 2 * r.gen_range(0..3);
        let inst = bandwidth_instance(&tree, b, ell, None).unwrap();
        assert!(certify(&inst).passed);
        let t = b * b + 2 + r.gen_range(0..3);
        let gap = gen_gap_instance(&tree, b, t, 2).unwrap();
        assert!(certify(&gap).passed);
        assert!(gap.graph.component_count() == 1);
    }
}

#[test]
fn documents_round_trip() {
    let mut r = rng(40);
    let inst = random_ubp(3, 4, 4, &mut r);
    for g in [
        gen_ubp(&inst, UbpVariant::Basic).unwrap(),
        bandwidth_instance(&path(4), 2, 10, None).unwrap(),
    ] {
        let text = serde_json::to_string(&g).unwrap();
        let back: GadgetInstance = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
        let cert = certify(&g);
        let text = serde_json::to_string(&cert).unwrap();
        let back: StructuralCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cert);
    }
}

#[test]
fn padding_keeps_solvability() {
    let mut r = rng(77);
    for _ in 0..200 {
        let b = r.gen_range(1..=4);
        let cap: u64 = r.gen_range(3..=5);
        let s = r.gen_range(b..=2 * b + 2);
        let mut items: Vec<u64> = (0..s).map(|_| r.gen_range(1..=cap)).collect();
        let sum: u64 = items.iter().sum();
        let want = b as u64 * cap;
        if sum > want {
            continue;
        }
        items.push(want - sum);
        items.retain(|&x| x > 0);
        if items.iter().any(|&x| x > cap) {
            continue;
        }
        let inst = UbpInstance::new(items, cap, b).unwrap();
        let padded = pad_ubp(&inst).unwrap();
        assert_eq!(solve_ubp(&inst).is_some(), solve_ubp(&padded).is_some(), "{inst:?}");
    }
}
