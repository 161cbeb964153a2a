mod common;

use common::*;
use kplanar::graph::families::*;
use kplanar::graph::Graph;
use kplanar::oracle::*;
use kplanar::transforms::subdivide;
use kplanar::witness::verify;
use proptest::prelude::*;
use rand::Rng;

fn answer(g: &Graph, k: usize, cfg: &SearchConfig) -> Answer {
    let v = decide_k_planar(g, k, cfg).unwrap();
    if let Some(plan) = &v.witness {
        assert_eq!(verify(g, k, plan), Ok(()));
    }
    v.answer
}

#[test]
fn subdivided_route_agrees_with_brute_force() {
    let mut r = rng(11);
    let cfg = SearchConfig {
        mode: Mode::Subdivide,
        ..SearchConfig::search_only()
    };
    for _ in 0..300 {
        let n = r.gen_range(2..=7);
        let max_m = (n * (n - 1) / 2).min(9);
        let m = r.gen_range(n - 1..=max_m);
        let g = random_small(n, m, &mut r);
        for k in [1, 2] {
            let direct = lcr_direct_small(&g, k, 10_000_000).unwrap().answer;
            assert_eq!(answer(&g, k, &cfg), direct, "{g:?} k={k}");
        }
    }
}

#[test]
fn landmarks() {
    let cfg = SearchConfig::default();
    assert_eq!(answer(&complete(4), 0, &cfg), Answer::Yes);
    assert_eq!(answer(&complete(5), 0, &cfg), Answer::No);
    assert_eq!(answer(&complete(5), 1, &cfg), Answer::Yes);
    assert_eq!(answer(&complete(6), 1, &cfg), Answer::Yes);
    assert_eq!(answer(&complete_bipartite(3, 3), 1, &cfg), Answer::Yes);
    assert_eq!(answer(&petersen(), 1, &cfg), Answer::Yes);
    assert_eq!(answer(&complete_bipartite(3, 6), 1, &cfg), Answer::Yes);

    let only = SearchConfig::search_only();
    let v = decide_k_planar(&complete(7), 1, &only).unwrap();
    assert_eq!(v.answer, Answer::No);
    assert_eq!(v.reason, Some(NoReason::ExhaustedSearch));
    assert_eq!(answer(&complete_bipartite(3, 7), 1, &only), Answer::No);
}

#[test]
fn subdivided_landmarks() {
    let cfg = SearchConfig {
        mode: Mode::Subdivide,
        ..SearchConfig::search_only()
    };
    assert_eq!(answer(&complete(5), 2, &cfg), Answer::Yes);
    assert_eq!(answer(&complete(6), 2, &cfg), Answer::Yes);
    assert_eq!(answer(&complete_bipartite(3, 3), 3, &cfg), Answer::Yes);
}

#[test]
fn deleting_edges_keeps_yes() {
    let mut r = rng(5);
    let cfg = SearchConfig::with_budget(500_000);
    let mut checked = 0;
    for _ in 0..60 {
        let n = r.gen_range(6..=8);
        let m = r.gen_range(n + 4..=(3 * n).min(n * (n - 1) / 2));
        let g = random_small(n, m, &mut r);
        if answer(&g, 1, &cfg) != Answer::Yes {
            continue;
        }
        checked += 1;
        let drop = r.gen_range(0..g.m());
        let keep: Vec<bool> = (0..g.m()).map(|e| e != drop).collect();
        let h = g.edge_subgraph(&keep);
        assert_eq!(answer(&h, 1, &cfg), Answer::Yes, "{g:?} minus edge {drop}");
    }
    assert!(checked > 20);
}

#[test]
fn parallel_and_sequential_agree() {
    let seq = SearchConfig::with_budget(2_000_000);
    let par = SearchConfig { parallel: true, ..seq };
    let mut graphs = vec![complete(6), complete(7), complete_bipartite(3, 6), petersen()];
    let mut r = rng(9);
    graphs.extend((0..15).map(|_| random_small(8, r.gen_range(14..=22), &mut r)));
    for g in graphs {
        let a = answer(&g, 1, &seq);
        let b = answer(&g, 1, &par);
        if a != Answer::Inconclusive && b != Answer::Inconclusive {
            assert_eq!(a, b, "{g:?}");
        }
    }
}

#[test]
fn lower_bounds_never_reject_yes_instances() {
    let mut r = rng(21);
    let cfg = SearchConfig {
        budget: 300_000,
        ..SearchConfig::search_only()
    };
    for _ in 0..80 {
        let n = r.gen_range(5..=9);
        let m = r.gen_range(n..=(n * (n - 1) / 2));
        let g = random_small(n, m, &mut r);
        if answer(&g, 1, &cfg) == Answer::Yes {
            assert_eq!(lower_bound_reject(&g, 1), None, "{g:?}");
        }
    }
}

#[test]
fn one_planar_witnesses_lift_through_subdivision() {
    let g = complete(6);
    let map = subdivide(&g, 2).unwrap();
    let v = decide_one_planar(&map.graph, &SearchConfig::search_only());
    assert_eq!(v.answer, Answer::Yes);
    let plan = kplanar::witness::project_subdivided(&map, v.witness.as_ref().unwrap()).unwrap();
    assert_eq!(verify(&g, 2, &plan), Ok(()));
}

fn small_graph() -> impl Strategy<Value = Graph> {
    (3usize..=8, any::<u64>()).prop_flat_map(|(n, seed)| {
        let max_m = n * (n - 1) / 2;
        (Just(n), (n - 1)..=max_m.min(20), Just(seed))
    })
    .prop_map(|(n, m, seed)| random_small(n, m, &mut rng(seed)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn yes_answers_carry_verified_plans(g in small_graph(), k in 1usize..=2) {
        let cfg = SearchConfig::with_budget(200_000);
        let v = decide_k_planar(&g, k, &cfg).unwrap();
        if v.answer == Answer::Yes {
            prop_assert_eq!(verify(&g, k, v.witness.as_ref().unwrap()), Ok(()));
        }
        if v.answer == Answer::No {
            prop_assert!(v.reason.is_some());
        }
    }

    #[test]
    fn planar_graphs_are_zero_planar(g in small_graph()) {
        let v = decide_k_planar(&g, 0, &SearchConfig::default()).unwrap();
        prop_assert_eq!(v.answer == Answer::Yes, kplanar::planarity::is_planar(&g));
    }
}
