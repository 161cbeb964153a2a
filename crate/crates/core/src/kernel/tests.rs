use super::*;
use crate::graph::families::*;

#[test]
fn label_examples() {
    // C4 0-1-2-3 with S = {0, 2}: both 1 and 3 are labeled {0, 2}.
    let pl = pi_labeling(&cycle(4), &[0, 2]).unwrap();
    assert_eq!(pl.labels, vec![(1, [0, 2]), (3, [0, 2])]);
    assert_eq!(pl.distinct, 1);

    let pl = pi_labeling(&complete_bipartite(3, 2), &[3, 4]).unwrap();
    assert_eq!(pl.labels.len(), 3);
    assert_eq!(pl.distinct, 1);

    let pl = pi_labeling(&complete(4), &[1, 2, 3]).unwrap();
    assert_eq!(pl.labels, vec![(0, [1, 2])]);

    assert_eq!(pi_labeling(&cycle(4), &[0]), Err(KernelError::NotACover(1, 2)));
}

#[test]
fn diversity_boundary() {
    let pl = |distinct| PiLabeling {
        cover: vec![0, 1, 2, 3],
        labels: Vec::new(),
        distinct,
    };
    assert!(rule_diversity(&pl(22), 1).is_some());
    assert!(rule_diversity(&pl(21), 1).is_none());
    assert!(rule_diversity(&pl(0), 1).is_none());
    // 3.81 * 4 * sqrt(2) = 21.55..
    assert_eq!(label_bound(4, 1), 22);
}

#[test]
fn deg3_examples() {
    // K_{8,3}: vertices 0..8 on the big side, 8..11 the cover.
    let r = rule_deg3_twins(&complete_bipartite(8, 3), &[8, 9, 10], 1).unwrap();
    match r {
        Some(RuleReject::Deg3Twins { pair, third, twins }) => {
            assert_eq!(pair, [8, 9]);
            assert_eq!(third, 10);
            assert_eq!(twins.len(), 8);
        }
        other => panic!("expected a rejection, got {other:?}"),
    }
    assert!(rule_deg3_twins(&complete_bipartite(7, 3), &[7, 8, 9], 1)
        .unwrap()
        .is_none());
    assert!(rule_deg3_twins(&complete_bipartite(15, 3), &[15, 16, 17], 2)
        .unwrap()
        .is_some());
}

fn hubs_and_twins(hubs: usize, twins: usize) -> Graph {
    let h: Vec<Vertex> = (0..hubs).collect();
    with_twins(&Graph::empty(hubs), &h, twins)
}

#[test]
fn deg2_trimming() {
    // Four cover vertices, 70 twins on {0, 1}: keep 64.
    let g = with_twins(&Graph::empty(4), &[0, 1], 70);
    let g = Graph::from_edges(g.n(), g.edges().iter().copied().chain([(2, 3)])).unwrap();
    let t = rule_deg2_twins(&g, &[0, 1, 2, 3], 1).unwrap();
    assert_eq!(t.deleted.len(), 6);
    assert_eq!(t.deleted, (68..74).collect::<Vec<_>>());
    assert_eq!(t.graph.n(), 68);

    let g = with_twins(&Graph::empty(4), &[0, 1], 64);
    assert!(rule_deg2_twins(&g, &[0, 1, 2, 3], 1).unwrap().deleted.is_empty());

    let g = hubs_and_twins(2, 129);
    let t = rule_deg2_twins(&g, &[0, 1], 2).unwrap();
    assert_eq!(t.graph.n() - 2, 128);
}

#[test]
fn deg2_rule_is_idempotent() {
    let g = hubs_and_twins(2, 100);
    let once = rule_deg2_twins(&g, &[0, 1], 1).unwrap();
    let twice = rule_deg2_twins(&once.graph, &[0, 1], 1).unwrap();
    assert!(twice.deleted.is_empty());
    assert_eq!(twice.graph, once.graph);
}

#[test]
fn vc_pipeline_examples() {
    let r = kernelize_vc(&grid(5, 5), 1).unwrap();
    assert_eq!(r.kernel(), Some(&grid(5, 5)));
    assert!(r.fired.is_empty());

    let g = hubs_and_twins(2, 100);
    let r = kernelize_vc_with_cover(&g, 1, &[0, 1]).unwrap();
    assert_eq!(r.kernel().unwrap().n(), 34);
    assert_eq!(r.deleted.len(), 68);
    assert!(r.within_bounds());

    // The greedy cover of the same graph also takes two twins.
    let r = kernelize_vc(&g, 1).unwrap();
    assert_eq!(r.cover.len(), 4);
    assert_eq!(r.kernel().unwrap().n(), 4 + 64);

    // K_{11,3}: the greedy cover holds three big-side vertices, eight
    // remain and share all three neighbors. Pendant paths are stripped.
    let mut edges = complete_bipartite(11, 3).edges().to_vec();
    edges.extend([(0, 14), (14, 15), (11, 16)]);
    let g = Graph::from_edges(17, edges).unwrap();
    let r = kernelize_vc(&g, 1).unwrap();
    assert!(matches!(
        r.verdict,
        KernelVerdict::NotKPlanar {
            reason: RuleReject::Deg3Twins { .. }
        }
    ));
    assert_eq!(r.deleted.len(), 3);
}

#[test]
fn twin_cover_examples() {
    assert_eq!(twin_vertex_cover(&star(9), 3).unwrap(), TwinCover::Cover(vec![0]));
    assert!(matches!(
        twin_vertex_cover(&complete_bipartite(3, 3), 3).unwrap(),
        TwinCover::Biclique { .. }
    ));
    match twin_vertex_cover(&complete_bipartite(3, 3), 4).unwrap() {
        TwinCover::Cover(c) => assert_eq!(c.len(), 3),
        other => panic!("{other:?}"),
    }
}

#[test]
fn nd_pipeline_examples() {
    assert_eq!(biclique_threshold(1), 16);
    assert_eq!(biclique_threshold(2), 16);
    assert_eq!(biclique_threshold(3), 24);
    let r = kernelize_nd(&complete_bipartite(16, 16), 1).unwrap();
    assert!(matches!(
        r.verdict,
        KernelVerdict::NotKPlanar {
            reason: RuleReject::Biclique { .. }
        }
    ));

    let mut g = Graph::empty(0);
    for _ in 0..4 {
        g = disjoint_union(&g, &complete(3));
    }
    let r = kernelize_nd(&g, 1).unwrap();
    assert_eq!(r.cover.len(), 12);
    assert_eq!(r.kernel(), Some(&g));

    let r = kernelize_nd(&Graph::empty(5), 2).unwrap();
    assert_eq!(r.kernel().unwrap().n(), 0);
}
