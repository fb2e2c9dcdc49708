mod common;

use csnet_core::backbone::{disparity_filter, FilterParams, KeepRule};
use csnet_core::centrality::{betweenness, rank, weighted_degree, PathMode};
use csnet_core::community::{leiden, louvain, modularity, DetectionConfig, Partition};
use csnet_core::export::{read_edge_list, write_edge_list, GraphBundle};
use csnet_core::ingest::{build_cooccurrence, label_frequency, PaperRecord};
use csnet_core::GraphBuilder;
use proptest::prelude::*;

use common::oracles::{
    best_partition, blocks, brute_force_betweenness, pairwise_modularity, two_triangles, EdgeList,
};
use common::{edge_lists, label, to_graph};

#[test]
fn oracle_four_cycle() {
    let cycle = EdgeList {
        n: 4,
        edges: vec![(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)],
    };
    assert_eq!(brute_force_betweenness(&cycle, false), vec![0.5; 4]);
    let g = to_graph(&cycle);
    assert_eq!(
        betweenness(&g, PathMode::Unweighted, false).as_slice(),
        &[0.5; 4]
    );
}

#[test]
fn exhaustive_optimum_of_two_triangles() {
    let tt = two_triangles();
    let (best, q) = best_partition(&tt, 1.0);
    assert_eq!(blocks(&best), vec![vec![0, 1, 2], vec![3, 4, 5]]);
    assert!((q - 5.0 / 14.0).abs() < 1e-12);
    assert!((q - 0.35714).abs() < 1e-5);

    let g = to_graph(&tt);
    for seed in 0..20 {
        let cfg = DetectionConfig::with_seed(seed);
        for p in [louvain(&g, &cfg), leiden(&g, &cfg)] {
            assert_eq!(blocks(p.membership()), blocks(&best));
            assert!((modularity(&g, &p, 1.0).unwrap() - q).abs() < 1e-12);
        }
    }
}

#[test]
fn exhaustive_optimum_of_k4_is_one_community() {
    let k4 = EdgeList {
        n: 4,
        edges: vec![
            (0, 1, 1.0),
            (0, 2, 1.0),
            (0, 3, 1.0),
            (1, 2, 1.0),
            (1, 3, 1.0),
            (2, 3, 1.0),
        ],
    };
    let (best, q) = best_partition(&k4, 1.0);
    assert_eq!(blocks(&best), vec![vec![0, 1, 2, 3]]);
    assert!(q.abs() < 1e-12);
    let g = to_graph(&k4);
    assert_eq!(
        louvain(&g, &DetectionConfig::default()).community_count(),
        1
    );
    assert_eq!(leiden(&g, &DetectionConfig::default()).community_count(), 1);
}

fn record(labels: &[String]) -> PaperRecord {
    PaperRecord {
        conference: "C".into(),
        title: "t".into(),
        labels: labels.to_vec(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn betweenness_matches_enumeration(g in edge_lists(1, 7)) {
        let graph = to_graph(&g);
        for (mode, weighted) in [(PathMode::Unweighted, false), (PathMode::InverseWeight, true)] {
            let expected = brute_force_betweenness(&g, weighted);
            let got = betweenness(&graph, mode, false);
            for (e, a) in expected.iter().zip(got.as_slice()) {
                prop_assert!((e - a).abs() < 1e-9, "{mode}: expected {e}, got {a}");
            }
        }
    }

    #[test]
    fn leaves_have_zero_betweenness(g in edge_lists(2, 12)) {
        let graph = to_graph(&g);
        let b = betweenness(&graph, PathMode::Unweighted, false);
        for id in graph.node_ids() {
            if graph.degree(id).unwrap() == 1 {
                prop_assert_eq!(b.get(id), Some(0.0));
            }
            prop_assert!(b.get(id).unwrap() >= 0.0);
        }
    }

    #[test]
    fn scaling_weights_keeps_rankings(g in edge_lists(3, 10), c in prop_oneof![Just(0.5), Just(2.0), Just(4.0)]) {
        let graph = to_graph(&g);
        let scaled = to_graph(&EdgeList {
            n: g.n,
            edges: g.edges.iter().map(|&(u, v, w)| (u, v, w * c)).collect(),
        });
        for mode in [PathMode::Unweighted, PathMode::InverseWeight] {
            let a = rank(&graph, &betweenness(&graph, mode, false), g.n).unwrap();
            let b = rank(&scaled, &betweenness(&scaled, mode, false), g.n).unwrap();
            let la: Vec<_> = a.iter().map(|x| &x.0).collect();
            let lb: Vec<_> = b.iter().map(|x| &x.0).collect();
            prop_assert_eq!(la, lb);
        }
        let wa = weighted_degree(&graph);
        let wb = weighted_degree(&scaled);
        for (x, y) in wa.as_slice().iter().zip(wb.as_slice()) {
            prop_assert!((x * c - y).abs() < 1e-12);
        }
    }

    #[test]
    fn strengths_sum_to_twice_total_weight(g in edge_lists(1, 15)) {
        let graph = to_graph(&g);
        let total: f64 = weighted_degree(&graph).as_slice().iter().sum();
        prop_assert!((total - 2.0 * g.total_weight()).abs() < 1e-9);
        let all: Vec<_> = graph.node_ids().collect();
        prop_assert_eq!(&graph.induced_subgraph(&all).unwrap(), &graph);
    }

    #[test]
    fn density_grows_with_edges(g in edge_lists(2, 10)) {
        let mut prev = -1.0;
        for k in 0..=g.edges.len() {
            let d = to_graph(&EdgeList { n: g.n, edges: g.edges[..k].to_vec() }).density().unwrap();
            prop_assert!(d > prev && (0.0..=1.0).contains(&d));
            prev = d;
        }
    }

    #[test]
    fn modularity_forms_agree(
        g in edge_lists(2, 9).prop_filter("needs an edge", |g| !g.edges.is_empty()),
        raw in proptest::collection::vec(0usize..4, 9),
        gamma in 0.25f64..2.0,
    ) {
        let membership: Vec<usize> = raw[..g.n].to_vec();
        let graph = to_graph(&g);
        let p = Partition::from_membership(membership.clone());
        let q = modularity(&graph, &p, gamma).unwrap();
        let oracle = pairwise_modularity(&g, &membership, gamma);
        prop_assert!((q - oracle).abs() < 1e-9, "{} vs {}", q, oracle);
    }

    #[test]
    fn filter_is_monotone_in_alpha(g in edge_lists(2, 12), a1 in 0.01f64..0.99, a2 in 0.01f64..0.99) {
        let (lo, hi) = if a1 <= a2 { (a1, a2) } else { (a2, a1) };
        let graph = to_graph(&g);
        for rule in [KeepRule::EitherEndpoint, KeepRule::BothEndpoints] {
            let small = disparity_filter(&graph, &FilterParams::new(lo, rule).unwrap());
            let large = disparity_filter(&graph, &FilterParams::new(hi, rule).unwrap());
            prop_assert_eq!(small.node_count(), graph.node_count());
            for (u, v, w) in small.edges() {
                prop_assert_eq!(large.weight(u, v), Some(w));
                prop_assert_eq!(graph.weight(u, v), Some(w));
            }
        }
    }

    #[test]
    fn cooccurrence_matches_recount(
        papers in proptest::collection::vec(proptest::collection::btree_set(0usize..8, 1..5), 1..25)
    ) {
        let records: Vec<PaperRecord> = papers
            .iter()
            .map(|s| record(&s.iter().map(|&i| label(i)).collect::<Vec<_>>()))
            .collect();
        let g = build_cooccurrence(&records).unwrap();
        let distinct: std::collections::BTreeSet<usize> = papers.iter().flatten().copied().collect();
        prop_assert_eq!(g.node_count(), distinct.len());
        for &a in &distinct {
            for &b in &distinct {
                if a >= b { continue; }
                let count = papers.iter().filter(|s| s.contains(&a) && s.contains(&b)).count();
                let (u, v) = (g.node_id(&label(a)).unwrap(), g.node_id(&label(b)).unwrap());
                prop_assert_eq!(g.weight(u, v).unwrap_or(0.0), count as f64);
            }
        }
        let pairs: usize = papers.iter().map(|s| s.len() * (s.len() - 1) / 2).sum();
        prop_assert_eq!(g.total_weight(), pairs as f64);
        let freq = label_frequency(&records);
        let total: usize = freq.iter().map(|(_, c)| c).sum();
        prop_assert!(total >= records.len());
    }

    #[test]
    fn edge_list_round_trips(
        g in edge_lists(1, 8),
        names in proptest::collection::vec("[A-Za-z ,\"/()-]{1,12}", 8),
        scale in prop_oneof![Just(1.0), Just(0.1), Just(1.0 / 3.0)],
    ) {
        let mut b = GraphBuilder::new();
        let ids: Vec<_> = (0..g.n)
            .map(|i| b.add_node(&format!("{}#{i}", names[i])).unwrap())
            .collect();
        for &(u, v, w) in &g.edges {
            b.increment_edge(ids[u], ids[v], w * scale).unwrap();
        }
        let graph = b.build();
        let mut first = Vec::new();
        write_edge_list(&GraphBundle::new(&graph), &mut first).unwrap();
        let back = read_edge_list(first.as_slice()).unwrap();
        prop_assert_eq!(&back, &graph);
        let mut second = Vec::new();
        write_edge_list(&GraphBundle::new(&back), &mut second).unwrap();
        prop_assert_eq!(first, second);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn detection_invariants(g in edge_lists(2, 24).prop_filter("needs an edge", |g| !g.edges.is_empty()), seed in 0u64..1000) {
        let graph = to_graph(&g);
        let cfg = DetectionConfig::with_seed(seed);
        let singleton_q = modularity(&graph, &Partition::singletons(g.n), 1.0).unwrap();
        for (name, p) in [("louvain", louvain(&graph, &cfg)), ("leiden", leiden(&graph, &cfg))] {
            prop_assert_eq!(p.len(), g.n);
            let sizes = p.sizes();
            prop_assert!(sizes.iter().all(|&s| s > 0));
            prop_assert!(sizes.windows(2).all(|w| w[0] >= w[1]), "{} not sorted by size", name);
            prop_assert_eq!(sizes.iter().sum::<usize>(), g.n);
            let q = modularity(&graph, &p, 1.0).unwrap();
            prop_assert!(q >= singleton_q - 1e-12, "{}: {} < {}", name, q, singleton_q);
        }
        let p = leiden(&graph, &cfg);
        for members in p.members() {
            prop_assert!(graph.induced_subgraph(&members).unwrap().is_connected());
        }
        prop_assert_eq!(leiden(&graph, &cfg), p);
        prop_assert_eq!(louvain(&graph, &cfg), louvain(&graph, &cfg));
    }

    #[test]
    fn detection_never_beats_exhaustive_optimum(g in edge_lists(2, 7).prop_filter("needs an edge", |g| !g.edges.is_empty())) {
        let (_, best) = best_partition(&g, 1.0);
        let graph = to_graph(&g);
        let cfg = DetectionConfig::default();
        for p in [louvain(&graph, &cfg), leiden(&graph, &cfg)] {
            let q = modularity(&graph, &p, 1.0).unwrap();
            prop_assert!(q <= best + 1e-9);
        }
    }
}
