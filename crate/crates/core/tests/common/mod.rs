#![allow(dead_code)]

pub mod oracles;

use csnet_core::{GraphBuilder, WeightedGraph};
use proptest::prelude::*;

use oracles::EdgeList;

pub fn label(i: usize) -> String {
    format!("n{i}")
}

pub fn to_graph(g: &EdgeList) -> WeightedGraph {
    let mut b = GraphBuilder::new();
    let ids: Vec<_> = (0..g.n).map(|i| b.add_node(&label(i)).unwrap()).collect();
    for &(u, v, w) in &g.edges {
        b.increment_edge(ids[u], ids[v], w).unwrap();
    }
    b.build()
}

/// Random simple graphs on `min_n..=max_n` nodes with integer weights in `1..=5`.
pub fn edge_lists(min_n: usize, max_n: usize) -> impl Strategy<Value = EdgeList> {
    (min_n..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let k = pairs.len();
        proptest::collection::vec(prop_oneof![2 => Just(0u8), 3 => 1u8..=5], k).prop_map(
            move |weights| EdgeList {
                n,
                edges: pairs
                    .iter()
                    .zip(weights)
                    .filter(|&(_, w)| w > 0)
                    .map(|(&(u, v), w)| (u, v, f64::from(w)))
                    .collect(),
            },
        )
    })
}
