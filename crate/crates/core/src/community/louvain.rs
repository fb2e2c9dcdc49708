//! Louvain modularity optimization: greedy local moves, then aggregation of
//! communities into super-nodes, repeated until no move improves modularity.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::WeightedGraph;

use super::network::{renumber, Network};
use super::{DetectionConfig, Partition, GAIN_EPSILON};

pub fn louvain(g: &WeightedGraph, cfg: &DetectionConfig) -> Partition {
    let n = g.node_count();
    if g.total_weight() <= 0.0 {
        return Partition::singletons(n);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut net = Network::from_graph(g);
    // original node -> node of the current level
    let mut level_of: Vec<usize> = (0..n).collect();

    for _ in 0..cfg.max_passes {
        let mut membership: Vec<usize> = (0..net.len()).collect();
        if !local_moves(&net, &mut membership, cfg.resolution, &mut rng) {
            break;
        }
        let count = renumber(&mut membership);
        for c in level_of.iter_mut() {
            *c = membership[*c];
        }
        net = net.aggregate(&membership, count);
    }
    Partition::from_membership(level_of).relabeled_by_size()
}

/// Sweeps nodes in shuffled order, moving each to the neighboring community
/// with the largest modularity gain, until a full sweep moves nothing.
/// Returns whether any node moved.
fn local_moves(
    net: &Network,
    membership: &mut [usize],
    resolution: f64,
    rng: &mut ChaCha8Rng,
) -> bool {
    let n = net.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);

    let mut totals: Vec<f64> = vec![0.0; n];
    for (v, &c) in membership.iter().enumerate() {
        totals[c] += net.strength[v];
    }
    let mut link = vec![0.0; n];
    let mut touched: Vec<usize> = Vec::new();
    let scale = resolution / net.two_m;

    let mut moved_any = false;
    loop {
        let mut moved = false;
        for &v in &order {
            let own = membership[v];
            let k = net.strength[v];

            for &(u, w) in &net.adjacency[v] {
                let c = membership[u];
                if link[c] == 0.0 {
                    touched.push(c);
                }
                link[c] += w;
            }

            totals[own] -= k;
            let mut best = own;
            let mut best_gain = link[own] - scale * k * totals[own];
            for &c in &touched {
                let gain = link[c] - scale * k * totals[c];
                if gain > best_gain + GAIN_EPSILON {
                    best = c;
                    best_gain = gain;
                }
            }
            totals[best] += k;
            if best != own {
                membership[v] = best;
                moved = true;
            }

            for &c in &touched {
                link[c] = 0.0;
            }
            touched.clear();
        }
        if !moved {
            break;
        }
        moved_any = true;
    }
    moved_any
}
