//! Leiden community detection.
//!
//! Each level runs three phases:
//! - fast local moving, driven by a queue of nodes whose neighborhood changed
//! - refinement: inside every community, singletons merge into well-connected
//!   sub-communities they have a positive modularity gain with (chosen
//!   uniformly at random among such targets)
//! - aggregation on the refined partition, with the unrefined partition as the
//!   starting assignment of the aggregate nodes
//!
//! The loop ends once local moving leaves every aggregate node alone in its
//! community. Refined communities are connected by construction, so the
//! returned communities are connected.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{NodeId, WeightedGraph};

use super::network::{renumber, Network};
use super::{DetectionConfig, Partition, GAIN_EPSILON};

pub fn leiden(g: &WeightedGraph, cfg: &DetectionConfig) -> Partition {
    let n = g.node_count();
    if g.total_weight() <= 0.0 {
        return Partition::singletons(n);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut net = Network::from_graph(g);
    let mut level_of: Vec<usize> = (0..n).collect();
    let mut membership: Vec<usize> = (0..n).collect();

    for _ in 0..cfg.max_passes {
        move_nodes_fast(&net, &mut membership, cfg.resolution, &mut rng);
        let count = renumber(&mut membership);
        if count == net.len() {
            break;
        }
        let mut refined = refine(&net, &membership, cfg.resolution, &mut rng);
        let refined_count = renumber(&mut refined);
        if refined_count == net.len() {
            // nothing left to aggregate
            break;
        }
        let mut next_membership = vec![0; refined_count];
        for (v, &r) in refined.iter().enumerate() {
            next_membership[r] = membership[v];
        }
        for c in level_of.iter_mut() {
            *c = refined[*c];
        }
        net = net.aggregate(&refined, refined_count);
        membership = next_membership;
    }

    let flat: Vec<usize> = level_of.iter().map(|&v| membership[v]).collect();
    split_disconnected(g, Partition::from_membership(flat)).relabeled_by_size()
}

fn move_nodes_fast(net: &Network, membership: &mut [usize], resolution: f64, rng: &mut ChaCha8Rng) {
    let n = net.len();
    let scale = resolution / net.two_m;
    let mut totals = vec![0.0; n];
    let mut sizes = vec![0usize; n];
    for (v, &c) in membership.iter().enumerate() {
        totals[c] += net.strength[v];
        sizes[c] += 1;
    }
    let mut empty: Vec<usize> = (0..n).filter(|&c| sizes[c] == 0).collect();

    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut queue: VecDeque<usize> = order.into_iter().collect();
    let mut queued = vec![true; n];

    let mut link = vec![0.0; n];
    let mut touched = Vec::new();

    while let Some(v) = queue.pop_front() {
        queued[v] = false;
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
        sizes[own] -= 1;
        if sizes[own] == 0 {
            empty.push(own);
        }

        let mut best = own;
        let mut best_gain = link[own] - scale * k * totals[own];
        for &c in &touched {
            let gain = link[c] - scale * k * totals[c];
            if gain > best_gain + GAIN_EPSILON {
                best = c;
                best_gain = gain;
            }
        }
        if best_gain < -GAIN_EPSILON {
            // an empty community has gain 0
            if let Some(&c) = empty.last() {
                best = c;
            }
        }

        if sizes[best] == 0 {
            let pos = empty
                .iter()
                .rposition(|&c| c == best)
                .expect("empty community listed");
            empty.swap_remove(pos);
        }
        totals[best] += k;
        sizes[best] += 1;
        membership[v] = best;

        if best != own {
            for &(u, _) in &net.adjacency[v] {
                if !queued[u] && membership[u] != best {
                    queued[u] = true;
                    queue.push_back(u);
                }
            }
        }

        for &c in &touched {
            link[c] = 0.0;
        }
        touched.clear();
    }
}

/// Refined partition: every community of `membership` is split into
/// connected, well-connected subsets.
fn refine(
    net: &Network,
    membership: &[usize],
    resolution: f64,
    rng: &mut ChaCha8Rng,
) -> Vec<usize> {
    let n = net.len();
    let scale = resolution / net.two_m;
    let count = membership.iter().max().map_or(0, |&c| c + 1);

    let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
    let mut community_total = vec![0.0; count];
    for (v, &c) in membership.iter().enumerate() {
        members[c].push(v);
        community_total[c] += net.strength[v];
    }

    // weight from each node to the rest of its own community
    let external: Vec<f64> = (0..n)
        .map(|v| {
            net.adjacency[v]
                .iter()
                .filter(|&&(u, _)| membership[u] == membership[v])
                .map(|&(_, w)| w)
                .sum()
        })
        .collect();

    let mut refined: Vec<usize> = (0..n).collect();
    let mut ref_total: Vec<f64> = net.strength.clone();
    let mut ref_external = external.clone();
    let mut ref_size = vec![1usize; n];

    let mut link = vec![0.0; n];
    let mut touched = Vec::new();
    let mut candidates = Vec::new();

    for (c, nodes) in members.iter_mut().enumerate() {
        if nodes.len() < 2 {
            continue;
        }
        let total_c = community_total[c];
        nodes.shuffle(rng);
        for &v in nodes.iter() {
            let k = net.strength[v];
            if ref_size[refined[v]] != 1 {
                continue;
            }
            if external[v] < scale * k * (total_c - k) {
                continue;
            }

            for &(u, w) in &net.adjacency[v] {
                if membership[u] != c {
                    continue;
                }
                let r = refined[u];
                if link[r] == 0.0 {
                    touched.push(r);
                }
                link[r] += w;
            }

            candidates.clear();
            let own = refined[v];
            for &r in &touched {
                if r == own {
                    continue;
                }
                let well_connected =
                    ref_external[r] >= scale * ref_total[r] * (total_c - ref_total[r]);
                let gain = link[r] - scale * k * ref_total[r];
                if well_connected && gain > GAIN_EPSILON {
                    candidates.push(r);
                }
            }

            if !candidates.is_empty() {
                let target = candidates[rng.gen_range(0..candidates.len())];
                ref_external[target] += external[v] - 2.0 * link[target];
                ref_total[target] += k;
                ref_size[target] += 1;
                ref_total[own] = 0.0;
                ref_external[own] = 0.0;
                ref_size[own] = 0;
                refined[v] = target;
            }

            for &r in &touched {
                link[r] = 0.0;
            }
            touched.clear();
        }
    }
    refined
}

/// Splits any community whose induced subgraph is disconnected into its
/// components. Only reachable when `max_passes` cuts the iteration short.
fn split_disconnected(g: &WeightedGraph, p: Partition) -> Partition {
    let mut next = 0;
    let mut raw = vec![0; g.node_count()];
    for members in p.members() {
        let sub = g.induced_subgraph(&members).expect("members of g");
        for component in sub.components() {
            for local in component {
                let original: NodeId = members[local.index()];
                raw[original.index()] = next;
            }
            next += 1;
        }
    }
    Partition::from_membership(raw)
}
