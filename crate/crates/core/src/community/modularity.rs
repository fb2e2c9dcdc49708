use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

use super::Partition;

/// Weighted modularity with resolution `gamma`:
///
/// `Q = sum_c [ in_c / m - gamma * (tot_c / 2m)^2 ]`
///
/// where `m` is the total edge weight, `in_c` the weight of edges inside
/// community `c` and `tot_c` the summed strength of its members.
pub fn modularity(g: &WeightedGraph, p: &Partition, resolution: f64) -> Result<f64> {
    p.ensure_matches(g)?;
    let m = g.total_weight();
    if g.node_count() == 0 || m <= 0.0 {
        return Err(Error::EmptyGraph);
    }
    let mut inside = vec![0.0; p.community_count()];
    let mut total = vec![0.0; p.community_count()];
    for (u, v, w) in g.edges() {
        let (cu, cv) = (p.community_of(u), p.community_of(v));
        if cu == cv {
            inside[cu] += w;
        }
        total[cu] += w;
        total[cv] += w;
    }
    let two_m = 2.0 * m;
    Ok(inside
        .iter()
        .zip(&total)
        .map(|(&i, &t)| i / m - resolution * (t / two_m).powi(2))
        .sum())
}
