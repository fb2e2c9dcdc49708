use crate::graph::WeightedGraph;

/// Compact weighted network used inside the optimizers. Aggregated levels
/// carry the weight of collapsed internal edges as self-loops.
#[derive(Debug, Clone)]
pub(crate) struct Network {
    /// Neighbors sorted by index; self-loops are kept out of this list.
    pub adjacency: Vec<Vec<(usize, f64)>>,
    /// Weight of the edges folded inside each node, each edge counted once.
    pub self_loops: Vec<f64>,
    /// Strength of each node, self-loops counted twice.
    pub strength: Vec<f64>,
    /// Twice the total edge weight.
    pub two_m: f64,
}

impl Network {
    pub fn from_graph(g: &WeightedGraph) -> Self {
        let adjacency: Vec<Vec<(usize, f64)>> = g
            .node_ids()
            .map(|u| {
                g.neighbors(u)
                    .expect("node of g")
                    .iter()
                    .map(|&(v, w)| (v.index(), w))
                    .collect()
            })
            .collect();
        let n = adjacency.len();
        Self::from_parts(adjacency, vec![0.0; n])
    }

    fn from_parts(adjacency: Vec<Vec<(usize, f64)>>, self_loops: Vec<f64>) -> Self {
        let strength: Vec<f64> = adjacency
            .iter()
            .zip(&self_loops)
            .map(|(nbrs, &s)| nbrs.iter().map(|&(_, w)| w).sum::<f64>() + 2.0 * s)
            .collect();
        let two_m = strength.iter().sum();
        Network {
            adjacency,
            self_loops,
            strength,
            two_m,
        }
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    /// Collapses every community of `membership` (dense ids `0..count`) into one node.
    pub fn aggregate(&self, membership: &[usize], count: usize) -> Network {
        let mut self_loops = vec![0.0; count];
        let mut sums: Vec<Vec<(usize, f64)>> = vec![Vec::new(); count];
        let mut slot = vec![usize::MAX; count];
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
        for (v, &c) in membership.iter().enumerate() {
            members[c].push(v);
        }
        for (c, nodes) in members.iter().enumerate() {
            let row = &mut sums[c];
            for &v in nodes {
                self_loops[c] += self.self_loops[v];
                for &(u, w) in &self.adjacency[v] {
                    let d = membership[u];
                    if d == c {
                        // seen from both endpoints
                        self_loops[c] += 0.5 * w;
                    } else if slot[d] == usize::MAX {
                        slot[d] = row.len();
                        row.push((d, w));
                    } else {
                        row[slot[d]].1 += w;
                    }
                }
            }
            for &(d, _) in row.iter() {
                slot[d] = usize::MAX;
            }
            row.sort_by_key(|&(d, _)| d);
        }
        Network::from_parts(sums, self_loops)
    }
}

/// Renumbers `membership` densely in order of first use; returns the count.
pub(crate) fn renumber(membership: &mut [usize]) -> usize {
    let size = membership.iter().max().map_or(0, |&c| c + 1);
    let mut remap = vec![usize::MAX; size];
    let mut next = 0;
    for c in membership.iter_mut() {
        if remap[*c] == usize::MAX {
            remap[*c] = next;
            next += 1;
        }
        *c = remap[*c];
    }
    next
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;

    #[test]
    fn aggregation_preserves_total_weight() {
        let mut b = GraphBuilder::new();
        let ids: Vec<_> = (0..4)
            .map(|i| b.add_node(&i.to_string()).unwrap())
            .collect();
        for (u, v, w) in [(0, 1, 2.0), (1, 2, 1.0), (2, 3, 3.0), (0, 3, 0.5)] {
            b.increment_edge(ids[u], ids[v], w).unwrap();
        }
        let net = Network::from_graph(&b.build());
        assert_eq!(net.two_m, 13.0);
        let agg = net.aggregate(&[0, 0, 1, 1], 2);
        assert_eq!(agg.len(), 2);
        assert_eq!(agg.self_loops, vec![2.0, 3.0]);
        assert_eq!(agg.adjacency[0], vec![(1, 1.5)]);
        assert_eq!(agg.two_m, 13.0);
        assert_eq!(agg.strength, vec![5.5, 7.5]);
        let top = agg.aggregate(&[0, 0], 1);
        assert_eq!(top.self_loops, vec![6.5]);
        assert_eq!(top.two_m, 13.0);
    }

    #[test]
    fn renumbering() {
        let mut m = vec![5, 2, 5, 0];
        assert_eq!(renumber(&mut m), 3);
        assert_eq!(m, vec![0, 1, 0, 2]);
    }
}
