use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{NodeId, WeightedGraph};

/// Assignment of every node to one community. Ids are `0..count`, none empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    membership: Vec<usize>,
    count: usize,
}

impl Partition {
    /// Wraps an arbitrary labelling, renumbering ids densely in order of first use.
    pub fn from_membership(raw: Vec<usize>) -> Self {
        let mut remap = HashMap::new();
        let membership: Vec<usize> = raw
            .into_iter()
            .map(|c| {
                let next = remap.len();
                *remap.entry(c).or_insert(next)
            })
            .collect();
        let count = remap.len();
        Partition { membership, count }
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            membership: (0..n).collect(),
            count: n,
        }
    }

    pub fn whole(n: usize) -> Self {
        Partition {
            membership: vec![0; n],
            count: usize::from(n > 0),
        }
    }

    /// Builds a partition from `(label, community)` pairs covering every node of `g`.
    pub fn from_labels<'a, I>(g: &WeightedGraph, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, usize)>,
    {
        let mut raw = vec![None; g.node_count()];
        for (label, community) in pairs {
            let id = g
                .node_id(label)
                .ok_or_else(|| Error::PartitionMismatch(format!("unknown node {label:?}")))?;
            if raw[id.index()].replace(community).is_some() {
                return Err(Error::PartitionMismatch(format!(
                    "node {label:?} assigned twice"
                )));
            }
        }
        let raw = raw
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                c.ok_or_else(|| {
                    Error::PartitionMismatch(format!(
                        "node {:?} has no community",
                        g.label(NodeId::new(i))
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_membership(raw))
    }

    pub fn len(&self) -> usize {
        self.membership.len()
    }

    pub fn is_empty(&self) -> bool {
        self.membership.is_empty()
    }

    pub fn community_count(&self) -> usize {
        self.count
    }

    pub fn community_of(&self, id: NodeId) -> usize {
        self.membership[id.index()]
    }

    pub fn membership(&self) -> &[usize] {
        &self.membership
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.count];
        for &c in &self.membership {
            sizes[c] += 1;
        }
        sizes
    }

    /// Members of each community, each list sorted by node id.
    pub fn members(&self) -> Vec<Vec<NodeId>> {
        let mut out = vec![Vec::new(); self.count];
        for (i, &c) in self.membership.iter().enumerate() {
            out[c].push(NodeId::new(i));
        }
        out
    }

    /// Renumbers communities by descending size; equal sizes keep the order
    /// of their smallest node.
    pub fn relabeled_by_size(&self) -> Self {
        let sizes = self.sizes();
        let mut first = vec![usize::MAX; self.count];
        for (i, &c) in self.membership.iter().enumerate() {
            first[c] = first[c].min(i);
        }
        let mut order: Vec<usize> = (0..self.count).collect();
        order.sort_by(|&a, &b| sizes[b].cmp(&sizes[a]).then(first[a].cmp(&first[b])));
        let mut new_id = vec![0; self.count];
        for (rank, &c) in order.iter().enumerate() {
            new_id[c] = rank;
        }
        Partition {
            membership: self.membership.iter().map(|&c| new_id[c]).collect(),
            count: self.count,
        }
    }

    pub(crate) fn ensure_matches(&self, g: &WeightedGraph) -> Result<()> {
        if self.len() != g.node_count() {
            return Err(Error::PartitionMismatch(format!(
                "partition covers {} nodes, graph has {}",
                self.len(),
                g.node_count()
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_renumbering() {
        let p = Partition::from_membership(vec![7, 3, 7, 9]);
        assert_eq!(p.membership(), &[0, 1, 0, 2]);
        assert_eq!(p.community_count(), 3);
        assert_eq!(p.sizes(), vec![2, 1, 1]);
    }

    #[test]
    fn relabel_by_size() {
        let p = Partition::from_membership(vec![0, 1, 1, 2, 2, 2, 3]);
        let r = p.relabeled_by_size();
        assert_eq!(r.membership(), &[2, 1, 1, 0, 0, 0, 3]);
        assert_eq!(r.sizes(), vec![3, 2, 1, 1]);
    }

    #[test]
    fn trivial_partitions() {
        assert_eq!(Partition::singletons(3).community_count(), 3);
        assert_eq!(Partition::whole(3).community_count(), 1);
        assert_eq!(Partition::whole(0).community_count(), 0);
    }
}
