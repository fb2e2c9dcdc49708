//! Undirected weighted graph over string-labeled nodes.
//!
//! Graphs are assembled with a [`GraphBuilder`] and then frozen into an
//! immutable [`WeightedGraph`]. A frozen graph has no interior mutability,
//! so it can be shared across threads for read-only queries.
//!
//! Node ids follow insertion order and neighbor lists are sorted by id,
//! which keeps every traversal (and every seeded algorithm on top of it)
//! reproducible.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Opaque handle to a node of one graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(usize);

impl NodeId {
    pub fn index(self) -> usize {
        self.0
    }

    pub(crate) fn new(index: usize) -> Self {
        NodeId(index)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Mutable construction stage of a [`WeightedGraph`].
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
    adjacency: Vec<BTreeMap<usize, f64>>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a node, or returns the existing id when the label is already present.
    pub fn add_node(&mut self, label: &str) -> Result<NodeId> {
        if label.is_empty() {
            return Err(Error::EmptyLabel);
        }
        if let Some(&id) = self.index.get(label) {
            return Ok(id);
        }
        let id = NodeId(self.labels.len());
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), id);
        self.adjacency.push(BTreeMap::new());
        Ok(id)
    }

    pub fn node_id(&self, label: &str) -> Option<NodeId> {
        self.index.get(label).copied()
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    /// Adds `delta` to the weight of edge `{u, v}`, creating the edge if needed.
    /// Returns the new weight.
    pub fn increment_edge(&mut self, u: NodeId, v: NodeId, delta: f64) -> Result<f64> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::SelfLoop(self.labels[u.0].clone()));
        }
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::InvalidWeight(delta));
        }
        let w = self.adjacency[u.0].entry(v.0).or_insert(0.0);
        *w += delta;
        let new_weight = *w;
        self.adjacency[v.0].insert(u.0, new_weight);
        Ok(new_weight)
    }

    /// Sets the weight of a new edge; fails if the edge already exists.
    pub fn insert_edge(&mut self, u: NodeId, v: NodeId, weight: f64) -> Result<()> {
        self.check(u)?;
        self.check(v)?;
        if self.adjacency[u.0].contains_key(&v.0) {
            return Err(Error::DuplicateEdge(
                self.labels[u.0].clone(),
                self.labels[v.0].clone(),
            ));
        }
        self.increment_edge(u, v, weight).map(|_| ())
    }

    pub fn build(self) -> WeightedGraph {
        let adjacency: Vec<Vec<(NodeId, f64)>> = self
            .adjacency
            .into_iter()
            .map(|nbrs| nbrs.into_iter().map(|(v, w)| (NodeId(v), w)).collect())
            .collect();
        WeightedGraph::from_parts(self.labels, self.index, adjacency)
    }

    fn check(&self, id: NodeId) -> Result<()> {
        if id.0 < self.labels.len() {
            Ok(())
        } else {
            Err(Error::UnknownNode(id.to_string()))
        }
    }
}

/// Frozen undirected weighted graph. No self-loops, one edge per pair,
/// all weights positive.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
    adjacency: Vec<Vec<(NodeId, f64)>>,
    edge_count: usize,
    total_weight: f64,
}

impl WeightedGraph {
    fn from_parts(
        labels: Vec<String>,
        index: HashMap<String, NodeId>,
        adjacency: Vec<Vec<(NodeId, f64)>>,
    ) -> Self {
        let mut edge_count = 0;
        let mut total_weight = 0.0;
        for (u, nbrs) in adjacency.iter().enumerate() {
            for &(v, w) in nbrs {
                if u < v.0 {
                    edge_count += 1;
                    total_weight += w;
                }
            }
        }
        WeightedGraph {
            labels,
            index,
            adjacency,
            edge_count,
            total_weight,
        }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sum of edge weights, each edge counted once.
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    pub fn node_ids(&self) -> impl ExactSizeIterator<Item = NodeId> + '_ {
        (0..self.labels.len()).map(NodeId)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Label of a node of this graph.
    ///
    /// Panics if `id` was not issued by this graph.
    pub fn label(&self, id: NodeId) -> &str {
        &self.labels[id.0]
    }

    pub fn node_id(&self, label: &str) -> Option<NodeId> {
        self.index.get(label).copied()
    }

    pub fn contains(&self, id: NodeId) -> bool {
        id.0 < self.labels.len()
    }

    /// Neighbors of `u` with edge weights, sorted by node id.
    pub fn neighbors(&self, u: NodeId) -> Result<&[(NodeId, f64)]> {
        self.adjacency
            .get(u.0)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::UnknownNode(u.to_string()))
    }

    pub fn degree(&self, u: NodeId) -> Result<usize> {
        self.neighbors(u).map(<[_]>::len)
    }

    /// Sum of the weights of the edges incident to `u`.
    pub fn strength(&self, u: NodeId) -> Result<f64> {
        self.neighbors(u).map(|n| n.iter().map(|&(_, w)| w).sum())
    }

    pub fn weight(&self, u: NodeId, v: NodeId) -> Option<f64> {
        let nbrs = self.adjacency.get(u.0)?;
        nbrs.binary_search_by_key(&v, |&(x, _)| x)
            .ok()
            .map(|i| nbrs[i].1)
    }

    /// Every edge once as `(u, v, w)` with `u < v`, ordered by `(u, v)`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, f64)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, nbrs)| {
            nbrs.iter()
                .filter(move |(v, _)| u < v.0)
                .map(move |&(v, w)| (NodeId(u), v, w))
        })
    }

    /// Unweighted density `2m / (n (n - 1))`.
    pub fn density(&self) -> Result<f64> {
        let n = self.node_count();
        if n < 2 {
            return Err(Error::TooFewNodes(n));
        }
        Ok(2.0 * self.edge_count as f64 / (n as f64 * (n as f64 - 1.0)))
    }

    /// Subgraph on `nodes`, keeping every edge with both endpoints inside.
    /// Nodes keep their relative order from `self`.
    pub fn induced_subgraph(&self, nodes: &[NodeId]) -> Result<WeightedGraph> {
        let mut keep = vec![false; self.node_count()];
        for &id in nodes {
            if !self.contains(id) {
                return Err(Error::UnknownNode(id.to_string()));
            }
            keep[id.0] = true;
        }
        let mut builder = GraphBuilder::new();
        let mut remap = vec![None; self.node_count()];
        for (u, &kept) in keep.iter().enumerate() {
            if kept {
                remap[u] = Some(builder.add_node(&self.labels[u])?);
            }
        }
        for (u, v, w) in self.edges() {
            if let (Some(a), Some(b)) = (remap[u.0], remap[v.0]) {
                builder.increment_edge(a, b, w)?;
            }
        }
        Ok(builder.build())
    }

    /// Same node set, keeping only the edges accepted by `keep`.
    pub(crate) fn filter_edges<F>(&self, mut keep: F) -> WeightedGraph
    where
        F: FnMut(NodeId, NodeId, f64) -> bool,
    {
        let mut adjacency: Vec<Vec<(NodeId, f64)>> = vec![Vec::new(); self.node_count()];
        for (u, v, w) in self.edges() {
            if keep(u, v, w) {
                adjacency[u.0].push((v, w));
                adjacency[v.0].push((u, w));
            }
        }
        for nbrs in &mut adjacency {
            nbrs.sort_by_key(|&(v, _)| v);
        }
        WeightedGraph::from_parts(self.labels.clone(), self.index.clone(), adjacency)
    }

    /// Connected components, each sorted by id, in order of their smallest node.
    pub fn components(&self) -> Vec<Vec<NodeId>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut component = Vec::new();
            while let Some(u) = queue.pop_front() {
                component.push(NodeId(u));
                for &(v, _) in &self.adjacency[u] {
                    if !seen[v.0] {
                        seen[v.0] = true;
                        queue.push_back(v.0);
                    }
                }
            }
            component.sort();
            out.push(component);
        }
        out
    }

    /// True iff one component spans every node. A single node counts as
    /// connected, and so does the empty graph.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

/// Structural equality by label: same label set and the same weighted edges,
/// independent of node insertion order.
impl PartialEq for WeightedGraph {
    fn eq(&self, other: &Self) -> bool {
        if self.node_count() != other.node_count() || self.edge_count != other.edge_count {
            return false;
        }
        let mut remap = Vec::with_capacity(self.node_count());
        for label in &self.labels {
            match other.node_id(label) {
                Some(id) => remap.push(id),
                None => return false,
            }
        }
        self.edges()
            .all(|(u, v, w)| other.weight(remap[u.0], remap[v.0]) == Some(w))
    }
}
