//! Betweenness and weighted-degree centrality.
//!
//! Betweenness uses Brandes' accumulation: one shortest-path counting pass
//! per source (BFS, or Dijkstra over `1 / w` distances), followed by a
//! reverse sweep that pushes pair dependencies back to intermediate nodes.
//! Sources are processed in parallel in fixed-size chunks and the chunk
//! partials are summed in source order, so results do not depend on the
//! thread schedule.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{NodeId, WeightedGraph};

/// Relative tolerance under which two weighted path lengths count as equal.
pub const PATH_LENGTH_TOLERANCE: f64 = 1e-10;

const SOURCE_CHUNK: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PathMode {
    /// Hop-count shortest paths; weights ignored.
    #[default]
    Unweighted,
    /// Edge length `1 / w`: heavy co-occurrence means close.
    InverseWeight,
}

impl FromStr for PathMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unweighted" | "unweighted-paths" => Ok(PathMode::Unweighted),
            "inverse-weight" | "inverse-weight-distances" | "weighted" => {
                Ok(PathMode::InverseWeight)
            }
            other => Err(Error::InvalidParameter(format!(
                "unknown path mode {other:?} (expected \"unweighted\" or \"inverse-weight\")"
            ))),
        }
    }
}

impl fmt::Display for PathMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PathMode::Unweighted => "unweighted",
            PathMode::InverseWeight => "inverse-weight",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    Betweenness { mode: PathMode, normalized: bool },
    WeightedDegree,
}

/// One score per node of the graph it was computed on, indexed by [`NodeId`].
#[derive(Debug, Clone, PartialEq)]
pub struct CentralityScores {
    measure: Measure,
    scores: Vec<f64>,
}

impl CentralityScores {
    pub fn measure(&self) -> Measure {
        self.measure
    }

    pub fn get(&self, id: NodeId) -> Option<f64> {
        self.scores.get(id.index()).copied()
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.scores
    }

    pub fn iter(&self) -> impl Iterator<Item = (NodeId, f64)> + '_ {
        self.scores
            .iter()
            .enumerate()
            .map(|(i, &s)| (NodeId::new(i), s))
    }
}

/// Betweenness `B_u = sum over unordered pairs {i, j}, i != u != j, of
/// sigma(i, u, j) / sigma(i, j)`. Pairs in different components contribute 0.
/// With `normalized`, scores are divided by `(n - 1)(n - 2) / 2`.
pub fn betweenness(g: &WeightedGraph, mode: PathMode, normalized: bool) -> CentralityScores {
    let n = g.node_count();
    let measure = Measure::Betweenness { mode, normalized };
    if n < 3 {
        return CentralityScores {
            measure,
            scores: vec![0.0; n],
        };
    }

    let sources: Vec<usize> = (0..n).collect();
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(SOURCE_CHUNK)
        .map(|chunk| {
            let mut acc = vec![0.0; n];
            let mut pass = SourcePass::new(n);
            for &s in chunk {
                pass.run(g, s, mode);
                pass.accumulate(s, &mut acc);
            }
            acc
        })
        .collect();

    let mut scores = vec![0.0; n];
    for partial in &partials {
        for (total, x) in scores.iter_mut().zip(partial) {
            *total += x;
        }
    }
    // every unordered pair was visited from both ends
    let scale = if normalized {
        0.5 / ((n as f64 - 1.0) * (n as f64 - 2.0) / 2.0)
    } else {
        0.5
    };
    for s in &mut scores {
        *s *= scale;
    }
    CentralityScores { measure, scores }
}

/// Reusable buffers for one single-source pass.
struct SourcePass {
    order: Vec<usize>,
    preds: Vec<Vec<usize>>,
    sigma: Vec<f64>,
    dist: Vec<f64>,
    delta: Vec<f64>,
}

impl SourcePass {
    fn new(n: usize) -> Self {
        SourcePass {
            order: Vec::with_capacity(n),
            preds: vec![Vec::new(); n],
            sigma: vec![0.0; n],
            dist: vec![f64::INFINITY; n],
            delta: vec![0.0; n],
        }
    }

    fn reset(&mut self) {
        self.order.clear();
        for p in &mut self.preds {
            p.clear();
        }
        self.sigma.fill(0.0);
        self.dist.fill(f64::INFINITY);
        self.delta.fill(0.0);
    }

    fn run(&mut self, g: &WeightedGraph, s: usize, mode: PathMode) {
        self.reset();
        self.sigma[s] = 1.0;
        self.dist[s] = 0.0;
        match mode {
            PathMode::Unweighted => self.bfs(g, s),
            PathMode::InverseWeight => self.dijkstra(g, s),
        }
    }

    fn bfs(&mut self, g: &WeightedGraph, s: usize) {
        let mut queue = VecDeque::new();
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            self.order.push(v);
            let next = self.dist[v] + 1.0;
            for &(w, _) in g.neighbors(NodeId::new(v)).expect("node of g") {
                let w = w.index();
                if self.dist[w].is_infinite() {
                    self.dist[w] = next;
                    queue.push_back(w);
                }
                if self.dist[w] == next {
                    self.sigma[w] += self.sigma[v];
                    self.preds[w].push(v);
                }
            }
        }
    }

    fn dijkstra(&mut self, g: &WeightedGraph, s: usize) {
        let mut settled = vec![false; self.dist.len()];
        let mut heap = BinaryHeap::new();
        heap.push(Frontier { dist: 0.0, node: s });
        while let Some(Frontier { dist, node: v }) = heap.pop() {
            if settled[v] || dist > self.dist[v] {
                continue;
            }
            settled[v] = true;
            self.order.push(v);
            for &(w, weight) in g.neighbors(NodeId::new(v)).expect("node of g") {
                let w = w.index();
                if settled[w] {
                    continue;
                }
                let candidate = dist + 1.0 / weight;
                let current = self.dist[w];
                if current.is_finite() && same_length(candidate, current) {
                    self.sigma[w] += self.sigma[v];
                    self.preds[w].push(v);
                } else if candidate < current {
                    self.dist[w] = candidate;
                    self.sigma[w] = self.sigma[v];
                    self.preds[w].clear();
                    self.preds[w].push(v);
                    heap.push(Frontier {
                        dist: candidate,
                        node: w,
                    });
                }
            }
        }
    }

    fn accumulate(&mut self, s: usize, acc: &mut [f64]) {
        while let Some(w) = self.order.pop() {
            let coeff = (1.0 + self.delta[w]) / self.sigma[w];
            for &v in &self.preds[w] {
                self.delta[v] += self.sigma[v] * coeff;
            }
            if w != s {
                acc[w] += self.delta[w];
            }
        }
    }
}

pub(crate) fn same_length(a: f64, b: f64) -> bool {
    (a - b).abs() <= PATH_LENGTH_TOLERANCE * a.abs().max(b.abs()).max(1.0)
}

#[derive(Debug, Clone, Copy)]
struct Frontier {
    dist: f64,
    node: usize,
}

impl PartialEq for Frontier {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Frontier {}

impl PartialOrd for Frontier {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// min-heap on distance, then node id
impl Ord for Frontier {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

/// Weighted degree: the strength of every node.
pub fn weighted_degree(g: &WeightedGraph) -> CentralityScores {
    let scores = g
        .node_ids()
        .map(|u| g.strength(u).expect("node of g"))
        .collect();
    CentralityScores {
        measure: Measure::WeightedDegree,
        scores,
    }
}

/// Top `k` nodes by descending score, ties broken by label. A `k` larger
/// than the node count returns the full ranking.
pub fn rank(g: &WeightedGraph, scores: &CentralityScores, k: usize) -> Result<Vec<(String, f64)>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if scores.len() != g.node_count() {
        return Err(Error::InvalidParameter(format!(
            "{} scores for a graph of {} nodes",
            scores.len(),
            g.node_count()
        )));
    }
    let mut ranked: Vec<(String, f64)> = scores
        .iter()
        .map(|(id, s)| (g.label(id).to_owned(), s))
        .collect();
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    ranked.truncate(k);
    Ok(ranked)
}

/// 1-based rank position of every node under [`rank`]'s ordering, indexed by [`NodeId`].
pub fn rank_positions(g: &WeightedGraph, scores: &CentralityScores) -> Vec<usize> {
    let mut ids: Vec<NodeId> = g.node_ids().collect();
    ids.sort_by(|&a, &b| {
        let sa = scores.get(a).unwrap_or(0.0);
        let sb = scores.get(b).unwrap_or(0.0);
        sb.total_cmp(&sa).then_with(|| g.label(a).cmp(g.label(b)))
    });
    let mut pos = vec![0; g.node_count()];
    for (i, id) in ids.into_iter().enumerate() {
        pos[id.index()] = i + 1;
    }
    pos
}
