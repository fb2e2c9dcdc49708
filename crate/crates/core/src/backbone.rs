//! Disparity-filter backbone extraction.
//!
//! For an edge `(i, j)` seen from endpoint `i` with degree `k_i` and strength
//! `s_i`, the normalized weight is `p_ij = w_ij / s_i` and its significance
//! under the uniform null model is `alpha_ij = (1 - p_ij)^(k_i - 1)`. Small
//! values mean the edge carries more of `i`'s strength than chance would give.
//! Endpoints of degree 1 score 0: their only edge is always kept.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{NodeId, WeightedGraph};

/// Which endpoints must find an edge significant for it to survive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KeepRule {
    /// Significant from at least one endpoint.
    #[default]
    EitherEndpoint,
    /// Significant from both endpoints.
    BothEndpoints,
}

impl FromStr for KeepRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "either" | "either-endpoint" => Ok(KeepRule::EitherEndpoint),
            "both" | "both-endpoints" => Ok(KeepRule::BothEndpoints),
            other => Err(Error::InvalidParameter(format!(
                "unknown keep rule {other:?} (expected \"either\" or \"both\")"
            ))),
        }
    }
}

impl fmt::Display for KeepRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KeepRule::EitherEndpoint => "either-endpoint",
            KeepRule::BothEndpoints => "both-endpoints",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterParams {
    alpha: f64,
    keep_rule: KeepRule,
}

impl FilterParams {
    pub fn new(alpha: f64, keep_rule: KeepRule) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha must lie in (0, 1), got {alpha}"
            )));
        }
        Ok(FilterParams { alpha, keep_rule })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn keep_rule(&self) -> KeepRule {
        self.keep_rule
    }
}

fn significance_from(g: &WeightedGraph, node: NodeId, weight: f64) -> f64 {
    let nbrs = g.neighbors(node).expect("node of g");
    let degree = nbrs.len();
    if degree <= 1 {
        return 0.0;
    }
    let strength: f64 = nbrs.iter().map(|&(_, w)| w).sum();
    let p = weight / strength;
    (1.0 - p).powi(degree as i32 - 1)
}

/// Significance of edge `(u, v)` as seen from `u` and from `v`.
pub fn edge_significance(g: &WeightedGraph, u: NodeId, v: NodeId) -> Result<(f64, f64)> {
    if !g.contains(u) {
        return Err(Error::UnknownNode(u.to_string()));
    }
    if !g.contains(v) {
        return Err(Error::UnknownNode(v.to_string()));
    }
    let w = g
        .weight(u, v)
        .ok_or_else(|| Error::MissingEdge(g.label(u).to_owned(), g.label(v).to_owned()))?;
    Ok((significance_from(g, u, w), significance_from(g, v, w)))
}

fn keeps(params: &FilterParams, from_u: f64, from_v: f64) -> bool {
    match params.keep_rule {
        KeepRule::EitherEndpoint => from_u.min(from_v) < params.alpha,
        KeepRule::BothEndpoints => from_u.max(from_v) < params.alpha,
    }
}

/// Backbone of `g`: same nodes, only the significant edges. Significance is
/// always evaluated on the input graph, never iteratively.
pub fn disparity_filter(g: &WeightedGraph, params: &FilterParams) -> WeightedGraph {
    let edges: Vec<(NodeId, NodeId, f64)> = g.edges().collect();
    let kept: Vec<bool> = edges
        .par_iter()
        .map(|&(u, v, w)| {
            keeps(
                params,
                significance_from(g, u, w),
                significance_from(g, v, w),
            )
        })
        .collect();
    let mut i = 0;
    g.filter_edges(|_, _, _| {
        let keep = kept[i];
        i += 1;
        keep
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub alpha: f64,
    pub edges: usize,
    pub density: f64,
}

/// The `{0.05, 0.10, ..., 0.95}` grid.
pub fn default_alpha_grid() -> Vec<f64> {
    (1..=19).map(|i| f64::from(i) * 0.05).collect()
}

/// Filtered edge count and density for each alpha of `grid`.
pub fn alpha_sweep(
    g: &WeightedGraph,
    grid: &[f64],
    keep_rule: KeepRule,
) -> Result<Vec<SweepPoint>> {
    grid.iter()
        .map(|&alpha| {
            let params = FilterParams::new(alpha, keep_rule)?;
            let filtered = disparity_filter(g, &params);
            Ok(SweepPoint {
                alpha,
                edges: filtered.edge_count(),
                density: filtered.density()?,
            })
        })
        .collect()
}
