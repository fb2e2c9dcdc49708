//! Summary tables: per-community statistics, density reduction, node
//! attributes, frequency counts, and centrality tables.
//!
//! Reals are rendered with 4 decimals; the underlying values are never rounded.

use std::collections::BTreeMap;
use std::io::Write;

use crate::backbone::SweepPoint;
use crate::centrality::{rank_positions, CentralityScores};
use crate::community::Partition;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::ingest::{FrequencyTable, Taxonomy};

/// Parent-field placeholder for labels the taxonomy does not know.
pub const UNKNOWN_FIELD: &str = "UNKNOWN";

/// Separator used when a cell lists several labels.
pub const LIST_SEPARATOR: &str = ", ";

pub fn fmt4(x: f64) -> String {
    format!("{x:.4}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommunityStats {
    pub community: usize,
    pub size: usize,
    /// Unweighted density of the induced subgraph; 0 for single-node communities.
    pub density: f64,
    /// False for single-node communities, where density is undefined.
    pub density_defined: bool,
    /// Members with the highest betweenness on the full graph (all ties).
    pub most_central: Vec<String>,
    /// Parent fields with the most members (all ties), sorted by name.
    pub dominant_fields: Vec<String>,
}

/// One row per community, in community-id order. `betweenness` must be
/// computed on the full graph `g`.
pub fn community_stats(
    g: &WeightedGraph,
    p: &Partition,
    betweenness: &CentralityScores,
    taxonomy: &Taxonomy,
) -> Result<Vec<CommunityStats>> {
    if p.len() != g.node_count() {
        return Err(Error::PartitionMismatch(format!(
            "partition covers {} nodes, graph has {}",
            p.len(),
            g.node_count()
        )));
    }
    if betweenness.len() != g.node_count() {
        return Err(Error::PartitionMismatch(format!(
            "{} betweenness scores for {} nodes",
            betweenness.len(),
            g.node_count()
        )));
    }
    p.members()
        .into_iter()
        .enumerate()
        .map(|(community, members)| {
            let sub = g.induced_subgraph(&members)?;
            let (density, density_defined) = match sub.density() {
                Ok(d) => (d, true),
                Err(_) => (0.0, false),
            };

            let top = members
                .iter()
                .map(|&id| betweenness.get(id).unwrap_or(0.0))
                .fold(f64::NEG_INFINITY, f64::max);
            let mut most_central: Vec<String> = members
                .iter()
                .filter(|&&id| betweenness.get(id) == Some(top))
                .map(|&id| g.label(id).to_owned())
                .collect();
            most_central.sort();

            let mut field_counts: BTreeMap<&str, usize> = BTreeMap::new();
            for &id in &members {
                if let Some(field) = taxonomy.parent(g.label(id)) {
                    *field_counts.entry(field).or_insert(0) += 1;
                }
            }
            let max = field_counts.values().copied().max().unwrap_or(0);
            let dominant_fields = field_counts
                .into_iter()
                .filter(|&(_, c)| c == max)
                .map(|(f, _)| f.to_owned())
                .collect();

            Ok(CommunityStats {
                community,
                size: members.len(),
                density,
                density_defined,
                most_central,
                dominant_fields,
            })
        })
        .collect()
}

pub fn write_community_stats<W: Write>(rows: &[CommunityStats], writer: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record([
        "community",
        "size",
        "density",
        "density_defined",
        "most_central",
        "dominant_fields",
    ])?;
    for r in rows {
        wtr.write_record([
            r.community.to_string(),
            r.size.to_string(),
            fmt4(r.density),
            r.density_defined.to_string(),
            r.most_central.join(LIST_SEPARATOR),
            r.dominant_fields.join(LIST_SEPARATOR),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityReduction {
    pub nodes: usize,
    pub edges_before: usize,
    pub edges_after: usize,
    pub density_before: f64,
    pub density_after: f64,
    /// `(before - after) / before * 100`, from unrounded densities.
    pub percent_reduction: f64,
}

/// Compares a graph with a filtered version of it over the same node set.
pub fn density_reduction_report(
    before: &WeightedGraph,
    after: &WeightedGraph,
) -> Result<DensityReduction> {
    let same_nodes = before.node_count() == after.node_count()
        && before.labels().iter().all(|l| after.node_id(l).is_some());
    if !same_nodes {
        return Err(Error::NodeSetMismatch(format!(
            "{} nodes before filtering, {} after",
            before.node_count(),
            after.node_count()
        )));
    }
    let density_before = before.density()?;
    let density_after = after.density()?;
    let percent_reduction = if density_before > 0.0 {
        (density_before - density_after) / density_before * 100.0
    } else {
        0.0
    };
    Ok(DensityReduction {
        nodes: before.node_count(),
        edges_before: before.edge_count(),
        edges_after: after.edge_count(),
        density_before,
        density_after,
        percent_reduction,
    })
}

/// Writes `key = value` lines.
pub fn write_key_values<W: Write>(pairs: &[(&str, String)], mut writer: W) -> Result<()> {
    for (k, v) in pairs {
        writeln!(writer, "{k} = {v}")?;
    }
    Ok(())
}

impl DensityReduction {
    pub fn to_pairs(&self) -> Vec<(&'static str, String)> {
        vec![
            ("nodes", self.nodes.to_string()),
            ("edges_before", self.edges_before.to_string()),
            ("edges_after", self.edges_after.to_string()),
            ("density_before", fmt4(self.density_before)),
            ("density_after", fmt4(self.density_after)),
            ("percent_reduction", fmt4(self.percent_reduction)),
        ]
    }
}

/// Everything needed to re-render a node in an external graph viewer.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeAttributes {
    pub label: String,
    pub parent_field: String,
    pub frequency: usize,
    pub betweenness: f64,
    pub weighted_degree: f64,
    pub community: usize,
}

/// One row per node, in node order.
pub fn node_attribute_export(
    g: &WeightedGraph,
    betweenness: &CentralityScores,
    weighted_degree: &CentralityScores,
    frequency: &FrequencyTable,
    p: &Partition,
    taxonomy: &Taxonomy,
) -> Result<Vec<NodeAttributes>> {
    if p.len() != g.node_count() {
        return Err(Error::PartitionMismatch(format!(
            "partition covers {} nodes, graph has {}",
            p.len(),
            g.node_count()
        )));
    }
    g.node_ids()
        .map(|id| {
            let label = g.label(id);
            Ok(NodeAttributes {
                label: label.to_owned(),
                parent_field: taxonomy.parent(label).unwrap_or(UNKNOWN_FIELD).to_owned(),
                frequency: frequency
                    .get(label)
                    .ok_or_else(|| Error::MissingAttribute(label.to_owned(), "frequency"))?,
                betweenness: betweenness
                    .get(id)
                    .ok_or_else(|| Error::MissingAttribute(label.to_owned(), "betweenness"))?,
                weighted_degree: weighted_degree
                    .get(id)
                    .ok_or_else(|| Error::MissingAttribute(label.to_owned(), "weighted degree"))?,
                community: p.community_of(id),
            })
        })
        .collect()
}

pub fn write_node_attributes<W: Write>(rows: &[NodeAttributes], writer: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record([
        "label",
        "parent_field",
        "frequency",
        "betweenness",
        "weighted_degree",
        "community",
    ])?;
    for r in rows {
        wtr.write_record([
            r.label.clone(),
            r.parent_field.clone(),
            r.frequency.to_string(),
            fmt4(r.betweenness),
            fmt4(r.weighted_degree),
            r.community.to_string(),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

/// `label, count`, most frequent first.
pub fn write_frequency<W: Write>(freq: &FrequencyTable, writer: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(["label", "count"])?;
    for (label, count) in freq.ranked() {
        wtr.write_record([label, count.to_string().as_str()])?;
    }
    wtr.flush()?;
    Ok(())
}

/// `field, label, count`: counts grouped by parent field, most frequent first
/// within each field. These are the inputs of per-field bar plots.
pub fn write_frequency_by_field<W: Write>(
    freq: &FrequencyTable,
    taxonomy: &Taxonomy,
    writer: W,
) -> Result<()> {
    let mut rows: Vec<(&str, &str, usize)> = freq
        .ranked()
        .into_iter()
        .map(|(label, count)| {
            (
                taxonomy.parent(label).unwrap_or(UNKNOWN_FIELD),
                label,
                count,
            )
        })
        .collect();
    rows.sort_by(|a, b| a.0.cmp(b.0).then(b.2.cmp(&a.2)).then(a.1.cmp(b.1)));
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(["field", "label", "count"])?;
    for (field, label, count) in rows {
        wtr.write_record([field, label, count.to_string().as_str()])?;
    }
    wtr.flush()?;
    Ok(())
}

/// `label, betweenness, weighted_degree, betweenness_rank, weighted_degree_rank`,
/// ordered by betweenness rank.
pub fn write_centrality_table<W: Write>(
    g: &WeightedGraph,
    betweenness: &CentralityScores,
    weighted_degree: &CentralityScores,
    writer: W,
) -> Result<()> {
    let b_rank = rank_positions(g, betweenness);
    let w_rank = rank_positions(g, weighted_degree);
    let mut ids: Vec<_> = g.node_ids().collect();
    ids.sort_by_key(|id| b_rank[id.index()]);
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record([
        "label",
        "betweenness",
        "weighted_degree",
        "betweenness_rank",
        "weighted_degree_rank",
    ])?;
    for id in ids {
        wtr.write_record([
            g.label(id).to_owned(),
            fmt4(betweenness.get(id).unwrap_or(0.0)),
            fmt4(weighted_degree.get(id).unwrap_or(0.0)),
            b_rank[id.index()].to_string(),
            w_rank[id.index()].to_string(),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

/// `alpha, edges, density`.
pub fn write_alpha_sweep<W: Write>(points: &[SweepPoint], writer: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(["alpha", "edges", "density"])?;
    for p in points {
        wtr.write_record([
            format!("{:.2}", p.alpha),
            p.edges.to_string(),
            fmt4(p.density),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}
