//! Pipeline stages. Each stage takes parsed inputs and returns its results
//! together with the files it would write.

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use csnet_core::backbone::{alpha_sweep, disparity_filter, FilterParams, KeepRule, SweepPoint};
use csnet_core::centrality::{betweenness, rank, weighted_degree, CentralityScores, PathMode};
use csnet_core::community::{detect_best, Algorithm, Detection, DetectionConfig, Partition};
use csnet_core::export::{read_edge_list, write_dot, write_edge_list, GraphBundle};
use csnet_core::ingest::{
    label_frequency, load_taxonomy, parse_records, write_rejected, FrequencyTable, ParseOptions,
    ParsedRecords, Taxonomy,
};
use csnet_core::report::{
    community_stats, density_reduction_report, fmt4, node_attribute_export, write_alpha_sweep,
    write_centrality_table, write_community_stats, write_frequency, write_frequency_by_field,
    write_key_values, write_node_attributes, DensityReduction, LIST_SEPARATOR,
};
use csnet_core::WeightedGraph;

use crate::error::{at, CliError};
use crate::output::Outputs;

pub const EDGES: &str = "edges.csv";
pub const TOP_K: usize = 5;

fn open(path: &Path) -> Result<BufReader<File>, CliError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| CliError::io(format!("opening {}", path.display()), e))
}

pub fn read_taxonomy(path: &Path, delimiter: u8) -> Result<Taxonomy, CliError> {
    load_taxonomy(open(path)?, delimiter).map_err(at(path))
}

/// Parses a records file; a file without a single usable record is a data error.
pub fn read_records(
    path: &Path,
    delimiter: u8,
    taxonomy: Option<&Taxonomy>,
) -> Result<ParsedRecords, CliError> {
    let parsed = parse_records(
        open(path)?,
        &ParseOptions {
            delimiter,
            taxonomy,
        },
    )
    .map_err(at(path))?;
    if parsed.records.is_empty() {
        return Err(CliError::data(format!(
            "{}: no usable records ({} rows rejected)",
            path.display(),
            parsed.rejected.len()
        )));
    }
    Ok(parsed)
}

pub fn read_graph(path: &Path) -> Result<WeightedGraph, CliError> {
    let g = read_edge_list(open(path)?).map_err(at(path))?;
    if g.node_count() == 0 {
        return Err(CliError::data(format!(
            "{}: graph has no nodes",
            path.display()
        )));
    }
    Ok(g)
}

/// Reads a `label,community` file covering every node of `g`.
pub fn read_partition(path: &Path, g: &WeightedGraph) -> Result<Partition, CliError> {
    let mut rdr = csv::Reader::from_reader(open(path)?);
    let mut pairs = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(|e| at(path)(e.into()))?;
        let line = row.position().map_or(0, |p| p.line());
        if row.len() != 2 {
            return Err(CliError::data(format!(
                "{}: row {line}: expected 2 columns, found {}",
                path.display(),
                row.len()
            )));
        }
        let community: usize = row[1].parse().map_err(|_| {
            CliError::data(format!(
                "{}: row {line}: invalid community {:?}",
                path.display(),
                &row[1]
            ))
        })?;
        pairs.push((row[0].to_owned(), community));
    }
    Partition::from_labels(g, pairs.iter().map(|(l, c)| (l.as_str(), *c))).map_err(at(path))
}

pub fn partition_csv(g: &WeightedGraph, p: &Partition) -> Result<Vec<u8>, CliError> {
    let mut rows: Vec<(usize, &str)> = g
        .node_ids()
        .map(|id| (p.community_of(id), g.label(id)))
        .collect();
    rows.sort();
    let mut wtr = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| CliError::from(csnet_core::Error::from(e));
    wtr.write_record(["label", "community"]).map_err(err)?;
    for (c, label) in rows {
        wtr.write_record([label, c.to_string().as_str()])
            .map_err(err)?;
    }
    wtr.into_inner()
        .map_err(|e| CliError::io("buffering partition", e.into_error()))
}

pub fn edge_list_bytes(g: &WeightedGraph) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    write_edge_list(&GraphBundle::new(g), &mut buf)?;
    Ok(buf)
}

fn key_values(pairs: &[(&str, String)]) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    write_key_values(pairs, &mut buf)?;
    Ok(buf)
}

fn graph_pairs(g: &WeightedGraph) -> Vec<(&'static str, String)> {
    vec![
        ("nodes", g.node_count().to_string()),
        ("edges", g.edge_count().to_string()),
        ("total_weight", g.total_weight().to_string()),
        (
            "density",
            g.density().map(fmt4).unwrap_or_else(|_| "undefined".into()),
        ),
        ("connected", g.is_connected().to_string()),
        ("components", g.components().len().to_string()),
    ]
}

pub struct Built {
    pub graph: WeightedGraph,
    pub frequency: FrequencyTable,
    pub summary: Vec<(&'static str, String)>,
}

/// Co-occurrence network, label counts and the rejected-row report.
pub fn build(
    parsed: &ParsedRecords,
    taxonomy: Option<&Taxonomy>,
    delimiter: u8,
) -> Result<(Built, Outputs), CliError> {
    let graph = csnet_core::ingest::build_cooccurrence(&parsed.records)?;
    let frequency = label_frequency(&parsed.records);
    let mut out = Outputs::new();
    out.add(EDGES, edge_list_bytes(&graph)?);
    out.render("frequency.csv", |w| write_frequency(&frequency, w))?;
    if let Some(t) = taxonomy {
        out.render("frequency_by_field.csv", |w| {
            write_frequency_by_field(&frequency, t, w)
        })?;
    }
    out.render("rejected_rows.csv", |w| {
        write_rejected(&parsed.rejected, w, delimiter)
    })?;
    let mut summary = vec![
        ("papers", parsed.records.len().to_string()),
        ("rejected_rows", parsed.rejected.len().to_string()),
    ];
    summary.extend(graph_pairs(&graph));
    if let Some(t) = taxonomy {
        let unknown = graph
            .labels()
            .iter()
            .filter(|l| t.parent(l).is_none())
            .count();
        summary.push(("labels_outside_taxonomy", unknown.to_string()));
    }
    out.add("build_summary.txt", key_values(&summary)?);
    Ok((
        Built {
            graph,
            frequency,
            summary,
        },
        out,
    ))
}

pub fn sweep(
    g: &WeightedGraph,
    grid: &[f64],
    rule: KeepRule,
) -> Result<(Vec<SweepPoint>, Outputs), CliError> {
    let points = alpha_sweep(g, grid, rule).map_err(|e| match e {
        csnet_core::Error::InvalidParameter(_) => CliError::usage(e),
        other => other.into(),
    })?;
    let mut out = Outputs::new();
    out.render("alpha_sweep.csv", |w| write_alpha_sweep(&points, w))?;
    Ok((points, out))
}

/// Grid point whose filtered density is closest to `target` (smallest alpha on ties).
pub fn closest_to_density(points: &[SweepPoint], target: f64) -> Option<&SweepPoint> {
    let mut best: Option<&SweepPoint> = None;
    for p in points {
        if best.is_none_or(|b| (p.density - target).abs() < (b.density - target).abs()) {
            best = Some(p);
        }
    }
    best
}

pub fn filter(
    g: &WeightedGraph,
    alpha: f64,
    rule: KeepRule,
) -> Result<(WeightedGraph, DensityReduction, Outputs), CliError> {
    let params = FilterParams::new(alpha, rule).map_err(CliError::usage)?;
    let filtered = disparity_filter(g, &params);
    let reduction = density_reduction_report(g, &filtered)?;
    let mut pairs = vec![
        ("alpha", alpha.to_string()),
        ("keep_rule", rule.to_string()),
    ];
    pairs.extend(reduction.to_pairs());
    let mut out = Outputs::new();
    out.add("backbone_edges.csv", edge_list_bytes(&filtered)?);
    out.add("filter_report.txt", key_values(&pairs)?);
    Ok((filtered, reduction, out))
}

pub fn centrality_file(mode: PathMode) -> String {
    format!("centrality_{mode}.csv")
}

pub fn centrality(
    g: &WeightedGraph,
    mode: PathMode,
    normalized: bool,
) -> Result<(CentralityScores, Outputs), CliError> {
    let b = betweenness(g, mode, normalized);
    let wd = weighted_degree(g);
    let mut out = Outputs::new();
    out.render(centrality_file(mode), |w| {
        write_centrality_table(g, &b, &wd, w)
    })?;
    Ok((b, out))
}

pub fn top_labels(
    g: &WeightedGraph,
    scores: &CentralityScores,
    k: usize,
) -> Result<String, CliError> {
    let k = k.min(g.node_count());
    Ok(rank(g, scores, k)?
        .into_iter()
        .map(|(l, _)| l)
        .collect::<Vec<_>>()
        .join(LIST_SEPARATOR))
}

pub fn communities(
    g: &WeightedGraph,
    algorithm: Algorithm,
    cfg: &DetectionConfig,
    restarts: usize,
) -> Result<(Detection, Outputs), CliError> {
    let det = detect_best(g, algorithm, cfg, restarts).map_err(|e| match e {
        csnet_core::Error::InvalidParameter(_) => CliError::usage(e),
        other => other.into(),
    })?;
    let sizes: Vec<String> = det
        .partition
        .sizes()
        .iter()
        .map(|s| s.to_string())
        .collect();
    let pairs = vec![
        ("algorithm", algorithm.to_string()),
        ("resolution", cfg.resolution.to_string()),
        ("restarts", restarts.to_string()),
        ("first_seed", cfg.seed.to_string()),
        ("best_seed", det.seed.to_string()),
        ("communities", det.partition.community_count().to_string()),
        ("modularity", format!("{:.6}", det.modularity)),
        ("sizes", sizes.join(LIST_SEPARATOR)),
    ];
    let mut out = Outputs::new();
    out.add(
        format!("partition_{algorithm}.csv"),
        partition_csv(g, &det.partition)?,
    );
    out.add(format!("communities_{algorithm}.txt"), key_values(&pairs)?);
    Ok((det, out))
}

/// Per-community table, plus node attributes and DOT when label counts are known.
pub fn report(
    g: &WeightedGraph,
    p: &Partition,
    b: &CentralityScores,
    taxonomy: &Taxonomy,
    frequency: Option<&FrequencyTable>,
    suffix: &str,
) -> Result<Outputs, CliError> {
    let stats = community_stats(g, p, b, taxonomy)?;
    let mut out = Outputs::new();
    out.render(format!("community_stats{suffix}.csv"), |w| {
        write_community_stats(&stats, w)
    })?;
    if let Some(freq) = frequency {
        let attrs = node_attribute_export(g, b, &weighted_degree(g), freq, p, taxonomy)?;
        out.render(format!("node_attributes{suffix}.csv"), |w| {
            write_node_attributes(&attrs, w)
        })?;
        let bundle = GraphBundle::new(g)
            .with_partition(p)?
            .with_attributes(&attrs)?;
        out.render(format!("network{suffix}.dot"), |w| write_dot(&bundle, w))?;
    }
    Ok(out)
}
