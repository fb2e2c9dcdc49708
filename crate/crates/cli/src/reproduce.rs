use csnet_core::backbone::default_alpha_grid;
use csnet_core::report::fmt4;

use crate::config::PipelineConfig;
use crate::error::CliError;
use crate::output::Outputs;
use crate::pipeline::{self, closest_to_density, top_labels, TOP_K};

pub const SUMMARY: &str = "summary.txt";

/// Runs the full analysis at every configured level. Results are placed
/// under `fields/` and `subfields/`, with headline numbers in `summary.txt`.
/// The backbone filter, when configured, applies to the field level.
pub fn reproduce(cfg: &PipelineConfig) -> Result<Outputs, CliError> {
    let delimiter = cfg.delimiter()?;
    let rule = cfg.keep_rule()?;
    let modes = cfg.path_modes()?;
    let algorithms = cfg.algorithms()?;
    let detection = cfg.detection();
    let grid = cfg.filter.grid.clone().unwrap_or_else(default_alpha_grid);
    let taxonomy = pipeline::read_taxonomy(&cfg.inputs.taxonomy, delimiter)?;

    let mut out = Outputs::new();
    let mut summary: Vec<(String, String)> = Vec::new();
    let levels = [
        ("fields", cfg.inputs.field_records.as_ref()),
        ("subfields", cfg.inputs.subfield_records.as_ref()),
    ];
    for (level, path) in levels {
        let Some(path) = path else { continue };
        eprintln!("[{level}] reading {}", path.display());
        let mut kv = |k: &str, v: String| summary.push((format!("{level}.{k}"), v));
        let mut level_out = Outputs::new();

        let parsed = pipeline::read_records(path, delimiter, Some(&taxonomy))?;
        let (built, o) = pipeline::build(&parsed, Some(&taxonomy), delimiter)?;
        level_out.merge(o);
        for (k, v) in &built.summary {
            kv(k, v.clone());
        }
        let full = &built.graph;

        let (points, o) = pipeline::sweep(full, &grid, rule)?;
        level_out.merge(o);
        let alpha = match (level, cfg.filter.alpha, cfg.filter.target_density) {
            ("fields", Some(a), _) => Some(a),
            ("fields", None, Some(t)) => closest_to_density(&points, t).map(|p| p.alpha),
            _ => None,
        };
        let filtered = match alpha {
            Some(a) => {
                eprintln!("[{level}] backbone at alpha = {a}");
                let (g, reduction, o) = pipeline::filter(full, a, rule)?;
                level_out.merge(o);
                kv("backbone.alpha", a.to_string());
                for (k, v) in reduction.to_pairs() {
                    kv(&format!("backbone.{k}"), v);
                }
                Some(g)
            }
            None => None,
        };
        let g = filtered.as_ref().unwrap_or(full);

        eprintln!("[{level}] centrality on {} nodes", g.node_count());
        let mut primary = None;
        for &mode in &modes {
            let (scores, o) = pipeline::centrality(g, mode, cfg.centrality.normalized)?;
            level_out.merge(o);
            kv(
                &format!("top_betweenness.{mode}"),
                top_labels(g, &scores, TOP_K)?,
            );
            primary.get_or_insert(scores);
        }
        let primary = primary.expect("validated: at least one path mode");
        kv(
            "top_weighted_degree",
            top_labels(g, &csnet_core::centrality::weighted_degree(g), TOP_K)?,
        );

        for &algorithm in &algorithms {
            eprintln!(
                "[{level}] {algorithm} with {} restarts",
                cfg.communities.restarts
            );
            let (det, o) =
                pipeline::communities(g, algorithm, &detection, cfg.communities.restarts)?;
            level_out.merge(o);
            let o = pipeline::report(
                g,
                &det.partition,
                &primary,
                &taxonomy,
                Some(&built.frequency),
                &format!("_{algorithm}"),
            )?;
            level_out.merge(o);
            kv(
                &format!("{algorithm}.communities"),
                det.partition.community_count().to_string(),
            );
            kv(&format!("{algorithm}.modularity"), fmt4(det.modularity));
            kv(&format!("{algorithm}.best_seed"), det.seed.to_string());
        }
        out.nest(level, level_out);
    }

    let pairs: Vec<(&str, String)> = summary
        .iter()
        .map(|(k, v)| (k.as_str(), v.clone()))
        .collect();
    out.render(SUMMARY, |w| csnet_core::report::write_key_values(&pairs, w))?;
    Ok(out)
}
