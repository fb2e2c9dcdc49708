mod config;
mod error;
mod output;
mod pipeline;
mod reproduce;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use csnet_core::backbone::{default_alpha_grid, KeepRule};
use csnet_core::centrality::PathMode;
use csnet_core::community::{Algorithm, DetectionConfig};
use csnet_core::export::{write_dot, GraphBundle};

use config::{parse_delimiter, PipelineConfig};
use error::{CliError, EXIT_USAGE};
use output::Outputs;

/// Co-occurrence networks of research-field labels.
#[derive(Debug, Parser)]
#[command(name = "csnet", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the co-occurrence network from a records file.
    Build(BuildArgs),
    /// Apply the disparity backbone filter, or sweep alpha over a grid.
    Filter(FilterArgs),
    /// Betweenness and weighted-degree table.
    Centrality(CentralityArgs),
    /// Modularity-based community detection with restarts.
    Communities(CommunitiesArgs),
    /// Per-community statistics, node attributes and DOT for a partition.
    Report(ReportArgs),
    /// Write a graph as an edge list or DOT.
    Export(ExportArgs),
    /// Run the whole pipeline from a TOML config.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Args)]
struct OutDir {
    /// Output directory.
    #[arg(long, short)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct BuildArgs {
    /// CSV with columns conference, labels, title.
    #[arg(long)]
    records: PathBuf,
    /// CSV with columns subfield, field.
    #[arg(long)]
    taxonomy: Option<PathBuf>,
    #[arg(long, default_value_t = ',')]
    delimiter: char,
    #[command(flatten)]
    out: OutDir,
}

#[derive(Debug, Args)]
struct FilterArgs {
    /// Edge list written by `build`.
    #[arg(long)]
    graph: PathBuf,
    /// Significance level in (0, 1).
    #[arg(long, required_unless_present = "sweep")]
    alpha: Option<f64>,
    /// Edge counts and density over a grid of alphas.
    #[arg(long)]
    sweep: bool,
    /// Comma-separated alphas for the sweep.
    #[arg(long, value_delimiter = ',', requires = "sweep")]
    grid: Option<Vec<f64>>,
    #[arg(long, default_value = "either")]
    keep_rule: KeepRule,
    #[command(flatten)]
    out: OutDir,
}

#[derive(Debug, Args)]
struct CentralityArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value = "unweighted")]
    mode: PathMode,
    /// Divide betweenness by the number of node pairs excluding the node.
    #[arg(long)]
    normalized: bool,
    /// Print the top-k labels.
    #[arg(long, default_value_t = pipeline::TOP_K)]
    top: usize,
    #[command(flatten)]
    out: OutDir,
}

#[derive(Debug, Args)]
struct CommunitiesArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value = "louvain")]
    algorithm: Algorithm,
    #[arg(long, default_value_t = 1.0)]
    resolution: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    restarts: usize,
    #[arg(long, default_value_t = DetectionConfig::default().max_passes)]
    max_passes: usize,
    #[command(flatten)]
    out: OutDir,
}

#[derive(Debug, Args)]
struct ReportArgs {
    #[arg(long)]
    graph: PathBuf,
    /// `label,community` file written by `communities`.
    #[arg(long)]
    partition: PathBuf,
    #[arg(long)]
    taxonomy: PathBuf,
    /// Records file; enables node attributes and DOT output.
    #[arg(long)]
    records: Option<PathBuf>,
    /// Path mode of the betweenness used for the most-central column.
    #[arg(long, default_value = "unweighted")]
    mode: PathMode,
    #[arg(long, default_value_t = ',')]
    delimiter: char,
    #[command(flatten)]
    out: OutDir,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Edges,
    Dot,
}

#[derive(Debug, Args)]
struct ExportArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    partition: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "dot")]
    format: Format,
    /// Output file.
    #[arg(long, short)]
    output: PathBuf,
}

#[derive(Debug, Args)]
struct ReproduceArgs {
    #[arg(long)]
    config: PathBuf,
    /// Overrides the first restart seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Overrides the number of restarts.
    #[arg(long)]
    restarts: Option<usize>,
    /// Overrides the output directory.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("csnet: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn finish(out: Outputs, dir: &Path) -> Result<(), CliError> {
    let written = out.commit(dir)?;
    for path in written {
        println!("{}", path.display());
    }
    Ok(())
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Build(a) => {
            let delimiter = parse_delimiter(a.delimiter)?;
            let taxonomy = a
                .taxonomy
                .as_deref()
                .map(|p| pipeline::read_taxonomy(p, delimiter))
                .transpose()?;
            let parsed = pipeline::read_records(&a.records, delimiter, taxonomy.as_ref())?;
            let (_, out) = pipeline::build(&parsed, taxonomy.as_ref(), delimiter)?;
            finish(out, &a.out.out)
        }
        Command::Filter(a) => {
            let g = pipeline::read_graph(&a.graph)?;
            let mut out = Outputs::new();
            if a.sweep {
                let grid = a.grid.unwrap_or_else(default_alpha_grid);
                let (_, o) = pipeline::sweep(&g, &grid, a.keep_rule)?;
                out.merge(o);
            }
            if let Some(alpha) = a.alpha {
                let (_, _, o) = pipeline::filter(&g, alpha, a.keep_rule)?;
                out.merge(o);
            }
            finish(out, &a.out.out)
        }
        Command::Centrality(a) => {
            let g = pipeline::read_graph(&a.graph)?;
            let (scores, out) = pipeline::centrality(&g, a.mode, a.normalized)?;
            if a.top > 0 {
                println!(
                    "top {} by {} betweenness: {}",
                    a.top,
                    a.mode,
                    pipeline::top_labels(&g, &scores, a.top)?
                );
            }
            finish(out, &a.out.out)
        }
        Command::Communities(a) => {
            let g = pipeline::read_graph(&a.graph)?;
            let cfg = DetectionConfig {
                resolution: a.resolution,
                seed: a.seed,
                max_passes: a.max_passes,
            };
            cfg.validate().map_err(CliError::usage)?;
            if a.restarts == 0 {
                return Err(CliError::Usage("--restarts must be at least 1".into()));
            }
            let (det, out) = pipeline::communities(&g, a.algorithm, &cfg, a.restarts)?;
            println!(
                "{}: {} communities, modularity {:.6}",
                a.algorithm,
                det.partition.community_count(),
                det.modularity
            );
            finish(out, &a.out.out)
        }
        Command::Report(a) => {
            let delimiter = parse_delimiter(a.delimiter)?;
            let g = pipeline::read_graph(&a.graph)?;
            let p = pipeline::read_partition(&a.partition, &g)?;
            let taxonomy = pipeline::read_taxonomy(&a.taxonomy, delimiter)?;
            let frequency = match &a.records {
                Some(path) => {
                    let parsed = pipeline::read_records(path, delimiter, Some(&taxonomy))?;
                    Some(csnet_core::ingest::label_frequency(&parsed.records))
                }
                None => None,
            };
            let b = csnet_core::centrality::betweenness(&g, a.mode, false);
            let out = pipeline::report(&g, &p, &b, &taxonomy, frequency.as_ref(), "")?;
            finish(out, &a.out.out)
        }
        Command::Export(a) => {
            let g = pipeline::read_graph(&a.graph)?;
            let p = a
                .partition
                .as_deref()
                .map(|path| pipeline::read_partition(path, &g))
                .transpose()?;
            let bytes = match a.format {
                Format::Edges => pipeline::edge_list_bytes(&g)?,
                Format::Dot => {
                    let mut bundle = GraphBundle::new(&g);
                    if let Some(p) = &p {
                        bundle = bundle.with_partition(p)?;
                    }
                    let mut buf = Vec::new();
                    write_dot(&bundle, &mut buf)?;
                    buf
                }
            };
            let name = a
                .output
                .file_name()
                .ok_or_else(|| CliError::Usage("--output must name a file".into()))?
                .to_owned();
            let dir = a.output.parent().unwrap_or(Path::new("")).to_owned();
            let mut out = Outputs::new();
            out.add(name, bytes);
            finish(out, &dir)
        }
        Command::Reproduce(a) => {
            let mut cfg = PipelineConfig::load(&a.config)?;
            if let Some(seed) = a.seed {
                cfg.communities.seed = seed;
            }
            if let Some(restarts) = a.restarts {
                cfg.communities.restarts = restarts;
            }
            if let Some(out) = a.out {
                cfg.output_dir = out;
            }
            cfg.validate()?;
            let out = reproduce::reproduce(&cfg)?;
            finish(out, &cfg.output_dir)
        }
    }
}
