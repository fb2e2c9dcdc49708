use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use csnet_core::backbone::KeepRule;
use csnet_core::centrality::PathMode;
use csnet_core::community::{Algorithm, DetectionConfig};

use crate::error::CliError;

/// Pipeline configuration for `reproduce`. Relative paths are resolved
/// against the directory holding the config file.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    pub inputs: Inputs,
    #[serde(default)]
    pub filter: FilterSection,
    #[serde(default)]
    pub centrality: CentralitySection,
    #[serde(default)]
    pub communities: CommunitiesSection,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Inputs {
    /// Records labeled with top-level fields.
    pub field_records: Option<PathBuf>,
    /// Records labeled with subfields.
    pub subfield_records: Option<PathBuf>,
    pub taxonomy: PathBuf,
    #[serde(default = "default_delimiter")]
    pub delimiter: char,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilterSection {
    /// Fixed significance level for the fields network.
    pub alpha: Option<f64>,
    /// Pick the grid alpha whose filtered density is closest to this value.
    pub target_density: Option<f64>,
    #[serde(default = "default_keep_rule")]
    pub keep_rule: String,
    pub grid: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CentralitySection {
    #[serde(default = "default_modes")]
    pub modes: Vec<String>,
    #[serde(default)]
    pub normalized: bool,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommunitiesSection {
    #[serde(default = "default_algorithms")]
    pub algorithms: Vec<String>,
    #[serde(default = "default_resolution")]
    pub resolution: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_restarts")]
    pub restarts: usize,
    #[serde(default = "default_max_passes")]
    pub max_passes: usize,
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

fn default_delimiter() -> char {
    ','
}

fn default_keep_rule() -> String {
    "either".into()
}

fn default_modes() -> Vec<String> {
    vec!["unweighted".into(), "inverse-weight".into()]
}

fn default_algorithms() -> Vec<String> {
    vec!["louvain".into(), "leiden".into()]
}

fn default_resolution() -> f64 {
    1.0
}

fn default_restarts() -> usize {
    20
}

fn default_max_passes() -> usize {
    DetectionConfig::default().max_passes
}

impl Default for FilterSection {
    fn default() -> Self {
        FilterSection {
            alpha: None,
            target_density: None,
            keep_rule: default_keep_rule(),
            grid: None,
        }
    }
}

impl Default for CentralitySection {
    fn default() -> Self {
        CentralitySection {
            modes: default_modes(),
            normalized: false,
        }
    }
}

impl Default for CommunitiesSection {
    fn default() -> Self {
        CommunitiesSection {
            algorithms: default_algorithms(),
            resolution: default_resolution(),
            seed: 0,
            restarts: default_restarts(),
            max_passes: default_max_passes(),
        }
    }
}

impl PipelineConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::io(format!("reading config {}", path.display()), e))?;
        let mut cfg: PipelineConfig = toml::from_str(&text)
            .map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        cfg.resolve_paths(base);
        cfg.validate()?;
        Ok(cfg)
    }

    fn resolve_paths(&mut self, base: &Path) {
        let resolve = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        if let Some(p) = self.inputs.field_records.as_mut() {
            resolve(p);
        }
        if let Some(p) = self.inputs.subfield_records.as_mut() {
            resolve(p);
        }
        resolve(&mut self.inputs.taxonomy);
        resolve(&mut self.output_dir);
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.inputs.field_records.is_none() && self.inputs.subfield_records.is_none() {
            return Err(CliError::Usage(
                "config must name field_records, subfield_records, or both".into(),
            ));
        }
        if self.filter.alpha.is_some() && self.filter.target_density.is_some() {
            return Err(CliError::Usage(
                "filter.alpha and filter.target_density are mutually exclusive".into(),
            ));
        }
        self.keep_rule()?;
        if self.path_modes()?.is_empty() {
            return Err(CliError::Usage("centrality.modes must not be empty".into()));
        }
        self.algorithms()?;
        self.detection().validate().map_err(CliError::usage)?;
        if self.communities.restarts == 0 {
            return Err(CliError::Usage(
                "communities.restarts must be at least 1".into(),
            ));
        }
        self.delimiter()?;
        Ok(())
    }

    pub fn delimiter(&self) -> Result<u8, CliError> {
        parse_delimiter(self.inputs.delimiter)
    }

    pub fn keep_rule(&self) -> Result<KeepRule, CliError> {
        self.filter.keep_rule.parse().map_err(CliError::usage)
    }

    pub fn path_modes(&self) -> Result<Vec<PathMode>, CliError> {
        self.centrality
            .modes
            .iter()
            .map(|m| m.parse().map_err(CliError::usage))
            .collect()
    }

    pub fn algorithms(&self) -> Result<Vec<Algorithm>, CliError> {
        self.communities
            .algorithms
            .iter()
            .map(|a| a.parse().map_err(CliError::usage))
            .collect()
    }

    pub fn detection(&self) -> DetectionConfig {
        DetectionConfig {
            resolution: self.communities.resolution,
            seed: self.communities.seed,
            max_passes: self.communities.max_passes,
        }
    }
}

pub fn parse_delimiter(c: char) -> Result<u8, CliError> {
    if c.is_ascii() && c != '"' && c != '\n' {
        Ok(c as u8)
    } else {
        Err(CliError::Usage(format!("unsupported delimiter {c:?}")))
    }
}
