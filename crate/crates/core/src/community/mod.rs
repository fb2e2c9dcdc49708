//! Modularity-based community detection.

mod leiden;
mod louvain;
mod modularity;
mod network;
mod partition;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

pub use leiden::leiden;
pub use louvain::louvain;
pub use modularity::modularity;
pub use partition::Partition;

/// Gains below this are treated as ties.
pub(crate) const GAIN_EPSILON: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionConfig {
    pub resolution: f64,
    pub seed: u64,
    pub max_passes: usize,
}

impl Default for DetectionConfig {
    fn default() -> Self {
        DetectionConfig {
            resolution: 1.0,
            seed: 0,
            max_passes: 100,
        }
    }
}

impl DetectionConfig {
    pub fn with_seed(seed: u64) -> Self {
        DetectionConfig {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.resolution.is_finite() && self.resolution > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "resolution must be positive, got {}",
                self.resolution
            )));
        }
        if self.max_passes == 0 {
            return Err(Error::InvalidParameter(
                "max_passes must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Louvain,
    Leiden,
}

impl Algorithm {
    pub fn run(self, g: &WeightedGraph, cfg: &DetectionConfig) -> Partition {
        match self {
            Algorithm::Louvain => louvain(g, cfg),
            Algorithm::Leiden => leiden(g, cfg),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Louvain => "louvain",
            Algorithm::Leiden => "leiden",
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "louvain" => Ok(Algorithm::Louvain),
            "leiden" => Ok(Algorithm::Leiden),
            other => Err(Error::InvalidParameter(format!(
                "unknown algorithm {other:?} (expected \"louvain\" or \"leiden\")"
            ))),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of a multi-restart detection run.
#[derive(Debug, Clone, PartialEq)]
pub struct Detection {
    pub partition: Partition,
    pub modularity: f64,
    /// Seed of the winning restart.
    pub seed: u64,
}

/// Runs `restarts` independent detections with seeds `cfg.seed, cfg.seed + 1, ...`
/// in parallel and keeps the one with the highest modularity (earliest seed on ties).
pub fn detect_best(
    g: &WeightedGraph,
    algorithm: Algorithm,
    cfg: &DetectionConfig,
    restarts: usize,
) -> Result<Detection> {
    cfg.validate()?;
    if restarts == 0 {
        return Err(Error::InvalidParameter(
            "restarts must be at least 1".into(),
        ));
    }
    if g.total_weight() <= 0.0 {
        return Err(Error::EmptyGraph);
    }
    let runs: Vec<Detection> = (0..restarts as u64)
        .into_par_iter()
        .map(|i| {
            let run_cfg = DetectionConfig {
                seed: cfg.seed.wrapping_add(i),
                ..*cfg
            };
            let partition = algorithm.run(g, &run_cfg);
            let q = modularity(g, &partition, cfg.resolution)?;
            Ok(Detection {
                partition,
                modularity: q,
                seed: run_cfg.seed,
            })
        })
        .collect::<Result<_>>()?;
    let mut best = None::<Detection>;
    for run in runs {
        if best.as_ref().is_none_or(|b| run.modularity > b.modularity) {
            best = Some(run);
        }
    }
    Ok(best.expect("at least one restart"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(DetectionConfig::default().validate().is_ok());
        let bad = DetectionConfig {
            resolution: 0.0,
            ..DetectionConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = DetectionConfig {
            max_passes: 0,
            ..DetectionConfig::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in [Algorithm::Louvain, Algorithm::Leiden] {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("girvan-newman".parse::<Algorithm>().is_err());
    }
}
