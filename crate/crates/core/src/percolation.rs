//! Vertex percolation: each vertex is kept independently with probability
//! `x`, and the statistic of interest is the largest connected cluster of
//! kept vertices. A sweep couples the densities within each trial by
//! drawing one uniform value per vertex and thresholding it at every
//! density, so cluster sizes are monotone in `x` trial by trial.
//!
//! All randomness derives deterministically from the caller's seed; trials
//! are independent streams, so the sweep is reproducible regardless of how
//! many worker threads execute it.

use crate::graph::Graph;
use crate::seeding::derive_seed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum PercolationError {
    #[error("density {x} is outside the valid range")]
    DensityOutOfRange { x: f64 },
    #[error("sweep needs at least one trial")]
    NoTrials,
    #[error("sweep needs at least one density")]
    NoDensities,
    #[error("quantile {q} is outside (0, 1]")]
    QuantileOutOfRange { q: f64 },
}

/// One percolation draw: vertex `v` is kept when its uniform sample falls
/// below `x`. The same seed always yields the same uniform values, so for
/// fixed seed the kept set grows with `x`.
pub fn sample_percolation(g: &Graph, x: f64, seed: u64) -> Result<Vec<bool>, PercolationError> {
    if !(0.0..=1.0).contains(&x) {
        return Err(PercolationError::DensityOutOfRange { x });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..g.vertex_count()).map(|_| rng.gen::<f64>() < x).collect())
}

/// Cluster census of one kept set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClusterStatistics {
    pub included: usize,
    pub max_cluster: usize,
    /// cluster size -> number of clusters of that size.
    pub histogram: BTreeMap<usize, usize>,
}

pub fn cluster_statistics(g: &Graph, included: &[bool]) -> ClusterStatistics {
    let mut histogram = BTreeMap::new();
    let mut max_cluster = 0;
    for comp in g.components_within(included) {
        *histogram.entry(comp.len()).or_insert(0) += 1;
        max_cluster = max_cluster.max(comp.len());
    }
    ClusterStatistics {
        included: included.iter().filter(|&&b| b).count(),
        max_cluster,
        histogram,
    }
}

/// Largest cluster size without materialising the components.
fn max_cluster(g: &Graph, member: &[bool]) -> usize {
    let mut seen = vec![false; member.len()];
    let mut stack = Vec::new();
    let mut best = 0;
    for start in 0..member.len() {
        if !member[start] || seen[start] {
            continue;
        }
        seen[start] = true;
        stack.push(start);
        let mut size = 0;
        while let Some(v) = stack.pop() {
            size += 1;
            for &w in g.neighbors(v) {
                if member[w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        best = best.max(size);
    }
    best
}

/// Sweep parameters. `quantile` defaults to 0.99 when deserialized from a
/// config without one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Inclusion probabilities, each in `(0, 1]`.
    pub densities: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    #[serde(default = "default_quantile")]
    pub quantile: f64,
    /// A density "qualifies" when its quantile cluster size is at most this.
    pub cluster_threshold: usize,
}

fn default_quantile() -> f64 {
    0.99
}

/// Per-density summary over all trials. The summary fields are recomputable
/// from `per_trial`, which is kept in trial order for the long-format CSV
/// export; JSON serialization carries only the summary.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityReport {
    pub density: f64,
    /// Smallest cluster size that at least the configured fraction of
    /// trials stayed within.
    pub quantile_value: usize,
    pub max_observed: usize,
    pub mean_max: f64,
    /// Max cluster size of each trial, indexed by trial number.
    #[serde(skip)]
    pub per_trial: Vec<usize>,
}

/// Heuristic colour-count readout from a sweep: if clusters stay below the
/// threshold at density `x`, then `1/x` random colour classes of that
/// density empirically keep monochromatic clusters that small. This is a
/// sampled observation, not a proof, hence the fixed `ESTIMATE` label.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ColorEstimate {
    pub density: f64,
    pub colors: f64,
    pub label: &'static str,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub trials: usize,
    pub quantile: f64,
    pub cluster_threshold: usize,
    pub densities: Vec<DensityReport>,
    /// Largest qualifying density, when any qualifies.
    pub estimate: Option<ColorEstimate>,
}

fn quantile_of(sorted: &[usize], q: f64) -> usize {
    let n = sorted.len();
    let rank = ((q * n as f64).ceil() as usize).clamp(1, n);
    sorted[rank - 1]
}

/// Runs `trials` independent percolation trials, evaluates every density on
/// each trial's shared uniform draw, and summarises per density. Trials run
/// in parallel; results do not depend on the thread count.
pub fn percolation_sweep(g: &Graph, config: &SweepConfig) -> Result<SweepReport, PercolationError> {
    if config.trials == 0 {
        return Err(PercolationError::NoTrials);
    }
    if config.densities.is_empty() {
        return Err(PercolationError::NoDensities);
    }
    for &x in &config.densities {
        if !(x > 0.0 && x <= 1.0) {
            return Err(PercolationError::DensityOutOfRange { x });
        }
    }
    if !(config.quantile > 0.0 && config.quantile <= 1.0) {
        return Err(PercolationError::QuantileOutOfRange { q: config.quantile });
    }
    let per_trial: Vec<Vec<usize>> = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(config.seed, t as u64));
            let u: Vec<f64> = (0..g.vertex_count()).map(|_| rng.gen::<f64>()).collect();
            config
                .densities
                .iter()
                .map(|&x| {
                    let member: Vec<bool> = u.iter().map(|&uv| uv < x).collect();
                    max_cluster(g, &member)
                })
                .collect()
        })
        .collect();
    let mut densities = Vec::with_capacity(config.densities.len());
    for (i, &x) in config.densities.iter().enumerate() {
        let by_trial: Vec<usize> = per_trial.iter().map(|row| row[i]).collect();
        let mut samples = by_trial.clone();
        samples.sort_unstable();
        let quantile_value = quantile_of(&samples, config.quantile);
        let max_observed = *samples.last().expect("trials >= 1");
        let mean_max = samples.iter().sum::<usize>() as f64 / samples.len() as f64;
        densities.push(DensityReport {
            density: x,
            quantile_value,
            max_observed,
            mean_max,
            per_trial: by_trial,
        });
    }
    let estimate = densities
        .iter()
        .filter(|r| r.quantile_value <= config.cluster_threshold)
        .max_by(|a, b| a.density.partial_cmp(&b.density).expect("densities are finite"))
        .map(|r| ColorEstimate {
            density: r.density,
            colors: (1.0 / r.density).max(1.0),
            label: "ESTIMATE",
        });
    Ok(SweepReport {
        trials: config.trials,
        quantile: config.quantile,
        cluster_threshold: config.cluster_threshold,
        densities,
        estimate,
    })
}
