use std::time::Instant;

use serde::Serialize;

use crate::error::Result;
use crate::graph::k_core;
use crate::harness::config::{ExperimentConfig, Mode};
use crate::matching::{brute_force_k_core_estimator, true_intersection};
use crate::models::{build_probabilities, sample_correlated_pair, EdgeProbabilities};
use crate::rng::RngStream;
use crate::theory::{check_exact_condition, check_partial_condition, Verdict};

/// Column order of the per-trial CSV.
pub const TRIAL_CSV_HEADER: [&str; 14] = [
    "trial_index",
    "seed",
    "n",
    "s",
    "k",
    "min_deg_intersection",
    "core_size",
    "fraction_matched",
    "errors_made",
    "d_min_s2",
    "R",
    "verdict_exact",
    "verdict_partial",
    "wall_time_ms",
];

/// Measurements from one sampled correlated pair.
///
/// `core_size` and `min_deg_intersection` always refer to the true
/// intersection graph. `fraction_matched` and `errors_made` describe the
/// brute-force estimator in brute-force mode and the ground-truth core
/// matching otherwise (which makes no errors by construction).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial_index: u64,
    pub seed: u64,
    pub n: usize,
    pub s: f64,
    pub k: usize,
    pub min_deg_intersection: usize,
    pub core_size: usize,
    pub fraction_matched: f64,
    pub errors_made: usize,
    pub d_min_s2: f64,
    #[serde(rename = "R")]
    pub r: Option<f64>,
    pub verdict_exact: Verdict,
    pub verdict_partial: Verdict,
    pub wall_time_ms: f64,
    /// Set when the trial hit a capacity limit; measurements are then zero.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl TrialRecord {
    pub fn csv_fields(&self) -> [String; 14] {
        [
            self.trial_index.to_string(),
            self.seed.to_string(),
            self.n.to_string(),
            self.s.to_string(),
            self.k.to_string(),
            self.min_deg_intersection.to_string(),
            self.core_size.to_string(),
            self.fraction_matched.to_string(),
            self.errors_made.to_string(),
            self.d_min_s2.to_string(),
            self.r.map(|r| r.to_string()).unwrap_or_default(),
            self.verdict_exact.as_str().to_string(),
            self.verdict_partial.as_str().to_string(),
            self.wall_time_ms.to_string(),
        ]
    }
}

/// Everything a trial needs that does not depend on the trial index.
#[derive(Clone, Debug)]
pub struct TrialContext {
    pub config: ExperimentConfig,
    pub probs: EdgeProbabilities,
    pub d_min_s2: f64,
    pub r: Option<f64>,
    pub verdict_exact: Verdict,
    pub verdict_partial: Verdict,
}

impl TrialContext {
    pub fn new(config: &ExperimentConfig) -> Result<Self> {
        let probs = build_probabilities(&config.model)?;
        let exact = check_exact_condition(
            &config.model,
            config.s,
            config.alpha,
            config.epsilon,
            config.k,
        )?;
        let partial = check_partial_condition(&config.model, config.s)?;
        Ok(TrialContext {
            config: config.clone(),
            probs,
            d_min_s2: exact.surrogates.d_min * config.s * config.s,
            r: exact.surrogates.r,
            verdict_exact: exact.verdict,
            verdict_partial: partial.verdict,
        })
    }

    /// Runs the trial drawing from stream `stream_index`.
    pub fn run(&self, stream_index: u64) -> Result<TrialRecord> {
        let cfg = &self.config;
        let started = Instant::now();
        let stream = RngStream::new(cfg.master_seed, stream_index);
        let n = self.probs.n();
        let mut record = TrialRecord {
            trial_index: stream_index,
            seed: stream.seed(),
            n,
            s: cfg.s,
            k: cfg.k,
            min_deg_intersection: 0,
            core_size: 0,
            fraction_matched: 0.0,
            errors_made: 0,
            d_min_s2: self.d_min_s2,
            r: self.r,
            verdict_exact: self.verdict_exact,
            verdict_partial: self.verdict_partial,
            wall_time_ms: 0.0,
            error: None,
        };

        let pair = sample_correlated_pair(&self.probs, cfg.s, &stream)?;
        let inter = true_intersection(&pair);
        record.min_deg_intersection = (0..n).map(|v| inter.neighbors(v).len()).min().unwrap_or(0);
        record.core_size = k_core(&inter, cfg.k).len();
        let denom = n.max(1) as f64;

        if cfg.mode == Mode::BruteForce {
            match brute_force_k_core_estimator(&pair.g1, &pair.g2, cfg.k) {
                Ok(estimate) => {
                    record.fraction_matched = estimate.len() as f64 / denom;
                    record.errors_made = estimate.error_count(&pair.pi_star);
                }
                Err(e @ crate::Error::Capacity { .. }) => record.error = Some(e.to_string()),
                Err(e) => return Err(e),
            }
        } else {
            record.fraction_matched = record.core_size as f64 / denom;
        }

        if cfg.timing {
            record.wall_time_ms = started.elapsed().as_secs_f64() * 1e3;
        }
        Ok(record)
    }
}

/// Runs one trial of `config` on stream `trial_index`. Sweeps should build a
/// [`TrialContext`] once per grid point instead.
pub fn run_trial(config: &ExperimentConfig, trial_index: u64) -> Result<TrialRecord> {
    config.validate()?;
    TrialContext::new(config)?.run(trial_index)
}
