use std::collections::HashSet;
use std::fs;
use std::path::Path;

use log::info;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::harness::config::ExperimentConfig;
use crate::harness::trial::{TrialContext, TrialRecord, TRIAL_CSV_HEADER};
use crate::stats::Welford;
use crate::theory::Verdict;

/// Environment variable holding the worker count.
pub const THREADS_ENV: &str = "COREMATCH_THREADS";

pub const SUMMARY_CSV_HEADER: [&str; 21] = [
    "parameter",
    "value",
    "trials",
    "failed_trials",
    "threshold",
    "frac_min_deg_at_least_threshold",
    "mean_min_deg_intersection",
    "sd_min_deg_intersection",
    "mean_core_size",
    "sd_core_size",
    "mean_fraction_matched",
    "sd_fraction_matched",
    "mean_errors_made",
    "sd_errors_made",
    "frac_zero_errors",
    "d_min_s2",
    "R",
    "verdict_exact",
    "verdict_partial",
    "mean_wall_time_ms",
    "sd_wall_time_ms",
];

/// Aggregate over the trials of one grid point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryRow {
    pub parameter: String,
    /// NaN when the configuration has no sweep.
    pub value: f64,
    pub trials: usize,
    pub failed_trials: usize,
    pub threshold: usize,
    pub frac_min_deg_at_least_threshold: f64,
    pub min_deg_intersection: Welford,
    pub core_size: Welford,
    pub fraction_matched: Welford,
    pub errors_made: Welford,
    pub frac_zero_errors: f64,
    pub d_min_s2: f64,
    #[serde(rename = "R")]
    pub r: Option<f64>,
    pub verdict_exact: Verdict,
    pub verdict_partial: Verdict,
    pub wall_time_ms: Welford,
}

impl SummaryRow {
    fn from_records(
        parameter: &str,
        value: f64,
        ctx: &TrialContext,
        records: &[TrialRecord],
    ) -> Self {
        let threshold = ctx.config.threshold();
        let ok: Vec<&TrialRecord> = records.iter().filter(|r| r.error.is_none()).collect();
        let share = |pred: &dyn Fn(&TrialRecord) -> bool| {
            if ok.is_empty() {
                0.0
            } else {
                ok.iter().filter(|r| pred(r)).count() as f64 / ok.len() as f64
            }
        };
        let welford = |field: &dyn Fn(&TrialRecord) -> f64| ok.iter().map(|r| field(r)).collect();
        SummaryRow {
            parameter: parameter.into(),
            value,
            trials: records.len(),
            failed_trials: records.len() - ok.len(),
            threshold,
            frac_min_deg_at_least_threshold: share(&|r| r.min_deg_intersection >= threshold),
            min_deg_intersection: welford(&|r| r.min_deg_intersection as f64),
            core_size: welford(&|r| r.core_size as f64),
            fraction_matched: welford(&|r| r.fraction_matched),
            errors_made: welford(&|r| r.errors_made as f64),
            frac_zero_errors: share(&|r| r.errors_made == 0),
            d_min_s2: ctx.d_min_s2,
            r: ctx.r,
            verdict_exact: ctx.verdict_exact,
            verdict_partial: ctx.verdict_partial,
            wall_time_ms: welford(&|r| r.wall_time_ms),
        }
    }

    pub fn csv_fields(&self) -> Vec<String> {
        let value = if self.value.is_nan() {
            String::new()
        } else {
            self.value.to_string()
        };
        let mut out = vec![
            self.parameter.clone(),
            value,
            self.trials.to_string(),
            self.failed_trials.to_string(),
            self.threshold.to_string(),
            self.frac_min_deg_at_least_threshold.to_string(),
        ];
        for w in [
            &self.min_deg_intersection,
            &self.core_size,
            &self.fraction_matched,
            &self.errors_made,
        ] {
            out.push(w.mean().to_string());
            out.push(w.std_dev().to_string());
        }
        out.push(self.frac_zero_errors.to_string());
        out.push(self.d_min_s2.to_string());
        out.push(self.r.map(|r| r.to_string()).unwrap_or_default());
        out.push(self.verdict_exact.as_str().into());
        out.push(self.verdict_partial.as_str().into());
        out.push(self.wall_time_ms.mean().to_string());
        out.push(self.wall_time_ms.std_dev().to_string());
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SummaryRow>,
    /// All trials, grid point by grid point, in trial order.
    pub records: Vec<TrialRecord>,
}

impl SweepResult {
    pub fn summary_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(SUMMARY_CSV_HEADER)?;
        for row in &self.rows {
            w.write_record(row.csv_fields())?;
        }
        w.into_inner()
            .map_err(|e| Error::Internal(format!("flushing summary csv: {e}")))
    }

    pub fn raw_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(TRIAL_CSV_HEADER)?;
        for r in &self.records {
            w.write_record(r.csv_fields())?;
        }
        w.into_inner()
            .map_err(|e| Error::Internal(format!("flushing trial csv: {e}")))
    }

    /// Writes the summary to `summary` and the trials to `raw`.
    pub fn write(&self, summary: &Path, raw: &Path) -> Result<()> {
        fs::write(summary, self.summary_csv()?).map_err(|e| Error::io(summary, e))?;
        fs::write(raw, self.raw_csv()?).map_err(|e| Error::io(raw, e))?;
        Ok(())
    }
}

/// Worker count: the explicit value, else `COREMATCH_THREADS`, else the
/// number of available cores.
pub fn resolve_threads(explicit: Option<usize>) -> Result<usize> {
    if let Some(t) = explicit {
        if t == 0 {
            return Err(Error::input("thread count must be at least 1"));
        }
        return Ok(t);
    }
    if let Ok(v) = std::env::var(THREADS_ENV) {
        return match v.trim().parse::<usize>() {
            Ok(t) if t > 0 => Ok(t),
            _ => Err(Error::input(format!("{THREADS_ENV}={v:?} is not a positive integer"))),
        };
    }
    Ok(std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Runs `trials` trials at every grid point. Grid point `g` uses stream
/// indices `g * trials .. (g + 1) * trials`, so no two trials share a stream.
/// Results are collected in index order and do not depend on `threads`.
pub fn run_sweep(config: &ExperimentConfig, threads: Option<usize>) -> Result<SweepResult> {
    config.validate()?;
    let grid = config.grid()?;
    let threads = resolve_threads(threads)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let trials = config.trials as u64;

    let mut seen = HashSet::new();
    let mut rows = Vec::with_capacity(grid.len());
    let mut records = Vec::with_capacity(grid.len() * config.trials);
    for (g, (name, value, point)) in grid.iter().enumerate() {
        let ctx = TrialContext::new(point)?;
        let start = (g as u64)
            .checked_mul(trials)
            .ok_or_else(|| Error::input("grid too large for stream indices"))?;
        let indices: Vec<u64> = (start..start + trials).collect();
        for &i in &indices {
            if !seen.insert(i) {
                return Err(Error::Internal(format!("stream index {i} used twice")));
            }
        }
        info!("grid point {name} = {value}: {trials} trials on {threads} threads");
        let point_records: Vec<TrialRecord> =
            pool.install(|| indices.par_iter().map(|&i| ctx.run(i)).collect::<Result<_>>())?;
        rows.push(SummaryRow::from_records(name, *value, &ctx, &point_records));
        records.extend(point_records);
    }
    Ok(SweepResult { rows, records })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::{Mode, Sweep, SweepParameter};
    use crate::models::ModelSpec;

    fn config() -> ExperimentConfig {
        ExperimentConfig {
            model: ModelSpec::er(60, 0.1),
            s: 0.9,
            k: 2,
            trials: 5,
            master_seed: 3,
            sweep: Some(Sweep {
                parameter: SweepParameter::S,
                values: vec![0.5, 0.9, 1.0],
            }),
            mode: Mode::CoreSize,
            output_path: None,
            alpha: 1.0,
            epsilon: 0.1,
            min_degree_threshold: None,
            timing: false,
            inject_fault: None,
        }
    }

    #[test]
    fn row_counts_and_indices() {
        let out = run_sweep(&config(), Some(2)).unwrap();
        assert_eq!(out.rows.len(), 3);
        assert_eq!(out.records.len(), 15);
        let idx: Vec<u64> = out.records.iter().map(|r| r.trial_index).collect();
        assert_eq!(idx, (0..15).collect::<Vec<_>>());
        assert!(out.rows.iter().all(|r| r.trials == 5));
    }

    #[test]
    fn headers_are_stable() {
        let out = run_sweep(&config(), Some(1)).unwrap();
        let raw = String::from_utf8(out.raw_csv().unwrap()).unwrap();
        assert_eq!(
            raw.lines().next().unwrap(),
            "trial_index,seed,n,s,k,min_deg_intersection,core_size,fraction_matched,errors_made,d_min_s2,R,verdict_exact,verdict_partial,wall_time_ms"
        );
        let summary = String::from_utf8(out.summary_csv().unwrap()).unwrap();
        assert_eq!(summary.lines().count(), 4);
    }

    #[test]
    fn thread_count_does_not_change_output() {
        let a = run_sweep(&config(), Some(1)).unwrap();
        let b = run_sweep(&config(), Some(4)).unwrap();
        assert_eq!(a.raw_csv().unwrap(), b.raw_csv().unwrap());
        assert_eq!(a.summary_csv().unwrap(), b.summary_csv().unwrap());
    }

    #[test]
    fn empty_grid_is_rejected() {
        let mut c = config();
        c.sweep.as_mut().unwrap().values.clear();
        assert!(matches!(run_sweep(&c, Some(1)), Err(Error::Input(_))));
    }

    #[test]
    fn zero_threads_rejected() {
        assert!(resolve_threads(Some(0)).is_err());
        assert_eq!(resolve_threads(Some(3)).unwrap(), 3);
    }
}
