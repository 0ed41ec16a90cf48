use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matching::BRUTE_FORCE_LIMIT;
use crate::models::ModelSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Minimum degree of the true intersection graph.
    MinDegree,
    /// Size of the k-core of the true intersection graph.
    CoreSize,
    /// Runs the brute-force estimator and scores it against the truth.
    BruteForce,
    /// Per-trial measurements together with the condition verdicts.
    Bounds,
    /// Lemma-level checks; see [`verify_lemmas`](super::verify_lemmas).
    Lemmas,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::MinDegree => "min-degree",
            Mode::CoreSize => "core-size",
            Mode::BruteForce => "brute-force",
            Mode::Bounds => "bounds",
            Mode::Lemmas => "lemmas",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "min-degree" => Mode::MinDegree,
            "core-size" => Mode::CoreSize,
            "brute-force" => Mode::BruteForce,
            "bounds" => Mode::Bounds,
            "lemmas" => Mode::Lemmas,
            other => return Err(Error::input(format!("unknown mode {other:?}"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParameter {
    S,
    K,
    /// Edge probability of an ER model.
    P,
    /// ER edge probability `lambda * ln(n) / (n s^2)`.
    Lambda,
}

impl SweepParameter {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepParameter::S => "s",
            SweepParameter::K => "k",
            SweepParameter::P => "p",
            SweepParameter::Lambda => "lambda",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sweep {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
}

fn default_alpha() -> f64 {
    1.0
}

fn default_epsilon() -> f64 {
    0.1
}

/// One experiment, read from a JSON file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: ModelSpec,
    pub s: f64,
    pub k: usize,
    pub trials: usize,
    pub master_seed: u64,
    #[serde(default)]
    pub sweep: Option<Sweep>,
    pub mode: Mode,
    /// Summary CSV (or lemma report JSON). Per-trial rows go next to it; see
    /// [`ExperimentConfig::raw_output_path`].
    #[serde(default)]
    pub output_path: Option<PathBuf>,
    /// Sparsity exponent for the exact-recovery condition.
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    /// Summaries report the fraction of trials whose intersection minimum
    /// degree reaches this value; defaults to `k`.
    #[serde(default)]
    pub min_degree_threshold: Option<usize>,
    /// Record wall-clock time per trial. Off by default so that output is
    /// reproducible byte for byte.
    #[serde(default)]
    pub timing: bool,
    /// Name of a lemma check whose verdict is flipped (testing hook).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inject_fault: Option<String>,
}

impl ExperimentConfig {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let config: ExperimentConfig = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json_str(&text)
    }

    pub fn threshold(&self) -> usize {
        self.min_degree_threshold.unwrap_or(self.k)
    }

    /// `<stem>_trials.csv` next to the summary file.
    pub fn raw_output_path(&self) -> Option<PathBuf> {
        self.output_path.as_ref().map(|p| raw_path_for(p))
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::input("trials must be at least 1"));
        }
        if let Some(sweep) = &self.sweep {
            if sweep.values.is_empty() {
                return Err(Error::input(format!(
                    "sweep over {} has no values",
                    sweep.parameter.as_str()
                )));
            }
            for &v in &sweep.values {
                self.with_value(sweep.parameter, v)?.validate_point()?;
            }
        } else {
            self.validate_point()?;
        }
        Ok(())
    }

    fn validate_point(&self) -> Result<()> {
        self.model.validate()?;
        if !(0.0..=1.0).contains(&self.s) {
            return Err(Error::input(format!("s = {} is not in [0, 1]", self.s)));
        }
        if !(self.alpha > 0.5 && self.alpha <= 1.0) {
            return Err(Error::input(format!("alpha = {} is not in (1/2, 1]", self.alpha)));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::input(format!("epsilon = {} must be positive", self.epsilon)));
        }
        if self.mode == Mode::BruteForce {
            let n = self.model.n();
            if n > BRUTE_FORCE_LIMIT {
                return Err(Error::Capacity {
                    what: "vertex count for brute-force mode",
                    got: n,
                    limit: BRUTE_FORCE_LIMIT,
                });
            }
            if self.k == 0 {
                return Err(Error::input("brute-force mode needs k >= 1"));
            }
        }
        Ok(())
    }

    /// The configuration at one grid point.
    pub fn with_value(&self, parameter: SweepParameter, value: f64) -> Result<Self> {
        let mut out = self.clone();
        out.sweep = None;
        match parameter {
            SweepParameter::S => out.s = value,
            SweepParameter::K => {
                if !(value >= 0.0 && value.fract() == 0.0 && value < 1e9) {
                    return Err(Error::input(format!("k = {value} is not a nonnegative integer")));
                }
                out.k = value as usize;
            }
            SweepParameter::P | SweepParameter::Lambda => {
                let ModelSpec::Er { n, .. } = self.model else {
                    return Err(Error::input(format!(
                        "sweeping {} needs an er model, got {}",
                        parameter.as_str(),
                        self.model.name()
                    )));
                };
                let p = if parameter == SweepParameter::P {
                    value
                } else {
                    if self.s <= 0.0 || n < 2 {
                        return Err(Error::input("lambda sweep needs s > 0 and n >= 2"));
                    }
                    value * (n as f64).ln() / (n as f64 * self.s * self.s)
                };
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::input(format!(
                        "{} = {value} gives edge probability {p} outside [0, 1]",
                        parameter.as_str()
                    )));
                }
                out.model = ModelSpec::er(n, p);
            }
        }
        Ok(out)
    }

    /// Grid points as `(parameter name, value, config)`. A config without a
    /// sweep is a single point named `none`.
    pub fn grid(&self) -> Result<Vec<(String, f64, ExperimentConfig)>> {
        match &self.sweep {
            None => Ok(vec![("none".into(), f64::NAN, self.clone())]),
            Some(sweep) => {
                if sweep.values.is_empty() {
                    return Err(Error::input("sweep grid is empty"));
                }
                sweep
                    .values
                    .iter()
                    .map(|&v| {
                        let point = self.with_value(sweep.parameter, v)?;
                        Ok((sweep.parameter.as_str().to_string(), v, point))
                    })
                    .collect()
            }
        }
    }
}

pub fn raw_path_for(summary: &Path) -> PathBuf {
    let stem = summary
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "results".into());
    summary.with_file_name(format!("{stem}_trials.csv"))
}
