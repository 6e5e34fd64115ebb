//! JSON run configuration.

use nalgebra::Vector3;
use serde::Deserialize;

use super::CliError;
use crate::dynamics::DensityMatrix;
use crate::entanglement::ProductState;
use crate::linalg::{Mat4, C64};
use crate::spectral::{Beta, ModelParams};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub omega: f64,
    #[serde(default)]
    pub beta: Option<BetaSpec>,
    #[serde(default)]
    pub ell: Option<f64>,
    #[serde(default = "default_axis")]
    pub n: [f64; 3],
    #[serde(default)]
    pub initial_state: Option<InitialState>,
    #[serde(default)]
    pub time_grid: Option<TimeGrid>,
    #[serde(default)]
    pub sweep: Option<SweepSpec>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub include_hs: bool,
}

fn default_axis() -> [f64; 3] {
    [0.0, 0.0, 1.0]
}

/// A positive number, or the string `"inf"` for zero temperature.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum BetaSpec {
    Value(f64),
    Text(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialState {
    Product {
        bloch1: [f64; 3],
        bloch2: [f64; 3],
    },
    Named(NamedState),
    /// 16 entries, row-major, each `[re, im]`.
    Matrix(Vec<[f64; 2]>),
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedState {
    Singlet,
    Canonical,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum TimeGrid {
    Uniform { t_max: f64, n_samples: usize },
    Explicit(Vec<f64>),
}

/// `[min, max, steps]` for each axis; `steps` points with both ends included.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub beta_omega: [f64; 3],
    pub omega_ell: [f64; 3],
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Oracle/discriminant disagreement is fatal only where `|R²+S²−1|` exceeds this.
    pub oracle_band: f64,
    /// Oracle step in units of `1/ω`.
    pub oracle_dt: f64,
    pub null_space: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            oracle_band: 1e-3,
            oracle_dt: 1e-3,
            null_space: crate::asymptotic::NULL_SPACE_TOL,
        }
    }
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig =
            serde_json::from_str(text).map_err(|e| config_err(format!("malformed config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(config_err("omega must be a positive number"));
        }
        crate::spectral::check_unit(&self.axis()).map_err(|e| config_err(e.to_string()))?;
        self.beta()?;
        if let Some(ell) = self.ell {
            if !(ell.is_finite() && ell >= 0.0) {
                return Err(config_err("ell must be non-negative"));
            }
        }
        let t = &self.tolerances;
        if [t.oracle_band, t.oracle_dt, t.null_space]
            .iter()
            .any(|x| !(x.is_finite() && *x > 0.0))
        {
            return Err(config_err("tolerances must be positive"));
        }
        Ok(())
    }

    pub fn axis(&self) -> Vector3<f64> {
        Vector3::from(self.n)
    }

    pub fn beta(&self) -> Result<Option<Beta>, CliError> {
        match &self.beta {
            None => Ok(None),
            Some(BetaSpec::Value(b)) if b.is_finite() && *b > 0.0 => Ok(Some(Beta::Finite(*b))),
            Some(BetaSpec::Text(s)) if matches!(s.as_str(), "inf" | "infinity" | "Infinity") => {
                Ok(Some(Beta::Infinite))
            }
            Some(other) => Err(config_err(format!(
                "beta must be a positive number or \"inf\", got {other:?}"
            ))),
        }
    }

    /// Model parameters for commands that need a single `(β, ℓ)` point.
    pub fn params(&self) -> Result<ModelParams, CliError> {
        let beta = self
            .beta()?
            .ok_or_else(|| config_err("missing field `beta`"))?;
        let ell = self.ell.ok_or_else(|| config_err("missing field `ell`"))?;
        ModelParams::new(self.omega, beta, ell, self.axis()).map_err(|e| config_err(e.to_string()))
    }

    /// Initial state; the canonical `|−⟩⊗|+⟩` when none is given.
    pub fn initial_state(&self) -> Result<DensityMatrix, CliError> {
        let n = self.axis();
        let named = |s: NamedState| match s {
            NamedState::Singlet => Ok(DensityMatrix::singlet()),
            NamedState::Canonical => ProductState::canonical(&n).map(|p| p.density_matrix()),
        };
        let state = match &self.initial_state {
            None => named(NamedState::Canonical),
            Some(InitialState::Named(s)) => named(*s),
            Some(InitialState::Product { bloch1, bloch2 }) => {
                ProductState::new(Vector3::from(*bloch1), Vector3::from(*bloch2))
                    .map(|p| p.density_matrix())
            }
            Some(InitialState::Matrix(entries)) => {
                if entries.len() != 16 {
                    return Err(config_err(format!(
                        "matrix initial state needs 16 entries, got {}",
                        entries.len()
                    )));
                }
                let m = Mat4::from_fn(|r, c| {
                    let [re, im] = entries[4 * r + c];
                    C64::new(re, im)
                });
                DensityMatrix::new(m)
            }
        };
        state.map_err(|e| config_err(format!("initial state: {e}")))
    }

    /// Sample times in physical units.
    pub fn times(&self) -> Result<Vec<f64>, CliError> {
        match &self.time_grid {
            None => Err(config_err("missing field `time_grid`")),
            Some(TimeGrid::Uniform { t_max, n_samples }) => {
                if !(t_max.is_finite() && *t_max > 0.0) || *n_samples == 0 {
                    return Err(config_err("time_grid needs t_max > 0 and n_samples ≥ 1"));
                }
                if *n_samples == 1 {
                    return Ok(vec![0.0]);
                }
                let step = t_max / (*n_samples - 1) as f64;
                Ok((0..*n_samples)
                    .map(|k| {
                        if k + 1 == *n_samples {
                            *t_max
                        } else {
                            k as f64 * step
                        }
                    })
                    .collect())
            }
            Some(TimeGrid::Explicit(ts)) => {
                if ts.is_empty()
                    || ts.iter().any(|t| !(t.is_finite() && *t >= 0.0))
                    || ts.windows(2).any(|w| w[1] <= w[0])
                {
                    return Err(config_err(
                        "explicit time grid must be non-empty, non-negative and strictly increasing",
                    ));
                }
                Ok(ts.clone())
            }
        }
    }
}

/// `steps` evenly spaced points from `min` to `max` inclusive.
pub fn linspace(spec: &[f64; 3], name: &str) -> Result<Vec<f64>, CliError> {
    let [lo, hi, steps] = *spec;
    if !(lo.is_finite() && hi.is_finite() && hi >= lo) {
        return Err(config_err(format!("sweep `{name}` needs finite min ≤ max")));
    }
    if !(steps >= 1.0 && steps.fract() == 0.0) {
        return Err(config_err(format!(
            "sweep `{name}` steps must be a positive integer"
        )));
    }
    let steps = steps as usize;
    if steps == 1 {
        return Ok(vec![lo]);
    }
    let h = (hi - lo) / (steps - 1) as f64;
    Ok((0..steps)
        .map(|k| {
            if k + 1 == steps {
                hi
            } else {
                lo + k as f64 * h
            }
        })
        .collect())
}
