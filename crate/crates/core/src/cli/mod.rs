//! Command implementations behind the `bath-entanglement` binary.
//!
//! Each command takes a validated [`RunConfig`] and returns the bytes destined
//! for standard output (or `--out`). Exit codes: 2 configuration, 3 onset test
//! and oracle disagree, 4 positivity failure, 5 convergence failure, 1 other.

mod config;

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::asymptotic::{
    asymptotic_concurrence, asymptotic_state, stationary_basis, threshold_tau,
};
use crate::dynamics::{build_superoperator, evolve_traj, tau};
use crate::entanglement::{
    concurrence, criterion_rs, generation_test, min_eig_pt, small_time_ppt_oracle, ProductState,
    Verdict,
};
use crate::error::Error;
use crate::spectral::{build_kossakowski_closed, kossakowski_coefficients, ModelParams};

pub use config::{
    linspace, BetaSpec, InitialState, NamedState, RunConfig, SweepSpec, TimeGrid, Tolerances,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("onset test and oracle disagree at {0} grid point(s)")]
    Disagreement(usize),
    #[error("{0}")]
    Positivity(String),
    #[error("{0}")]
    Convergence(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Disagreement(_) => 3,
            CliError::Positivity(_) => 4,
            CliError::Convergence(_) => 5,
            CliError::Io(_) | CliError::Other(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(m) => CliError::Config(m),
            Error::NumericalFailure(m) => CliError::Positivity(m),
            Error::Convergence(m) => CliError::Convergence(m),
            Error::Internal(m) => CliError::Other(m),
        }
    }
}

/// Run `f` on a dedicated pool of `threads` workers, or the global pool.
pub fn with_threads<T: Send>(
    threads: Option<usize>,
    f: impl FnOnce() -> T + Send,
) -> Result<T, CliError> {
    match threads {
        None => Ok(f()),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| CliError::Other(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

/// Fixed 17-significant-digit float format used in every CSV.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// `{A, B, C, A', B', C', R, S}` as a JSON document.
pub fn cmd_coefficients(cfg: &RunConfig) -> Result<String, CliError> {
    let params = cfg.params()?;
    let k = kossakowski_coefficients(&params)?;
    let rs = criterion_rs(&params)?;
    let doc = json!({
        "A": k.a, "B": k.b, "C": k.c,
        "A'": k.a_p, "B'": k.b_p, "C'": k.c_p,
        "R": rs.r, "S": rs.s,
    });
    Ok(serde_json::to_string_pretty(&doc).expect("serializable") + "\n")
}

/// One grid point of a phase diagram.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRecord {
    pub beta_omega: f64,
    pub omega_ell: f64,
    #[serde(rename = "R")]
    pub r: f64,
    #[serde(rename = "S")]
    pub s: f64,
    pub rs_margin: f64,
    pub discriminant_margin: f64,
    pub generated: Verdict,
    pub oracle_generated: bool,
    /// Asymptotic concurrence of the canonical state, for `ℓ = 0` rows.
    pub asympt_concurrence: Option<f64>,
    pub stationary_dim: usize,
}

impl SweepRecord {
    /// Discriminant and oracle disagree where the oracle is trusted.
    pub fn disagrees(&self, band: f64) -> bool {
        self.generated != Verdict::Boundary
            && self.rs_margin.abs() > band
            && self.generated.is_generated() != self.oracle_generated
    }
}

pub const PHASE_DIAGRAM_HEADER: &str =
    "beta_omega,omega_ell,R,S,rs_margin,discriminant_margin,generated,oracle_generated";

pub fn sweep_point(
    cfg: &RunConfig,
    beta_omega: f64,
    omega_ell: f64,
) -> Result<SweepRecord, CliError> {
    let params = ModelParams::from_groups(cfg.omega, Some(beta_omega), omega_ell, cfg.axis())?;
    let k = build_kossakowski_closed(&params)?;
    let state = ProductState::canonical(&params.n)?;
    let verdict = generation_test(&state, &k)?;
    let rs = criterion_rs(&params)?;
    let m = build_superoperator(&k, cfg.include_hs, &params);
    let dt = cfg.tolerances.oracle_dt / cfg.omega;
    let oracle = small_time_ppt_oracle(&m, &state.density_matrix(), dt)?;
    let stationary_dim = stationary_basis(&m, cfg.tolerances.null_space)?.len();
    Ok(SweepRecord {
        beta_omega,
        omega_ell,
        r: rs.r,
        s: rs.s,
        rs_margin: rs.rs_margin,
        discriminant_margin: verdict.margin,
        generated: verdict.verdict,
        oracle_generated: oracle,
        asympt_concurrence: (params.ell == 0.0).then(|| asymptotic_concurrence(rs.r, -1.0)),
        stationary_dim,
    })
}

pub struct PhaseDiagram {
    pub records: Vec<SweepRecord>,
    pub csv: String,
    pub disagreements: usize,
}

/// Canonical-state onset verdicts over the `(βω, ωℓ)` sweep, row-major in
/// `beta_omega`. Points are evaluated in parallel and emitted in grid order.
pub fn cmd_phase_diagram(cfg: &RunConfig) -> Result<PhaseDiagram, CliError> {
    let sweep = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::Config("missing field `sweep`".into()))?;
    let bw = linspace(&sweep.beta_omega, "beta_omega")?;
    let wl = linspace(&sweep.omega_ell, "omega_ell")?;
    if bw[0] <= 0.0 || wl[0] < 0.0 {
        return Err(CliError::Config(
            "sweep needs beta_omega > 0 and omega_ell ≥ 0".into(),
        ));
    }
    let grid: Vec<(f64, f64)> = bw
        .iter()
        .flat_map(|b| wl.iter().map(move |l| (*b, *l)))
        .collect();
    let records = grid
        .par_iter()
        .map(|&(b, l)| sweep_point(cfg, b, l))
        .collect::<Result<Vec<_>, _>>()?;

    let mut csv = String::from(PHASE_DIAGRAM_HEADER);
    csv.push('\n');
    for r in &records {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{}",
            fmt_float(r.beta_omega),
            fmt_float(r.omega_ell),
            fmt_float(r.r),
            fmt_float(r.s),
            fmt_float(r.rs_margin),
            fmt_float(r.discriminant_margin),
            r.generated,
            r.oracle_generated,
        );
    }
    let disagreements = records
        .iter()
        .filter(|r| r.disagrees(cfg.tolerances.oracle_band))
        .count();
    Ok(PhaseDiagram {
        records,
        csv,
        disagreements,
    })
}

pub const EVOLVE_HEADER: &str = "t,trace,min_eig,min_eig_pt,concurrence,tau";

pub struct EvolveOutput {
    pub csv: String,
    /// Sidecar with the comparison of the last sample against the asymptotic state.
    pub summary: serde_json::Value,
}

/// Trajectory table; the `t` column is `ω t`.
pub fn cmd_evolve(cfg: &RunConfig) -> Result<EvolveOutput, CliError> {
    let params = cfg.params()?;
    let rho0 = cfg.initial_state()?;
    let times = cfg.times()?;
    let k = build_kossakowski_closed(&params)?;
    let m = build_superoperator(&k, cfg.include_hs, &params);
    let traj = evolve_traj(&m, &rho0, &times)?;

    let mut csv = String::from(EVOLVE_HEADER);
    csv.push('\n');
    for (t, rho) in traj.iter() {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{}",
            fmt_float(t * params.omega),
            fmt_float(rho.trace()),
            fmt_float(rho.min_eigenvalue()),
            fmt_float(min_eig_pt(rho)),
            fmt_float(concurrence(rho)),
            fmt_float(tau(rho)),
        );
    }

    let last = traj.states.last().expect("non-empty grid");
    let asymptote = match asymptotic_state(&m, &rho0, &params) {
        Ok(a) => json!({
            "stationary_dim": a.stationary_dim,
            "concurrence": concurrence(&a.rho),
            "distance_to_final_sample": last.trace_distance(&a.rho),
            "convergence_distance": a.convergence_distance,
        }),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let summary = json!({
        "final_time": traj.times.last().copied().unwrap_or(0.0) * params.omega,
        "final_concurrence": concurrence(last),
        "rk_deviation": traj.rk_deviation,
        "asymptotic": asymptote,
    });
    Ok(EvolveOutput { csv, summary })
}

/// `{stationary_dim, rho_infinity, concurrence, tau, threshold_tau}`.
pub fn cmd_asymptotic(cfg: &RunConfig) -> Result<String, CliError> {
    let params = cfg.params()?;
    let rho0 = cfg.initial_state()?;
    let k = build_kossakowski_closed(&params)?;
    let m = build_superoperator(&k, cfg.include_hs, &params);
    let a = asymptotic_state(&m, &rho0, &params)?;
    let rho = a.rho.matrix();
    let entries: Vec<[f64; 2]> = (0..16)
        .map(|i| {
            let z = rho[(i / 4, i % 4)];
            [z.re, z.im]
        })
        .collect();
    let doc = json!({
        "stationary_dim": a.stationary_dim,
        "rho_infinity": entries,
        "concurrence": concurrence(&a.rho),
        "tau": tau(&a.rho),
        "threshold_tau": threshold_tau(criterion_rs(&params)?.r),
    });
    Ok(serde_json::to_string_pretty(&doc).expect("serializable") + "\n")
}
