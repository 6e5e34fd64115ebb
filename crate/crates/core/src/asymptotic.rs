//! Long-time behaviour: stationary states of the semigroup.
//!
//! At vanishing separation the generator is collective, the singlet is dark
//! and `τ = Σ_i ⟨σ_i⊗σ_i⟩` is conserved, so the stationary states form a
//! one-parameter family labelled by `τ`. For any finite separation the
//! stationary state is unique.

use log::debug;
use nalgebra::Vector3;

use crate::dynamics::{evolve, pauli_op, tau, DensityMatrix, Superoperator};
use crate::entanglement::criterion_rs;
use crate::error::{invalid, Error, Result};
use crate::linalg::{kron2, pauli_basis, sigma, Mat4, Vec16, C64};
use crate::spectral::ModelParams;

/// Singular values below this fraction of the largest count as zero.
pub const NULL_SPACE_TOL: f64 = 1e-10;
/// Trace-norm distance allowed between the predicted state and long-time
/// evolution.
pub const CONVERGENCE_TOL: f64 = 1e-8;
/// Long-time check runs to this many relaxation times.
pub const RELAXATION_TIMES: f64 = 200.0;

/// Hilbert–Schmidt orthonormal Hermitian basis of the kernel of `M`.
pub fn stationary_basis(m: &Superoperator, tol: f64) -> Result<Vec<Mat4>> {
    let real = m.real_representation();
    let svd = real.svd(false, true);
    let v_t = svd
        .v_t
        .ok_or_else(|| Error::Internal("SVD without right vectors".into()))?;
    let sigma_max = svd.singular_values.max();
    let t = pauli_basis();
    let basis: Vec<Mat4> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s < tol * sigma_max)
        .map(|(k, _)| {
            let coeffs = Vec16::from_fn(|i, _| C64::from(v_t[(k, i)]));
            crate::linalg::devectorize(&(t * coeffs))
        })
        .collect();
    if basis.is_empty() {
        return Err(Error::Internal(
            "generator has no stationary state; not trace preserving".into(),
        ));
    }
    Ok(basis)
}

/// Coefficients of the vanishing-separation equilibrium
/// `ρ∞ = ¼[1 − a Σ n_i (1⊗σ_i + σ_i⊗1) + Σ (b δ_ij + c n_i n_j) σ_i⊗σ_j]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumFamily {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub r: f64,
    pub tau: f64,
}

impl EquilibriumFamily {
    pub fn new(r: f64, tau: f64) -> Result<Self> {
        if !(-1e-12..=1.0 + 1e-12).contains(&r) {
            return Err(invalid(format!("R must lie in [0, 1], got {r}")));
        }
        if !(-3.0 - 1e-9..=1.0 + 1e-9).contains(&tau) {
            return Err(invalid(format!("tau must lie in [-3, 1], got {tau}")));
        }
        let (r, tau) = (r.clamp(0.0, 1.0), tau.clamp(-3.0, 1.0));
        let denom = 3.0 + r * r;
        let a = r * (tau + 3.0) / denom;
        // 3b + c = τ: τ is conserved, so the coefficient is affine in τ
        let b = (tau - r * r) / denom;
        Ok(EquilibriumFamily {
            a,
            b,
            c: r * a,
            r,
            tau,
        })
    }

    pub fn matrix(&self, n: &Vector3<f64>) -> Mat4 {
        let mut m = Mat4::identity();
        for i in 0..3 {
            let local = pauli_op(1, i + 1).unwrap() + pauli_op(2, i + 1).unwrap();
            m -= local.scale(self.a * n[i]);
            for j in 0..3 {
                let w = if i == j { self.b } else { 0.0 } + self.c * n[i] * n[j];
                if w != 0.0 {
                    m += kron2(&sigma(i + 1), &sigma(j + 1)).scale(w);
                }
            }
        }
        m.scale(0.25)
    }

    pub fn state(&self, n: &Vector3<f64>) -> Result<DensityMatrix> {
        DensityMatrix::new(self.matrix(n))
    }
}

pub fn equilibrium_closed_form(r: f64, tau: f64, n: &Vector3<f64>) -> Result<DensityMatrix> {
    crate::spectral::check_unit(n)?;
    EquilibriumFamily::new(r, tau)?.state(n)
}

/// `max{ (3−R²)/(2(3+R²)) · [(5R²−3)/(3−R²) − τ], 0 }`.
pub fn asymptotic_concurrence(r: f64, tau: f64) -> f64 {
    let r2 = r * r;
    ((3.0 - r2) / (2.0 * (3.0 + r2)) * (threshold_tau(r) - tau)).max(0.0)
}

/// Asymptotic entanglement survives iff `τ < (5R²−3)/(3−R²)`.
pub fn threshold_tau(r: f64) -> f64 {
    let r2 = r * r;
    (5.0 * r2 - 3.0) / (3.0 - r2)
}

#[derive(Debug, Clone, Copy)]
pub struct AsymptoticState {
    pub rho: DensityMatrix,
    pub stationary_dim: usize,
    /// Horizon of the long-time cross-check, `200 / gap`.
    pub check_time: f64,
    /// Trace-norm distance between `evolve(M, ρ₀, check_time)` and `rho`.
    pub convergence_distance: f64,
}

/// Long-time limit of `ρ₀`. At `ℓ = 0` the closed-form family selected by the
/// conserved `τ(ρ₀)`; otherwise the unique trace-one kernel element. Either
/// way the result is checked against explicit evolution.
pub fn asymptotic_state(
    m: &Superoperator,
    rho0: &DensityMatrix,
    params: &ModelParams,
) -> Result<AsymptoticState> {
    params.validate()?;
    let kernel = stationary_basis(m, NULL_SPACE_TOL)?;
    let rho = if params.ell == 0.0 {
        let r = criterion_rs(params)?.r;
        equilibrium_closed_form(r, tau(rho0), &params.n)?
    } else {
        if kernel.len() != 1 {
            return Err(Error::Convergence(format!(
                "expected a unique stationary state at finite separation, kernel has dimension {}",
                kernel.len()
            )));
        }
        let x = kernel[0];
        let tr = x.trace();
        if tr.norm() < 1e-12 {
            return Err(Error::Convergence("stationary element is traceless".into()));
        }
        let x = x / tr;
        DensityMatrix::new(crate::linalg::hermitian_part(&x))
            .map_err(|e| Error::Convergence(format!("stationary state is not physical: {e}")))?
    };

    let gap = m.spectral_gap();
    if !gap.is_finite() || gap <= 0.0 {
        return Err(Error::Convergence("generator has no decaying modes".into()));
    }
    let check_time = RELAXATION_TIMES / gap;
    let late = evolve(m, rho0, check_time)?;
    let distance = late.trace_distance(&rho);
    debug!("asymptotic check: T = {check_time:.3e}, distance {distance:.3e}");
    if distance > CONVERGENCE_TOL {
        return Err(Error::Convergence(format!(
            "long-time evolution is {distance:.3e} away from the predicted state"
        )));
    }
    Ok(AsymptoticState {
        rho,
        stationary_dim: kernel.len(),
        check_time,
        convergence_distance: distance,
    })
}
