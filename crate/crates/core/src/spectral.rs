//! Thermal bath spectra and the Kossakowski matrix of the two-atom generator.
//!
//! The 6×6 Kossakowski matrix is indexed by `(atom, direction)` pairs as
//! `3·atom + direction` with `atom ∈ {0, 1}` and `direction ∈ {0, 1, 2}`. Its
//! 3×3 blocks are `C^(11)`, `C^(12)`, `C^(21)`, `C^(22)`.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Matrix6, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::linalg::{hermiticity_defect, max_abs, min_hermitian_eigenvalue, C64};

pub type Mat3 = Matrix3<C64>;
pub type Mat6 = Matrix6<C64>;

/// Below this magnitude of `βz` and `ℓz` the 0/0 forms switch to series.
const SERIES_CUTOFF: f64 = 1e-6;

/// Inverse temperature. Zero temperature is an explicit variant so that
/// `e^{βω}` is never evaluated at overflowing arguments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Beta {
    Finite(f64),
    Infinite,
}

impl Beta {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Beta::Infinite)
    }

    /// `1/β`, zero at zero temperature.
    pub fn temperature(&self) -> f64 {
        match *self {
            Beta::Finite(b) => 1.0 / b,
            Beta::Infinite => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub omega: f64,
    pub beta: Beta,
    pub ell: f64,
    pub n: Vector3<f64>,
}

impl ModelParams {
    pub fn new(omega: f64, beta: Beta, ell: f64, n: Vector3<f64>) -> Result<Self> {
        let p = ModelParams {
            omega,
            beta,
            ell,
            n,
        };
        p.validate()?;
        Ok(p)
    }

    /// Hamiltonian axis along `e3`.
    pub fn along_z(omega: f64, beta: Beta, ell: f64) -> Result<Self> {
        Self::new(omega, beta, ell, Vector3::z())
    }

    /// Build from the dimensionless groups `βω` (`None` for zero temperature)
    /// and `ωℓ`.
    pub fn from_groups(
        omega: f64,
        beta_omega: Option<f64>,
        omega_ell: f64,
        n: Vector3<f64>,
    ) -> Result<Self> {
        let beta = match beta_omega {
            Some(x) => Beta::Finite(x / omega),
            None => Beta::Infinite,
        };
        Self::new(omega, beta, omega_ell / omega, n)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(invalid(format!(
                "omega must be positive, got {}",
                self.omega
            )));
        }
        if let Beta::Finite(b) = self.beta {
            if !(b.is_finite() && b > 0.0) {
                return Err(invalid(format!(
                    "beta must be positive or infinite, got {b}"
                )));
            }
        }
        if !(self.ell.is_finite() && self.ell >= 0.0) {
            return Err(invalid(format!(
                "ell must be non-negative, got {}",
                self.ell
            )));
        }
        check_unit(&self.n)
    }

    /// `βω`, infinite at zero temperature.
    pub fn beta_omega(&self) -> f64 {
        match self.beta {
            Beta::Finite(b) => b * self.omega,
            Beta::Infinite => f64::INFINITY,
        }
    }

    pub fn omega_ell(&self) -> f64 {
        self.omega * self.ell
    }
}

pub(crate) fn check_unit(n: &Vector3<f64>) -> Result<()> {
    if n.iter().any(|x| !x.is_finite()) || (n.norm() - 1.0).abs() > 1e-12 {
        return Err(invalid(format!("axis must be a unit vector, got {n:?}")));
    }
    Ok(())
}

/// `sin(x)/x` with the removable singularity handled by its series.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < SERIES_CUTOFF {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralValues {
    pub z: f64,
    /// Same-atom spectrum 𝒢^(11)(z) = 𝒢^(22)(z).
    pub g11: f64,
    /// Cross-atom spectrum 𝒢^(12)(z) = 𝒢^(21)(z).
    pub g12: f64,
}

/// Planck-weighted spectrum `z / (2π (1 − e^{−βz}))`.
fn thermal_spectrum(beta: Beta, z: f64) -> f64 {
    match beta {
        Beta::Infinite => {
            if z > 0.0 {
                z / (2.0 * PI)
            } else {
                0.0
            }
        }
        Beta::Finite(b) => {
            let x = b * z;
            if x.abs() < SERIES_CUTOFF {
                // x / (1 − e^{−x}) = 1 + x/2 + x²/12 + O(x⁴)
                (1.0 + x / 2.0 + x * x / 12.0) / (2.0 * PI * b)
            } else {
                z / (-(-x).exp_m1()) / (2.0 * PI)
            }
        }
    }
}

pub fn spectral_density(params: &ModelParams, z: f64) -> Result<SpectralValues> {
    params.validate()?;
    if !z.is_finite() {
        return Err(invalid(format!("frequency must be finite, got {z}")));
    }
    let g11 = thermal_spectrum(params.beta, z);
    Ok(SpectralValues {
        z,
        g11,
        g12: g11 * sinc(params.ell * z),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KossakowskiCoefficients {
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "C")]
    pub c: f64,
    #[serde(rename = "A'")]
    pub a_p: f64,
    #[serde(rename = "B'")]
    pub b_p: f64,
    #[serde(rename = "C'")]
    pub c_p: f64,
}

pub fn kossakowski_coefficients(params: &ModelParams) -> Result<KossakowskiCoefficients> {
    params.validate()?;
    let w = params.omega;
    let scale = w / (4.0 * PI);
    // coth(βω/2) and 2/(βω); both reduce to 1 and 0 at zero temperature.
    let (coth, two_over_bw) = match params.beta {
        Beta::Finite(b) => (1.0 / (0.5 * b * w).tanh(), 2.0 / (b * w)),
        Beta::Infinite => (1.0, 0.0),
    };
    let s = sinc(params.omega_ell());
    Ok(KossakowskiCoefficients {
        a: scale * coth,
        b: scale,
        c: scale * (two_over_bw - coth),
        a_p: scale * coth * s,
        b_p: scale * s,
        c_p: scale * (two_over_bw - coth * s),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiTensors {
    pub psi0: Mat3,
    pub psi_plus: Mat3,
    pub psi_minus: Mat3,
}

impl PsiTensors {
    /// ψ^(ξ) for ξ = +1, −1, 0.
    pub fn get(&self, xi: i8) -> &Mat3 {
        match xi {
            1 => &self.psi_plus,
            -1 => &self.psi_minus,
            0 => &self.psi0,
            _ => panic!("ξ must be one of -1, 0, 1"),
        }
    }
}

fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    // cyclic (0,1,2) → +1, anticyclic → −1, repeated → 0
    if i == j || j == k || i == k {
        0.0
    } else if (j + 3 - i) % 3 == 1 && (k + 3 - j) % 3 == 1 {
        1.0
    } else {
        -1.0
    }
}

/// `E_ij = Σ_k ε_ijk n_k`.
fn cross_tensor(n: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::from_fn(|i, j| (0..3).map(|k| levi_civita(i, j, k) * n[k]).sum())
}

pub fn psi_tensors(n: &Vector3<f64>) -> Result<PsiTensors> {
    check_unit(n)?;
    let nn = n * n.transpose();
    let e = cross_tensor(n);
    let transverse = Matrix3::identity() - nn;
    let half = |sign: f64| {
        Mat3::from_fn(|i, j| C64::new(0.5 * transverse[(i, j)], 0.5 * sign * e[(i, j)]))
    };
    Ok(PsiTensors {
        psi0: nn.map(C64::from),
        psi_plus: half(1.0),
        psi_minus: half(-1.0),
    })
}

/// The 6×6 Hermitian Kossakowski matrix, optionally tagged with the model
/// parameters it was built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KossakowskiMatrix {
    matrix: Mat6,
    params: Option<ModelParams>,
}

impl KossakowskiMatrix {
    /// Assemble from blocks `C^(11), C^(12), C^(21), C^(22)`.
    pub fn from_blocks(c11: &Mat3, c12: &Mat3, c21: &Mat3, c22: &Mat3) -> Self {
        let mut m = Mat6::zeros();
        m.fixed_view_mut::<3, 3>(0, 0).copy_from(c11);
        m.fixed_view_mut::<3, 3>(0, 3).copy_from(c12);
        m.fixed_view_mut::<3, 3>(3, 0).copy_from(c21);
        m.fixed_view_mut::<3, 3>(3, 3).copy_from(c22);
        KossakowskiMatrix {
            matrix: m,
            params: None,
        }
    }

    pub fn from_matrix(matrix: Mat6) -> Self {
        KossakowskiMatrix {
            matrix,
            params: None,
        }
    }

    /// Closed-form assembly from arbitrary coefficients; useful for limits not
    /// reachable through [`ModelParams`] (e.g. infinite temperature).
    pub fn from_coefficients(k: &KossakowskiCoefficients, n: &Vector3<f64>) -> Result<Self> {
        check_unit(n)?;
        let e = cross_tensor(n);
        let nn = n * n.transpose();
        let block = |a: f64, b: f64, c: f64| {
            Mat3::from_fn(|i, j| {
                let delta = if i == j { 1.0 } else { 0.0 };
                C64::new(a * delta + c * nn[(i, j)], -b * e[(i, j)])
            })
        };
        let diag = block(k.a, k.b, k.c);
        let cross = block(k.a_p, k.b_p, k.c_p);
        Ok(Self::from_blocks(&diag, &cross, &cross, &diag))
    }

    pub fn with_params(mut self, params: ModelParams) -> Self {
        self.params = Some(params);
        self
    }

    pub fn params(&self) -> Option<&ModelParams> {
        self.params.as_ref()
    }

    pub fn matrix(&self) -> &Mat6 {
        &self.matrix
    }

    /// Block `C^(αβ)` with 0-based atom indices.
    pub fn block(&self, alpha: usize, beta: usize) -> Mat3 {
        assert!(alpha < 2 && beta < 2, "atom index out of range");
        self.matrix
            .fixed_view::<3, 3>(3 * alpha, 3 * beta)
            .into_owned()
    }

    pub fn spectral_norm(&self) -> f64 {
        crate::linalg::spectral_norm(&self.matrix)
    }
}

/// Route 1: sum over the three Bohr frequencies `ξω` of the bath spectra
/// weighted by the ψ tensors.
pub fn build_kossakowski_spectral(params: &ModelParams) -> Result<KossakowskiMatrix> {
    params.validate()?;
    let psi = psi_tensors(&params.n)?;
    let mut diag = Mat3::zeros();
    let mut cross = Mat3::zeros();
    for xi in [1i8, -1, 0] {
        let g = spectral_density(params, f64::from(xi) * params.omega)?;
        // 𝒢_kl = δ_kl 𝒢, so Σ_kl 𝒢_kl ψ^ξ_ki ψ^{-ξ}_lj = 𝒢 (ψ^ξᵀ ψ^{-ξ})_ij
        let weight = psi.get(xi).transpose() * psi.get(-xi);
        diag += weight.scale(g.g11);
        cross += weight.scale(g.g12);
    }
    Ok(KossakowskiMatrix::from_blocks(&diag, &cross, &cross, &diag).with_params(*params))
}

/// Route 2: `C^(11)_ij = A δ_ij − i B ε_ijk n_k + C n_i n_j` and the primed analogue
/// for `C^(12)`.
pub fn build_kossakowski_closed(params: &ModelParams) -> Result<KossakowskiMatrix> {
    let k = kossakowski_coefficients(params)?;
    Ok(KossakowskiMatrix::from_coefficients(&k, &params.n)?.with_params(*params))
}

/// Minimum eigenvalue of the 6×6 Hermitian form.
pub fn psd_check(k: &KossakowskiMatrix) -> Result<f64> {
    let m = k.matrix();
    let scale = max_abs(m).max(f64::MIN_POSITIVE);
    if hermiticity_defect(m) > 1e-12 * scale {
        return Err(invalid("Kossakowski matrix is not Hermitian"));
    }
    Ok(min_hermitian_eigenvalue(m))
}

/// True when the minimum eigenvalue clears the 1e-12 relative noise floor.
pub fn is_completely_positive(k: &KossakowskiMatrix) -> Result<bool> {
    Ok(psd_check(k)? >= -1e-12 * k.spectral_norm())
}
