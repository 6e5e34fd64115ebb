//! Entanglement detection and the onset test for bath-induced entanglement.
//!
//! Partial transposition acts on the second atom throughout. For two qubits
//! a negative eigenvalue of the partial transpose is necessary and
//! sufficient for entanglement.

use std::fmt;

use nalgebra::{Matrix2, Matrix3, Vector3, Vector4};
use serde::Serialize;

use crate::dynamics::{
    dissipator_apply, evolve, kron_ket, qubit_ket, DensityMatrix, Superoperator,
};
use crate::error::{invalid, Result};
use crate::linalg::{
    hermitian_eigenvalues, hermitian_eigh, kron2, sigma, to_dyn, Mat4, C64, I, ONE, ZERO,
};
use crate::spectral::{check_unit, sinc, Beta, KossakowskiMatrix, ModelParams};

/// Default threshold on the minimum partial-transpose eigenvalue.
pub const ENTANGLEMENT_TOL: f64 = 1e-12;

/// Transpose on the second tensor factor.
pub fn partial_transpose(rho: &Mat4) -> Mat4 {
    Mat4::from_fn(|r, c| {
        let (i, j, k, l) = (r / 2, r % 2, c / 2, c % 2);
        rho[(2 * i + l, 2 * k + j)]
    })
}

/// Transpose on the first tensor factor.
pub fn partial_transpose_first(rho: &Mat4) -> Mat4 {
    Mat4::from_fn(|r, c| {
        let (i, j, k, l) = (r / 2, r % 2, c / 2, c % 2);
        rho[(2 * k + j, 2 * i + l)]
    })
}

pub fn min_eig_pt(rho: &DensityMatrix) -> f64 {
    hermitian_eigenvalues(&partial_transpose(rho.matrix()))[0]
}

pub fn is_entangled(rho: &DensityMatrix, tol: f64) -> bool {
    min_eig_pt(rho) < -tol
}

/// Wootters concurrence `max(0, λ₁ − λ₂ − λ₃ − λ₄)`, with `λ_k` the decreasing
/// square roots of the eigenvalues of `ρ (σ₂⊗σ₂) ρ* (σ₂⊗σ₂)`. Complex
/// conjugation is taken in the σ₃ product basis.
///
/// The `λ_k` are computed as singular values of `Wᵀ (σ₂⊗σ₂) W` for
/// `ρ = W W†`; eigenvalues of `ρ` below `1e-14` of the largest are dropped
/// from `W`, so rank-deficient states do not pick up `√ε` noise.
pub fn concurrence(rho: &DensityMatrix) -> f64 {
    let yy = kron2(&sigma(2), &sigma(2));
    let (vals, vecs) = hermitian_eigh(rho.matrix());
    let cutoff = 1e-14 * vals[3].abs();
    let mut w = Mat4::zeros();
    for (k, (p, e)) in vals.iter().zip(&vecs).enumerate() {
        if *p > cutoff {
            w.set_column(k, &(e * C64::from(p.sqrt())));
        }
    }
    let tau = w.transpose() * yy * w;
    let mut lambda: Vec<f64> = to_dyn(&tau).singular_values().iter().copied().collect();
    lambda.sort_by(|a, b| b.total_cmp(a));
    (lambda[0] - lambda[1] - lambda[2] - lambda[3]).max(0.0)
}

fn normalized(chi: &Vector4<C64>) -> Result<Vector4<C64>> {
    let n = chi.norm();
    if !(n.is_finite() && n > 0.0) {
        return Err(invalid("probe vector must be nonzero"));
    }
    Ok(chi.unscale(n))
}

/// `𝒬 = ⟨χ|ρ̃|χ⟩` for the normalized probe `χ`.
pub fn q_probe(chi: &Vector4<C64>, rho: &DensityMatrix) -> Result<f64> {
    let chi = normalized(chi)?;
    Ok((chi.adjoint() * partial_transpose(rho.matrix()) * chi)[(0, 0)].re)
}

/// `∂ₜ𝒬(0) = ⟨χ| (ℒ[ρ₀])̃ |χ⟩` with the Hamiltonian part set to zero.
pub fn q_rate(chi: &Vector4<C64>, rho0: &DensityMatrix, k: &KossakowskiMatrix) -> Result<f64> {
    let chi = normalized(chi)?;
    let d = partial_transpose(&dissipator_apply(k, rho0.matrix()));
    Ok((chi.adjoint() * d * chi)[(0, 0)].re)
}

/// A pure product state `|φ⟩ ⊗ |ψ⟩` given by two unit Bloch vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductState {
    pub bloch1: Vector3<f64>,
    pub bloch2: Vector3<f64>,
}

impl ProductState {
    pub fn new(bloch1: Vector3<f64>, bloch2: Vector3<f64>) -> Result<Self> {
        check_unit(&bloch1)?;
        check_unit(&bloch2)?;
        Ok(ProductState { bloch1, bloch2 })
    }

    /// `|−⟩ ⊗ |+⟩` built from eigenstates of `σ·n`.
    pub fn canonical(n: &Vector3<f64>) -> Result<Self> {
        Self::new(-n, *n)
    }

    pub fn ket(&self) -> Vector4<C64> {
        kron_ket(
            &qubit_ket(&self.bloch1).expect("validated"),
            &qubit_ket(&self.bloch2).expect("validated"),
        )
    }

    pub fn density_matrix(&self) -> DensityMatrix {
        DensityMatrix::pure(&self.ket()).expect("unit ket")
    }

    pub fn is_canonical_for(&self, n: &Vector3<f64>) -> bool {
        (self.bloch1 + n).norm() < 1e-12 && (self.bloch2 - n).norm() < 1e-12
    }
}

/// Minimum of `∂ₜ𝒬(0)` over unit probes with `𝒬(0) = 0`, and a minimizer.
#[derive(Debug, Clone, Copy)]
pub struct ProbeOptimum {
    pub rate: f64,
    pub chi: Vector4<C64>,
}

/// Exact minimization of the probe rate: for a pure product `ρ₀` the
/// constraint `𝒬(0) = 0` confines `χ` to the 3-dimensional complement of
/// `|φ⟩⊗|ψ*⟩`, where the rate is a Hermitian form.
pub fn min_q_rate(state: &ProductState, k: &KossakowskiMatrix) -> ProbeOptimum {
    let rho0 = state.density_matrix();
    let pt0 = partial_transpose(rho0.matrix());
    let (_, support) = hermitian_eigh(&pt0);
    let complement = &support[..3];
    let d = partial_transpose(&dissipator_apply(k, rho0.matrix()));
    let restricted =
        Matrix3::<C64>::from_fn(|i, j| (complement[i].adjoint() * d * complement[j])[(0, 0)]);
    let (vals, vecs) = hermitian_eigh(&restricted);
    let coeffs = vecs[0];
    let chi = complement
        .iter()
        .zip(coeffs.iter())
        .fold(Vector4::zeros(), |acc, (e, c)| acc + e * *c);
    ProbeOptimum { rate: vals[0], chi }
}

/// Rotation induced on Pauli matrices by `U`: `U† σ_i U = Σ_j 𝒰_ij σ_j`.
fn induced_rotation(u: &Matrix2<C64>) -> Matrix3<f64> {
    Matrix3::from_fn(|i, j| 0.5 * (u.adjoint() * sigma(i + 1) * u * sigma(j + 1)).trace().re)
}

/// Unitary with `U|−⟩ = |φ⟩` and `U|+⟩` the orthogonal complement.
fn frame(bloch: &Vector3<f64>) -> Result<Matrix2<C64>> {
    let phi = qubit_ket(bloch)?;
    let comp = [phi[1].conj(), -phi[0].conj()];
    Ok(Matrix2::new(comp[0], phi[0], comp[1], phi[1]))
}

/// Fix the free global phase: leading non-negligible component real positive.
fn fix_phase(v: Vector3<C64>) -> Vector3<C64> {
    let scale = v.norm();
    match v.iter().find(|z| z.norm() > 1e-9 * scale) {
        Some(lead) => v * (lead.conj() / lead.norm()),
        None => v,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UvVectors {
    pub u: Vector3<C64>,
    pub v: Vector3<C64>,
}

/// `u_i = Σ_j 𝒰_ij ⟨+|σ_j|−⟩`, `v_i = Σ_j 𝒱_ij ⟨−|σ_j|+⟩`. Each is defined up to
/// a phase; the leading nonzero component is made real and positive.
pub fn uv_vectors(state: &ProductState) -> Result<UvVectors> {
    let rot_u = induced_rotation(&frame(&state.bloch1)?);
    let rot_v = induced_rotation(&frame(&state.bloch2)?);
    // ⟨+|σ_j|−⟩ = (1, −i, 0) and its conjugate ⟨−|σ_j|+⟩
    let raising = Vector3::new(ONE, -I, ZERO);
    let lowering = raising.conjugate();
    Ok(UvVectors {
        u: fix_phase(rot_u.map(C64::from) * raising),
        v: fix_phase(rot_v.map(C64::from) * lowering),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Generated,
    NotGenerated,
    /// Margin inside the roundoff band around the strict inequality.
    Boundary,
}

impl Verdict {
    pub fn is_generated(&self) -> bool {
        matches!(self, Verdict::Generated)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Generated => "true",
            Verdict::NotGenerated => "false",
            Verdict::Boundary => "boundary",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RsCriterion {
    #[serde(rename = "R")]
    pub r: f64,
    #[serde(rename = "S")]
    pub s: f64,
    pub rs_margin: f64,
}

/// `R = tanh(βω/2)`, `S = sin(ωℓ)/(ωℓ)`, `rs_margin = R² + S² − 1`.
pub fn criterion_rs(params: &ModelParams) -> Result<RsCriterion> {
    params.validate()?;
    let r = match params.beta {
        Beta::Finite(b) => (0.5 * b * params.omega).tanh(),
        Beta::Infinite => 1.0,
    };
    let s = sinc(params.omega_ell());
    Ok(RsCriterion {
        r,
        s,
        rs_margin: r * r + s * s - 1.0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenerationVerdict {
    /// `|⟨u|Re C^(12)|v⟩|² − ⟨u|C^(11)|u⟩ ⟨v|(C^(22))ᵀ|v⟩`.
    pub margin: f64,
    /// Squared spectral norm of the Kossakowski matrix.
    pub scale: f64,
    pub verdict: Verdict,
    /// Present when the state is the canonical one for the matrix's parameters.
    pub rs: Option<RsCriterion>,
}

impl GenerationVerdict {
    pub fn generated(&self) -> bool {
        self.verdict.is_generated()
    }
}

/// Relative width of the boundary band around `margin = 0`.
pub const BOUNDARY_BAND: f64 = 1e-12;

/// Onset test: the bath entangles the product state at `t = 0⁺` iff the
/// discriminant margin is positive.
pub fn generation_test(state: &ProductState, k: &KossakowskiMatrix) -> Result<GenerationVerdict> {
    let uv = uv_vectors(state)?;
    let (u, v) = (uv.u, uv.v);
    let c11 = k.block(0, 0);
    let c22 = k.block(1, 1);
    let re_c12 = k.block(0, 1).map(|z| C64::from(z.re));
    let form = |a: &Vector3<C64>, m: &Matrix3<C64>, b: &Vector3<C64>| (a.adjoint() * m * b)[(0, 0)];
    let cross = form(&u, &re_c12, &v).norm_sqr();
    let diag = form(&u, &c11, &u).re * form(&v, &c22.transpose(), &v).re;
    let margin = cross - diag;
    let scale = k.spectral_norm().powi(2);
    let band = BOUNDARY_BAND * scale;
    let verdict = if margin > band {
        Verdict::Generated
    } else if margin < -band {
        Verdict::NotGenerated
    } else {
        Verdict::Boundary
    };
    let rs = match k.params() {
        Some(p) if state.is_canonical_for(&p.n) => Some(criterion_rs(p)?),
        _ => None,
    };
    Ok(GenerationVerdict {
        margin,
        scale,
        verdict,
        rs,
    })
}

/// Independent check of the onset test: evolve a product state for a short
/// time `dt` and look for a negative partial-transpose eigenvalue.
pub fn small_time_ppt_oracle(m: &Superoperator, rho0: &DensityMatrix, dt: f64) -> Result<bool> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(invalid(format!("oracle step must be positive, got {dt}")));
    }
    if is_entangled(rho0, ENTANGLEMENT_TOL) {
        return Err(invalid("oracle needs a separable initial state"));
    }
    let rho = evolve(m, rho0, dt)?;
    Ok(min_eig_pt(&rho) < -1e-13)
}
