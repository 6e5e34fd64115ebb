//! Two-qubit states, the Kossakowski–Lindblad dissipator and its semigroup.
//!
//! Superoperators act on column-stacked 4×4 matrices, so that
//! `vec(A X B) = (Bᵀ ⊗ A) vec(X)`.

mod ode;

use log::{debug, warn};
use nalgebra::{DMatrix, Vector2, Vector3, Vector4};
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::linalg::{
    self, devectorize, hermiticity_defect, kron2, max_abs, min_hermitian_eigenvalue, pauli_basis,
    sigma, to_dyn, vectorize, Mat16, Mat2, Mat4, Vec16, C64, ONE, ZERO,
};
use crate::spectral::{check_unit, KossakowskiMatrix, ModelParams};

pub use ode::{DormandPrince, Tolerance};

/// Re-Hermitization beyond this is a bug, not roundoff.
pub const POSITIVITY_FAILURE: f64 = 1e-8;

/// A 4×4 Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(Mat4);

impl DensityMatrix {
    pub const HERMITICITY_TOL: f64 = 1e-12;
    pub const TRACE_TOL: f64 = 1e-12;
    pub const POSITIVITY_TOL: f64 = 1e-10;

    pub fn new(m: Mat4) -> Result<Self> {
        let defect = hermiticity_defect(&m);
        if defect > Self::HERMITICITY_TOL {
            return Err(invalid(format!(
                "density matrix not Hermitian (defect {defect:.3e})"
            )));
        }
        let tr = m.trace();
        if (tr - ONE).norm() > Self::TRACE_TOL {
            return Err(invalid(format!("density matrix trace is {tr}, expected 1")));
        }
        let min = min_hermitian_eigenvalue(&m);
        if min < -Self::POSITIVITY_TOL {
            return Err(invalid(format!(
                "density matrix has negative eigenvalue {min:.3e}"
            )));
        }
        Ok(DensityMatrix(m))
    }

    /// Projector onto the normalized `psi`.
    pub fn pure(psi: &Vector4<C64>) -> Result<Self> {
        let norm = psi.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(invalid("state vector must be nonzero"));
        }
        let psi = psi.unscale(norm);
        Ok(DensityMatrix(psi * psi.adjoint()))
    }

    /// `|φ⟩⟨φ| ⊗ |ψ⟩⟨ψ|` for pure single-atom states with Bloch vectors
    /// `bloch1`, `bloch2`.
    pub fn product(bloch1: &Vector3<f64>, bloch2: &Vector3<f64>) -> Result<Self> {
        let a = qubit_ket(bloch1)?;
        let b = qubit_ket(bloch2)?;
        Self::pure(&kron_ket(&a, &b))
    }

    /// `(|+−⟩ − |−+⟩)/√2`.
    pub fn singlet() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = Vector4::new(ZERO, C64::from(s), C64::from(-s), ZERO);
        DensityMatrix(psi * psi.adjoint())
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix(Mat4::identity().scale(0.25))
    }

    /// Accept a matrix produced by evolution: re-Hermitize, renormalize the
    /// trace, and fail only beyond [`POSITIVITY_FAILURE`].
    pub fn from_evolved(m: Mat4) -> Result<Self> {
        let defect = hermiticity_defect(&m);
        let tr = m.trace();
        let h = linalg::hermitian_part(&m).unscale(tr.re);
        let min = min_hermitian_eigenvalue(&h);
        if defect > 1e-10 || (tr - ONE).norm() > 1e-10 {
            warn!(
                "evolved state off by hermiticity {defect:.3e}, trace {:.3e}",
                (tr - ONE).norm()
            );
        } else {
            debug!(
                "evolved state hermiticity {defect:.3e}, trace {:.3e}",
                (tr - ONE).norm()
            );
        }
        if min < -POSITIVITY_FAILURE {
            return Err(Error::NumericalFailure(format!(
                "evolved state has eigenvalue {min:.3e} below -{POSITIVITY_FAILURE:e}"
            )));
        }
        if min < -Self::POSITIVITY_TOL {
            warn!("evolved state has eigenvalue {min:.3e}");
        }
        Ok(DensityMatrix(h))
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    pub fn into_inner(self) -> Mat4 {
        self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    pub fn min_eigenvalue(&self) -> f64 {
        min_hermitian_eigenvalue(&self.0)
    }

    pub fn trace_distance(&self, other: &DensityMatrix) -> f64 {
        linalg::trace_norm(&(self.0 - other.0))
    }
}

/// Pure qubit state with the given unit Bloch vector, in the σ₃ basis `(|+⟩, |−⟩)`.
pub fn qubit_ket(bloch: &Vector3<f64>) -> Result<Vector2<C64>> {
    check_unit(bloch)?;
    let (x, y, z) = (bloch[0], bloch[1], bloch[2]);
    if z > -0.5 {
        let norm = (2.0 * (1.0 + z)).sqrt();
        Ok(Vector2::new(C64::from(1.0 + z), C64::new(x, y)).unscale(norm))
    } else {
        // same state up to phase, stable near the south pole
        let norm = (2.0 * (1.0 - z)).sqrt();
        Ok(Vector2::new(C64::new(x, -y), C64::from(1.0 - z)).unscale(norm))
    }
}

pub fn kron_ket(a: &Vector2<C64>, b: &Vector2<C64>) -> Vector4<C64> {
    Vector4::new(a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
}

/// `σ_axis ⊗ 1` for atom 1, `1 ⊗ σ_axis` for atom 2 (1-based indices).
pub fn pauli_op(atom: usize, axis: usize) -> Result<Mat4> {
    if !(1..=3).contains(&axis) {
        return Err(invalid(format!("Pauli axis {axis} out of range 1..=3")));
    }
    match atom {
        1 => Ok(kron2(&sigma(axis), &Mat2::identity())),
        2 => Ok(kron2(&Mat2::identity(), &sigma(axis))),
        _ => Err(invalid(format!("atom index {atom} out of range 1..=2"))),
    }
}

/// The six jump operators `σ_i^(α)` in Kossakowski index order `3α + i`.
fn jump_operators() -> [Mat4; 6] {
    std::array::from_fn(|k| pauli_op(k / 3 + 1, k % 3 + 1).expect("valid index"))
}

/// `ℒ[ρ] = ½ Σ C^(αβ)_ij (2 σ_j^(β) ρ σ_i^(α) − {σ_i^(α) σ_j^(β), ρ})`.
pub fn dissipator_apply(k: &KossakowskiMatrix, rho: &Mat4) -> Mat4 {
    let ops = jump_operators();
    let c = k.matrix();
    let mut out = Mat4::zeros();
    for a in 0..6 {
        for b in 0..6 {
            let w = c[(a, b)];
            if w == ZERO {
                continue;
            }
            let prod = ops[a] * ops[b];
            out += (ops[b] * rho * ops[a]).scale(2.0) * w - (prod * rho + rho * prod) * w;
        }
    }
    out.scale(0.5)
}

/// `H_S = (ω/2) Σ_i n_i (σ_i^(1) + σ_i^(2))`.
pub fn system_hamiltonian(params: &ModelParams) -> Mat4 {
    let mut h = Mat4::zeros();
    for i in 0..3 {
        let collective = pauli_op(1, i + 1).unwrap() + pauli_op(2, i + 1).unwrap();
        h += collective.scale(0.5 * params.omega * params.n[i]);
    }
    h
}

fn left_right(left: &Mat4, right: &Mat4) -> Mat16 {
    // vec(L X R) = (Rᵀ ⊗ L) vec(X)
    let rt = right.transpose();
    Mat16::from_fn(|r, c| rt[(r / 4, c / 4)] * left[(r % 4, c % 4)])
}

/// Matrix of the generator on column-stacked density matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct Superoperator {
    matrix: Mat16,
}

impl Superoperator {
    pub fn from_matrix(matrix: Mat16) -> Self {
        Superoperator { matrix }
    }

    pub fn matrix(&self) -> &Mat16 {
        &self.matrix
    }

    pub fn apply(&self, rho: &Mat4) -> Mat4 {
        devectorize(&(self.matrix * vectorize(rho)))
    }

    /// Real 16×16 matrix of the generator in the orthonormal Pauli-product
    /// basis. Exact for Hermiticity-preserving generators.
    pub fn real_representation(&self) -> DMatrix<f64> {
        let t = pauli_basis();
        let m = t.adjoint() * self.matrix * t;
        to_dyn(&m).map(|z| z.re)
    }

    pub fn eigenvalues(&self) -> Vec<C64> {
        self.real_representation()
            .complex_eigenvalues()
            .iter()
            .copied()
            .collect()
    }

    /// Smallest nonzero decay rate `min |Re λ|`.
    pub fn spectral_gap(&self) -> f64 {
        let ev = self.eigenvalues();
        let scale = ev.iter().map(|z| z.norm()).fold(0.0, f64::max);
        ev.iter()
            .map(|z| z.re.abs())
            .filter(|&r| r > 1e-9 * scale)
            .fold(f64::INFINITY, f64::min)
    }

    /// `exp(tM)`.
    pub fn propagator(&self, t: f64) -> Mat16 {
        let e = linalg::expm(&to_dyn(&self.matrix.scale(t)));
        Mat16::from_column_slice(e.as_slice())
    }

    /// Choi matrix `Σ_ab |a⟩⟨b| ⊗ Φ_t(|a⟩⟨b|)` of the map at time `t`.
    pub fn choi_matrix(&self, t: f64) -> Mat16 {
        let prop = self.propagator(t);
        let mut choi = Mat16::zeros();
        for a in 0..4 {
            for b in 0..4 {
                // vec(|a⟩⟨b|) is the unit vector at a + 4b
                let image = devectorize(&prop.column(a + 4 * b).into_owned());
                choi.view_mut((4 * a, 4 * b), (4, 4)).copy_from(&image);
            }
        }
        choi
    }
}

/// Assemble the generator. The system Hamiltonian commutator `−i[H_S, ·]`
/// with the bare frequency is included only when `include_hs` is set.
pub fn build_superoperator(
    k: &KossakowskiMatrix,
    include_hs: bool,
    params: &ModelParams,
) -> Superoperator {
    let ops = jump_operators();
    let c = k.matrix();
    let eye = Mat4::identity();
    let mut m = Mat16::zeros();
    for a in 0..6 {
        for b in 0..6 {
            let w = c[(a, b)];
            if w == ZERO {
                continue;
            }
            let prod = ops[a] * ops[b];
            let term = left_right(&ops[b], &ops[a]).scale(2.0)
                - left_right(&prod, &eye)
                - left_right(&eye, &prod);
            m += term * (w * 0.5);
        }
    }
    if include_hs {
        let h = system_hamiltonian(params);
        m += (left_right(&h, &eye) - left_right(&eye, &h)) * C64::new(0.0, -1.0);
    }
    Superoperator { matrix: m }
}

/// `ρ(t)` from `exp(tM) vec(ρ₀)`, re-Hermitized and trace-renormalized.
pub fn evolve(m: &Superoperator, rho0: &DensityMatrix, t: f64) -> Result<DensityMatrix> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(invalid(format!(
            "evolution time must be non-negative, got {t}"
        )));
    }
    if t == 0.0 {
        return Ok(*rho0);
    }
    let v = m.propagator(t) * vectorize(rho0.matrix());
    DensityMatrix::from_evolved(devectorize(&v))
}

/// `τ = Σ_i Tr[ρ (σ_i ⊗ σ_i)]`, ranging over `[−3, 1]`.
pub fn tau(rho: &DensityMatrix) -> f64 {
    (1..=3)
        .map(|i| {
            let corr = pauli_op(1, i).unwrap() * pauli_op(2, i).unwrap();
            (rho.matrix() * corr).trace().re
        })
        .sum()
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<DensityMatrix>,
    /// Max-norm gap between the matrix-exponential and Runge–Kutta samples.
    pub rk_deviation: f64,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &DensityMatrix)> {
        self.times.iter().copied().zip(self.states.iter())
    }
}

/// Max-norm agreement required between the two integration routes.
pub const METHOD_AGREEMENT: f64 = 1e-8;

/// Sample `ρ(t)` on `times` by matrix exponentials and cross-check every
/// sample against an adaptive Runge–Kutta integration.
pub fn evolve_traj(m: &Superoperator, rho0: &DensityMatrix, times: &[f64]) -> Result<Trajectory> {
    if times.is_empty() {
        return Err(invalid("time grid is empty"));
    }
    if times.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
        return Err(invalid("time grid must be finite and non-negative"));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid("time grid must be strictly increasing"));
    }
    let states = times
        .par_iter()
        .map(|&t| evolve(m, rho0, t))
        .collect::<Result<Vec<_>>>()?;

    let generator = *m.matrix();
    let mut rk = DormandPrince::new(move |y: &Vec16| generator * y, Tolerance::default());
    let mut y = vectorize(rho0.matrix());
    let mut t_prev = 0.0;
    let mut deviation: f64 = 0.0;
    for (t, state) in times.iter().zip(&states) {
        y = rk.integrate(&y, t_prev, *t)?;
        t_prev = *t;
        deviation = deviation.max(max_abs(&(devectorize(&y) - state.matrix())));
    }
    if deviation > METHOD_AGREEMENT {
        return Err(Error::NumericalFailure(format!(
            "matrix exponential and Runge–Kutta disagree by {deviation:.3e}"
        )));
    }
    debug!("trajectory method agreement {deviation:.3e}");
    Ok(Trajectory {
        times: times.to_vec(),
        states,
        rk_deviation: deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{build_kossakowski_closed, Beta};

    fn model(beta: Beta, ell: f64) -> (ModelParams, KossakowskiMatrix) {
        let p = ModelParams::along_z(1.0, beta, ell).unwrap();
        (p, build_kossakowski_closed(&p).unwrap())
    }

    fn basis(k: usize) -> DensityMatrix {
        let mut v = Vector4::zeros();
        v[k] = ONE;
        DensityMatrix::pure(&v).unwrap()
    }

    #[test]
    fn pauli_ops_are_tensor_products() {
        assert_eq!(pauli_op(1, 3).unwrap(), kron2(&sigma(3), &Mat2::identity()));
        assert_eq!(pauli_op(2, 1).unwrap(), kron2(&Mat2::identity(), &sigma(1)));
        for i in 1..=3 {
            for j in 1..=3 {
                let a = pauli_op(1, i).unwrap();
                let b = pauli_op(2, j).unwrap();
                assert_eq!(a * b - b * a, Mat4::zeros());
            }
        }
        assert!(pauli_op(0, 1).is_err());
        assert!(pauli_op(3, 1).is_err());
        assert!(pauli_op(1, 4).is_err());
    }

    #[test]
    fn singlet_is_dark_at_zero_separation() {
        for beta in [Beta::Finite(0.3), Beta::Finite(1.0), Beta::Infinite] {
            let (_, k) = model(beta, 0.0);
            let d = dissipator_apply(&k, DensityMatrix::singlet().matrix());
            assert!(max_abs(&d) < 1e-14);
        }
    }

    #[test]
    fn ground_state_is_thermally_excited() {
        let (_, k) = model(Beta::Finite(1.0), 0.0);
        let d = dissipator_apply(&k, basis(3).matrix());
        // single-site jumps populate the one-excitation states first
        assert!(d[(1, 1)].re > 0.0 && d[(2, 2)].re > 0.0, "{d}");
        assert!(d[(0, 0)].norm() < 1e-16);
        assert!(d.trace().norm() < 1e-15);
    }

    #[test]
    fn superoperator_matches_dissipator() {
        let (p, k) = model(Beta::Finite(0.7), 1.3);
        let m = build_superoperator(&k, false, &p);
        let rho = DensityMatrix::product(&Vector3::new(0.6, 0.0, 0.8), &Vector3::y()).unwrap();
        let d = m.apply(rho.matrix()) - dissipator_apply(&k, rho.matrix());
        assert!(max_abs(&d) < 1e-15);
    }

    #[test]
    fn generator_has_zero_mode_and_contracts() {
        let (p, k) = model(Beta::Finite(1.0), 2.0);
        let ev = build_superoperator(&k, true, &p).eigenvalues();
        let min_abs = ev.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
        assert!(min_abs < 1e-12);
        assert!(ev.iter().all(|z| z.re <= 1e-12));
    }

    #[test]
    fn evolve_at_zero_time_is_identity() {
        let (p, k) = model(Beta::Finite(1.0), 0.5);
        let m = build_superoperator(&k, false, &p);
        let rho = basis(1);
        assert_eq!(evolve(&m, &rho, 0.0).unwrap(), rho);
        assert!(evolve(&m, &rho, -1.0).is_err());
    }

    #[test]
    fn singlet_is_stationary() {
        let (p, k) = model(Beta::Finite(2.0), 0.0);
        let m = build_superoperator(&k, false, &p);
        let s = DensityMatrix::singlet();
        for t in [0.1, 5.0, 80.0] {
            let r = evolve(&m, &s, t).unwrap();
            assert!(max_abs(&(r.matrix() - s.matrix())) < 1e-12);
        }
    }

    #[test]
    fn tau_reference_values() {
        assert!((tau(&DensityMatrix::singlet()) + 3.0).abs() < 1e-15);
        assert!(tau(&DensityMatrix::maximally_mixed()).abs() < 1e-15);
        let rho = DensityMatrix::product(&-Vector3::z(), &Vector3::z()).unwrap();
        assert!((tau(&rho) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn bloch_kets_reproduce_bloch_vectors() {
        for b in [
            Vector3::z(),
            -Vector3::z(),
            Vector3::x(),
            Vector3::new(0.0, -0.6, -0.8),
            Vector3::new(0.48, 0.6, -0.64),
        ] {
            let k = qubit_ket(&b).unwrap();
            let rho = k * k.adjoint();
            for i in 0..3 {
                let expect = (rho * sigma(i + 1)).trace().re;
                assert!((expect - b[i]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn trajectory_rejects_bad_grids() {
        let (p, k) = model(Beta::Finite(1.0), 0.5);
        let m = build_superoperator(&k, false, &p);
        let rho = basis(0);
        assert!(evolve_traj(&m, &rho, &[]).is_err());
        assert!(evolve_traj(&m, &rho, &[0.0, 1.0, 1.0]).is_err());
        assert!(evolve_traj(&m, &rho, &[-1.0, 1.0]).is_err());
        let tr = evolve_traj(&m, &rho, &[0.0]).unwrap();
        assert_eq!(tr.states, vec![rho]);
    }

    #[test]
    fn rejects_invalid_density_matrices() {
        assert!(DensityMatrix::new(Mat4::identity()).is_err());
        let mut m = Mat4::identity().scale(0.25);
        m[(0, 1)] = C64::new(0.1, 0.0);
        assert!(DensityMatrix::new(m).is_err());
        let m = Mat4::from_diagonal(&Vector4::new(ONE, ONE, -ONE, ZERO));
        assert!(DensityMatrix::new(m).is_err());
        assert!(DensityMatrix::pure(&Vector4::zeros()).is_err());
    }
}
