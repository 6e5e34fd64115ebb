//! Small dense linear-algebra helpers shared by the physics modules.
//!
//! Operators on the two-qubit space are fixed-size `Matrix4<C64>`. Anything
//! that needs a decomposition goes through `DMatrix`, which keeps nalgebra's
//! trait bounds simple at these sizes.

use nalgebra::{DMatrix, DVector, Matrix2, Matrix4, SMatrix, SVector};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type Mat2 = Matrix2<C64>;
pub type Mat4 = Matrix4<C64>;
pub type Mat16 = SMatrix<C64, 16, 16>;
pub type Vec16 = SVector<C64, 16>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Pauli matrix σ_axis for axis 0 (identity), 1, 2, 3.
pub fn sigma(axis: usize) -> Mat2 {
    match axis {
        0 => Mat2::identity(),
        1 => Mat2::new(ZERO, ONE, ONE, ZERO),
        2 => Mat2::new(ZERO, -I, I, ZERO),
        3 => Mat2::new(ONE, ZERO, ZERO, -ONE),
        _ => panic!("Pauli axis {axis} out of range"),
    }
}

pub fn kron2(a: &Mat2, b: &Mat2) -> Mat4 {
    Mat4::from_fn(|r, c| a[(r / 2, c / 2)] * b[(r % 2, c % 2)])
}

/// Column-stacking vectorization.
pub fn vectorize(m: &Mat4) -> Vec16 {
    Vec16::from_column_slice(m.as_slice())
}

pub fn devectorize(v: &Vec16) -> Mat4 {
    Mat4::from_column_slice(v.as_slice())
}

pub fn to_dyn<const R: usize, const C: usize>(m: &SMatrix<C64, R, C>) -> DMatrix<C64> {
    DMatrix::from_column_slice(R, C, m.as_slice())
}

pub fn hermitian_part<const N: usize>(m: &SMatrix<C64, N, N>) -> SMatrix<C64, N, N> {
    (m + m.adjoint()).scale(0.5)
}

/// Largest entry-wise deviation from Hermiticity.
pub fn hermiticity_defect<const N: usize>(m: &SMatrix<C64, N, N>) -> f64 {
    (m - m.adjoint())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

pub fn max_abs<const R: usize, const C: usize>(m: &SMatrix<C64, R, C>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Eigenvalues of the Hermitian part of `m`, ascending.
pub fn hermitian_eigenvalues<const N: usize>(m: &SMatrix<C64, N, N>) -> Vec<f64> {
    let h = to_dyn(&hermitian_part(m));
    let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Eigen-decomposition of the Hermitian part of `m`: ascending eigenvalues with
/// matching unit eigenvectors.
pub fn hermitian_eigh<const N: usize>(m: &SMatrix<C64, N, N>) -> (Vec<f64>, Vec<SVector<C64, N>>) {
    let h = to_dyn(&hermitian_part(m));
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..N).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = order
        .iter()
        .map(|&k| SVector::<C64, N>::from_column_slice(eig.eigenvectors.column(k).as_slice()))
        .collect();
    (values, vectors)
}

pub fn min_hermitian_eigenvalue<const N: usize>(m: &SMatrix<C64, N, N>) -> f64 {
    hermitian_eigenvalues(m)[0]
}

/// Σ|λ| of the Hermitian part.
pub fn trace_norm<const N: usize>(m: &SMatrix<C64, N, N>) -> f64 {
    hermitian_eigenvalues(m).iter().map(|x| x.abs()).sum()
}

/// Largest singular value.
pub fn spectral_norm<const N: usize>(m: &SMatrix<C64, N, N>) -> f64 {
    to_dyn(m)
        .singular_values()
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

/// Unitary change of basis from column-stacked operators to the orthonormal
/// Pauli-product basis `σ_a ⊗ σ_b / 2`, column index `4a + b`.
pub fn pauli_basis() -> Mat16 {
    let mut t = Mat16::zeros();
    for a in 0..4 {
        for b in 0..4 {
            let p = kron2(&sigma(a), &sigma(b)).scale(0.5);
            t.set_column(4 * a + b, &vectorize(&p));
        }
    }
    t
}

// Padé(13) numerator/denominator coefficients.
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// Scaling threshold of the degree-13 approximant.
pub const THETA13: f64 = 5.371920351148152;

fn norm1(a: &DMatrix<C64>) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Matrix exponential by scaling and squaring around a diagonal Padé(13)
/// approximant.
pub fn expm(a: &DMatrix<C64>) -> DMatrix<C64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm needs a square matrix");
    let eye = DMatrix::<C64>::identity(n, n);
    let nrm = norm1(a);
    if nrm == 0.0 {
        return eye;
    }
    let squarings = if nrm > THETA13 {
        (nrm / THETA13).log2().ceil() as i32
    } else {
        0
    };
    let a = a.scale(0.5f64.powi(squarings));

    let b = |k: usize| C64::from(PADE13[k]);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;

    let inner_u = &a6 * (&a6 * b(13) + &a4 * b(11) + &a2 * b(9));
    let u = &a * (inner_u + &a6 * b(7) + &a4 * b(5) + &a2 * b(3) + &eye * b(1));
    let inner_v = &a6 * (&a6 * b(12) + &a4 * b(10) + &a2 * b(8));
    let v = inner_v + &a6 * b(6) + &a4 * b(4) + &a2 * b(2) + &eye * b(0);

    let p = &v + &u;
    let q = &v - &u;
    let mut r = q
        .lu()
        .solve(&p)
        .expect("Padé denominator is nonsingular for scaled arguments");
    for _ in 0..squarings {
        r = &r * &r;
    }
    r
}

pub fn dvec_to_vec16(v: &DVector<C64>) -> Vec16 {
    Vec16::from_column_slice(v.as_slice())
}
