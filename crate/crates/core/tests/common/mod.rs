#![allow(dead_code)]

use bath_entanglement::linalg::{Mat4, C64};
use bath_entanglement::{Beta, DensityMatrix, ModelParams, ProductState};
use nalgebra::{Matrix3, Vector3, Vector4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn unit_vector(rng: &mut impl Rng) -> Vector3<f64> {
    loop {
        let v = Vector3::new(gaussian(rng), gaussian(rng), gaussian(rng));
        let n = v.norm();
        if n > 1e-3 {
            return v / n;
        }
    }
}

/// Haar-random rotation from a QR step on a Gaussian matrix.
pub fn rotation(rng: &mut impl Rng) -> Matrix3<f64> {
    let g = Matrix3::from_fn(|_, _| gaussian(rng));
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for k in 0..3 {
        if r[(k, k)] < 0.0 {
            let col = -q.column(k);
            q.set_column(k, &col);
        }
    }
    if q.determinant() < 0.0 {
        let col = -q.column(0);
        q.set_column(0, &col);
    }
    q
}

/// Parameters spanning high and zero temperature, coincident and distant atoms.
pub fn params(rng: &mut impl Rng) -> ModelParams {
    let omega = 0.2 + 4.8 * rng.random::<f64>();
    let beta_omega = if rng.random::<f64>() < 0.1 {
        None
    } else {
        Some(10f64.powf(-1.3 + 2.6 * rng.random::<f64>()))
    };
    let omega_ell = if rng.random::<f64>() < 0.1 {
        0.0
    } else {
        10.0 * rng.random::<f64>()
    };
    ModelParams::from_groups(omega, beta_omega, omega_ell, unit_vector(rng)).unwrap()
}

pub fn finite_params(rng: &mut impl Rng, omega_ell: f64) -> ModelParams {
    let beta_omega = 10f64.powf(-1.0 + 2.0 * rng.random::<f64>());
    ModelParams::from_groups(1.0, Some(beta_omega), omega_ell, unit_vector(rng)).unwrap()
}

pub fn complex_gaussian(rng: &mut impl Rng) -> C64 {
    C64::new(gaussian(rng), gaussian(rng))
}

/// Random state of random rank (1 to 4) from the induced Ginibre measure.
pub fn density_matrix(rng: &mut impl Rng) -> DensityMatrix {
    let rank = rng.random_range(1..=4);
    let mut m = Mat4::zeros();
    for _ in 0..rank {
        let v = Vector4::from_fn(|_, _| complex_gaussian(rng));
        m += v * v.adjoint();
    }
    let tr = m.trace();
    m /= tr;
    DensityMatrix::new(bath_entanglement::linalg::hermitian_part(&m)).unwrap()
}

pub fn product_state(rng: &mut impl Rng) -> ProductState {
    ProductState::new(unit_vector(rng), unit_vector(rng)).unwrap()
}

pub fn beta_of(p: &ModelParams) -> Beta {
    p.beta
}
