//! Complete positivity certificates: the spectrum of the Kossakowski matrix
//! and the Choi matrix of the propagator at several times.
//!
//! ```bash
//! cargo run --example complete_positivity
//! ```

use bath_entanglement::linalg::{hermitian_eigenvalues, hermitian_part, to_dyn};
use bath_entanglement::{build_kossakowski_closed, build_superoperator, ModelParams};
use nalgebra::Vector3;

pub fn run_example() -> bath_entanglement::Result<()> {
    let n = Vector3::new(1.0, 1.0, 1.0).normalize();
    for (beta_omega, omega_ell) in [
        (None, 0.0),
        (Some(0.5), 0.0),
        (Some(2.0), 1.5),
        (Some(10.0), 7.0),
    ] {
        let p = ModelParams::from_groups(1.0, beta_omega, omega_ell, n)?;
        let k = build_kossakowski_closed(&p)?;
        let spec = hermitian_eigenvalues(k.matrix());
        let label = beta_omega.map_or("∞".to_string(), |b| b.to_string());
        println!("βω = {label}, ωℓ = {omega_ell}");
        println!(
            "  Kossakowski spectrum: {:?}",
            spec.iter().map(|x| format!("{x:.5}")).collect::<Vec<_>>()
        );
        let m = build_superoperator(&k, true, &p);
        for t in [0.01, 0.1, 1.0, 10.0] {
            let choi = hermitian_part(&m.choi_matrix(t));
            let lo = to_dyn(&choi).symmetric_eigenvalues().min();
            println!(
                "  Choi(ωt = {t:>5}) min eigenvalue {lo:+.3e}, trace {:.6}",
                choi.trace().re
            );
        }
        println!("  generator spectral gap {:.6}", m.spectral_gap());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> bath_entanglement::Result<()> {
    run_example()
}
