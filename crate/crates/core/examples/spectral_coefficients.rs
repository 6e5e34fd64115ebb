//! Bath spectra and Kossakowski coefficients for a few temperatures and
//! separations, with the two independent constructions of the matrix.
//!
//! ```bash
//! cargo run --example spectral_coefficients
//! ```

use bath_entanglement::linalg::max_abs;
use bath_entanglement::{
    build_kossakowski_closed, build_kossakowski_spectral, kossakowski_coefficients, psd_check,
    spectral_density, ModelParams,
};
use nalgebra::Vector3;

pub fn run_example() -> bath_entanglement::Result<()> {
    let n = Vector3::z();
    println!(
        "{:>6} {:>6} {:>12} {:>12} {:>12} {:>12} {:>10}",
        "βω", "ωℓ", "A", "A'", "C'", "g11(-ω)/g11(ω)", "|ΔC|"
    );
    for beta_omega in [0.1, 1.0, 10.0] {
        for omega_ell in [0.0, 1.0, 5.0] {
            let p = ModelParams::from_groups(1.0, Some(beta_omega), omega_ell, n)?;
            let k = kossakowski_coefficients(&p)?;
            let up = spectral_density(&p, p.omega)?;
            let down = spectral_density(&p, -p.omega)?;
            let closed = build_kossakowski_closed(&p)?;
            let spectral = build_kossakowski_spectral(&p)?;
            let diff = max_abs(&(closed.matrix() - spectral.matrix()));
            println!(
                "{beta_omega:>6} {omega_ell:>6} {:>12.6} {:>12.6} {:>12.6} {:>12.6} {:>10.1e}",
                k.a,
                k.a_p,
                k.c_p,
                down.g11 / up.g11,
                diff
            );
            assert!(psd_check(&closed)? > -1e-12 * closed.spectral_norm());
        }
    }
    // Zero temperature: only spontaneous emission survives, A = B.
    let cold = ModelParams::from_groups(1.0, None, 0.0, n)?;
    let k = kossakowski_coefficients(&cold)?;
    println!("\nβ = ∞: A = {:.6}, B = {:.6}, C = {:.6}", k.a, k.b, k.c);
    println!(
        "{}",
        serde_json::to_string_pretty(&k).expect("serializable")
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> bath_entanglement::Result<()> {
    run_example()
}
