//! Long-time entanglement: the stationary family at coincidence, its
//! concurrence map over `(R, τ)`, and the unique separable equilibrium at
//! finite separation.
//!
//! ```bash
//! cargo run --example asymptotic_entanglement
//! ```

use bath_entanglement::{
    asymptotic_concurrence, asymptotic_state, build_kossakowski_closed, build_superoperator,
    concurrence, criterion_rs, min_eig_pt, tau, threshold_tau, DensityMatrix, ModelParams,
    ProductState,
};
use nalgebra::Vector3;

pub fn run_example() -> bath_entanglement::Result<()> {
    println!("asymptotic concurrence at coincidence; columns τ = −3 … 1");
    for i in 0..=5 {
        let r = 0.2 * f64::from(i);
        let row: Vec<String> = (0..=8)
            .map(|j| {
                format!(
                    "{:.3}",
                    asymptotic_concurrence(r, -3.0 + 0.5 * f64::from(j))
                )
            })
            .collect();
        println!(
            "R={r:.1} (τ* = {:+.3}): {}",
            threshold_tau(r),
            row.join(" ")
        );
    }

    let n = Vector3::z();
    let starts = [
        (
            "canonical |−+⟩",
            ProductState::canonical(&n)?.density_matrix(),
        ),
        ("singlet", DensityMatrix::singlet()),
        ("maximally mixed", DensityMatrix::maximally_mixed()),
    ];
    for omega_ell in [0.0, 2.0] {
        let p = ModelParams::from_groups(1.0, Some(3.0), omega_ell, n)?;
        let r = criterion_rs(&p)?.r;
        let m = build_superoperator(&build_kossakowski_closed(&p)?, false, &p);
        println!("\nβω = 3 (R = {r:.4}), ωℓ = {omega_ell}");
        for (label, rho0) in &starts {
            let st = asymptotic_state(&m, rho0, &p)?;
            println!(
                "  {label:<16} dim ker = {}  C∞ = {:.10}  τ∞ = {:+.6}  min PT eig = {:+.3e}  (checked at ωT = {:.0})",
                st.stationary_dim,
                concurrence(&st.rho),
                tau(&st.rho),
                min_eig_pt(&st.rho),
                st.check_time
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> bath_entanglement::Result<()> {
    run_example()
}
