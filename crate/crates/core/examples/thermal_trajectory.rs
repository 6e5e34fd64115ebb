//! Time evolution of the canonical product state at coincidence and at a
//! finite separation, tracking concurrence and the conserved `τ`.
//!
//! ```bash
//! cargo run --example thermal_trajectory
//! ```

use bath_entanglement::{
    build_kossakowski_closed, build_superoperator, concurrence, evolve_traj, tau, ModelParams,
    ProductState,
};
use nalgebra::Vector3;

pub fn run_example() -> bath_entanglement::Result<()> {
    let n = Vector3::z();
    let rho0 = ProductState::canonical(&n)?.density_matrix();
    let times: Vec<f64> = (0..=12).map(|k| 0.25 * 2f64.powi(k) - 0.25).collect();
    for omega_ell in [0.0, 1.0] {
        let p = ModelParams::from_groups(1.0, Some(2.0), omega_ell, n)?;
        let m = build_superoperator(&build_kossakowski_closed(&p)?, false, &p);
        let traj = evolve_traj(&m, &rho0, &times)?;
        println!(
            "βω = 2, ωℓ = {omega_ell}  (Runge–Kutta deviation {:.1e})",
            traj.rk_deviation
        );
        println!("{:>10} {:>12} {:>10}", "ωt", "concurrence", "τ");
        for (t, rho) in traj.iter() {
            println!("{t:>10.2} {:>12.8} {:>10.6}", concurrence(rho), tau(rho));
        }
        println!();
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> bath_entanglement::Result<()> {
    run_example()
}
