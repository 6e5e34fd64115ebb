//! Does the bath entangle two atoms prepared in a product state?
//!
//! Compares the discriminant test with a short explicit evolution and with
//! the exact minimum of the partial-transpose probe rate, first for the
//! canonical state `|−n⟩⊗|n⟩` and then for arbitrary product states.
//!
//! ```bash
//! cargo run --example generation_criterion
//! ```

use bath_entanglement::{
    build_kossakowski_closed, build_superoperator, generation_test, min_q_rate,
    small_time_ppt_oracle, ModelParams, ProductState,
};
use nalgebra::Vector3;

pub fn run_example() -> bath_entanglement::Result<()> {
    let n = Vector3::new(0.0, 0.6, 0.8);
    let canonical = ProductState::canonical(&n)?;
    println!("canonical state, axis n = {:?}", n.as_slice());
    println!(
        "{:>5} {:>5} {:>9} {:>12} {:>10} {:>8} {:>12}",
        "βω", "ωℓ", "R²+S²−1", "margin", "verdict", "oracle", "min rate"
    );
    for (beta_omega, omega_ell) in [(1.0, 0.0), (1.0, 0.5), (1.0, 3.0), (5.0, 3.0), (0.2, 1.0)] {
        let p = ModelParams::from_groups(1.0, Some(beta_omega), omega_ell, n)?;
        let k = build_kossakowski_closed(&p)?;
        let v = generation_test(&canonical, &k)?;
        let m = build_superoperator(&k, false, &p);
        let oracle = small_time_ppt_oracle(&m, &canonical.density_matrix(), 1e-3)?;
        let probe = min_q_rate(&canonical, &k);
        let rs = v.rs.expect("canonical state");
        println!(
            "{beta_omega:>5} {omega_ell:>5} {:>9.4} {:>12.3e} {:>10} {:>8} {:>12.3e}",
            rs.rs_margin, v.margin, v.verdict, oracle, probe.rate
        );
    }

    println!("\nother product states at βω = 1, ωℓ = 1");
    let p = ModelParams::from_groups(1.0, Some(1.0), 1.0, n)?;
    let k = build_kossakowski_closed(&p)?;
    let m = build_superoperator(&k, false, &p);
    let states = [
        ("both excited along n", n, n),
        ("both in ground state", -n, -n),
        ("orthogonal to n", Vector3::x(), Vector3::y()),
        ("anti-aligned, x axis", Vector3::x(), -Vector3::x()),
    ];
    for (label, b1, b2) in states {
        let s = ProductState::new(b1, b2)?;
        let v = generation_test(&s, &k)?;
        let oracle = small_time_ppt_oracle(&m, &s.density_matrix(), 1e-3)?;
        println!(
            "{label:<24} margin {:>11.3e} verdict {:<8} oracle {oracle}",
            v.margin, v.verdict
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> bath_entanglement::Result<()> {
    run_example()
}
