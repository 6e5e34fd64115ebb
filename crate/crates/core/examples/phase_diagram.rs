//! Onset-of-entanglement phase diagram over temperature and separation,
//! printed as a character map with the analytic boundary `R² + S² = 1`.
//!
//! ```bash
//! cargo run --release --example phase_diagram
//! ```

use bath_entanglement::cli::{cmd_phase_diagram, RunConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (rows, cols) = (16, 48);
    let cfg = RunConfig::from_json(&format!(
        r#"{{"omega": 1.0, "sweep": {{"beta_omega": [0.25, 4.0, {rows}], "omega_ell": [0.0, 9.0, {cols}]}}}}"#
    ))?;
    let pd = cmd_phase_diagram(&cfg)?;
    println!("'#' entangling, '.' not, '?' boundary, '!' oracle disagreement");
    println!("rows: βω from 0.25 (top) to 4; columns: ωℓ from 0 to 9\n");
    for row in pd.records.chunks(cols) {
        let line: String = row
            .iter()
            .map(
                |r| match (r.generated.to_string().as_str(), r.oracle_generated) {
                    _ if r.disagrees(1e-3) => '!',
                    ("true", _) => '#',
                    ("false", _) => '.',
                    _ => '?',
                },
            )
            .collect();
        println!("βω={:<5.2} {line}", row[0].beta_omega);
    }
    println!(
        "\n{} points, {} oracle disagreements",
        pd.records.len(),
        pd.disagreements
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
