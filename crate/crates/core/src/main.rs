use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use bath_entanglement::cli::{self, CliError, RunConfig};

#[derive(Parser)]
#[command(version, about = "Thermal-bath entanglement of two two-level atoms")]
struct Args {
    #[command(subcommand)]
    command: Command,
    /// JSON configuration file; read from standard input when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the data output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for sweeps and trajectories.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Add the bare system Hamiltonian commutator to the generator.
    #[arg(long, global = true)]
    include_hs: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Kossakowski coefficients and the R, S ratios.
    Coefficients,
    /// Onset-of-entanglement verdicts over a (βω, ωℓ) grid.
    PhaseDiagram,
    /// Trajectory of the two-atom state.
    Evolve,
    /// Long-time state and its entanglement.
    Asymptotic,
}

fn emit(out: &Option<PathBuf>, data: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, data)?,
        None => io::stdout().lock().write_all(data.as_bytes())?,
    }
    Ok(())
}

fn run(args: Args) -> Result<(), CliError> {
    let text = match &args.config {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    let mut cfg = RunConfig::from_json(&text)?;
    cfg.include_hs |= args.include_hs;

    match args.command {
        Command::Coefficients => emit(&args.out, &cli::cmd_coefficients(&cfg)?),
        Command::PhaseDiagram => {
            let pd = cli::with_threads(args.threads, || cli::cmd_phase_diagram(&cfg))??;
            emit(&args.out, &pd.csv)?;
            if pd.disagreements > 0 {
                return Err(CliError::Disagreement(pd.disagreements));
            }
            Ok(())
        }
        Command::Evolve => {
            let ev = cli::with_threads(args.threads, || cli::cmd_evolve(&cfg))??;
            emit(&args.out, &ev.csv)?;
            let summary = serde_json::to_string_pretty(&ev.summary).expect("serializable");
            match &args.out {
                Some(path) => {
                    let mut sidecar = path.clone().into_os_string();
                    sidecar.push(".summary.json");
                    fs::write(sidecar, summary + "\n")?;
                }
                None => eprintln!("{summary}"),
            }
            Ok(())
        }
        Command::Asymptotic => emit(&args.out, &cli::cmd_asymptotic(&cfg)?),
    }
}

fn main() -> ExitCode {
    env_logger::init();
    match run(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
