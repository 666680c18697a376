//! `dispersim`: Monte-Carlo dispersion simulator for NPP crystal films.
//!
//! Subcommands: `simulate` (run the photon-delay model), `reference`
//! (classical model curves and bundled datasets), `compare` (join a
//! simulation against the measured data) and `calibrate` (fit the orbit
//! parameters).

mod calibrate;
mod compare;
mod errors;
mod manifest;
mod output;
mod reference;
mod simulate;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "dispersim",
    version,
    about = "Microscopic photon-delay dispersion model for NPP crystal films"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate the dispersion curve n(λ) for the film
    Simulate(simulate::SimulateArgs),
    /// Emit reference curves and bundled datasets
    Reference(reference::ReferenceArgs),
    /// Compare a simulated table against the measured dataset
    Compare(compare::CompareArgs),
    /// Fit the orbit parameters (ε, Z, u) to measured targets
    Calibrate(calibrate::CalibrateArgs),
}

/// `DISPERSIM_THREADS` caps the worker count. Results are bit-identical for
/// any value; it only trades wall time.
fn init_thread_pool() {
    if let Ok(v) = std::env::var("DISPERSIM_THREADS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn main() {
    init_thread_pool();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(args) => simulate::run(args),
        Command::Reference(args) => reference::run(args),
        Command::Compare(args) => compare::run(args),
        Command::Calibrate(args) => calibrate::run(args),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
