use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use schwarz_cli::{configure_threads, run_scenario, sample_density, verify_suite, CliResult, ScenarioConfig};
use schwarz_core::verify::Suite;

/// Pressure fields, source densities and verification suites for
/// Schwarz-function representations of Hele-Shaw and elliptic growth.
#[derive(Debug, Parser)]
#[command(name = "schwarz", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample a scenario on its grid.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the inter-focal source density of an ellipse family.
    Density {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a verification suite: all, reflections, cauchy, heleshaw or growth.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long)]
        out: PathBuf,
    },
}

fn execute(cli: Cli) -> CliResult<bool> {
    configure_threads()?;
    match cli.command {
        Command::Run { config, out } => {
            let config = ScenarioConfig::load(&config)?;
            let report = run_scenario(&config, &out)?;
            for snap in &report.snapshots {
                println!(
                    "t={} points={} masked_singular={} masked_error={} elapsed_ms={:.1}",
                    snap.t, snap.points, snap.masked_singular, snap.masked_error, snap.elapsed_ms
                );
                for r in &snap.verifications {
                    println!("  {} {} max_error={:e}", if r.passed { "PASS" } else { "FAIL" }, r.check_name, r.max_error);
                }
            }
            Ok(report.passed)
        }
        Command::Density { config, out } => {
            let config = ScenarioConfig::load(&config)?;
            for s in sample_density(&config, &out)? {
                println!("{}", serde_json::to_string(&s)?);
            }
            Ok(true)
        }
        Command::Verify { suite, out } => {
            let reports = verify_suite(suite, &out)?;
            for r in &reports {
                println!("{} {} max_error={:e} tolerance={:e}", if r.passed { "PASS" } else { "FAIL" }, r.check_name, r.max_error, r.tolerance);
            }
            let failed = reports.iter().filter(|r| !r.passed).count();
            println!("{} checks, {failed} failed", reports.len());
            Ok(failed == 0)
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
