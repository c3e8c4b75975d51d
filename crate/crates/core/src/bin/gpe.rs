use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gpe::scenario::{describe, run, verify, Scenario, ScenarioError};

#[derive(Parser)]
#[command(
    name = "gpe",
    version,
    about = "Polygon exchanges, partition joins and billiard singular sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and write its CSV and report files.
    Run {
        scenario: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Run the invariant suite for a scenario and print one line per check.
    Verify {
        scenario: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Print a builtin system.
    Describe { system: String },
}

#[derive(Args)]
struct Overrides {
    /// Output directory.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Cell cap per join level.
    #[arg(long, value_name = "K")]
    cap_cells: Option<usize>,
    /// Coordinate bit-length cap.
    #[arg(long, value_name = "B")]
    cap_bits: Option<u64>,
    /// Bound-check tolerance.
    #[arg(long, value_name = "T")]
    tol: Option<f64>,
    /// Sampling seed.
    #[arg(long, value_name = "S")]
    seed: Option<u64>,
}

fn load(path: &Path, o: &Overrides) -> Result<Scenario, ScenarioError> {
    let mut s = Scenario::from_file(path)?;
    if let Some(d) = &o.out {
        s.out = d.clone();
    }
    if let Some(k) = o.cap_cells {
        s.caps.max_cells = k;
    }
    if let Some(b) = o.cap_bits {
        s.caps.max_bits = b;
    }
    if let Some(t) = o.tol {
        s.tol = t;
    }
    if let Some(seed) = o.seed {
        s.seed = seed;
    }
    Ok(s)
}

fn execute(cmd: Command) -> Result<(), ScenarioError> {
    match cmd {
        Command::Run { scenario, overrides } => {
            let summary = run(&load(&scenario, &overrides)?)?;
            for l in summary.lines {
                println!("{l}");
            }
            Ok(())
        }
        Command::Verify { scenario, overrides } => {
            let checks = verify(&load(&scenario, &overrides)?)?;
            for c in &checks {
                println!("{}", c.line());
            }
            match checks.iter().filter(|c| !c.pass).count() {
                0 => Ok(()),
                k => Err(ScenarioError::VerifyFailed(k)),
            }
        }
        Command::Describe { system } => {
            print!("{}", describe(&system)?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
