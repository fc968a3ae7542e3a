//! Command-line scenario runner.
//!
//! Exit codes: 0 when every executed check passes, 1 when the run completes
//! but a check fails, 2 for usage, parse, or domain errors.

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::Parser;

use qmix::cli::{
    canonical_spec, emit_report, emit_run_all, parse_spec, run, run_all, validate_spec, ExitStatus,
    Format, ScenarioId, ScenarioSpec,
};
use qmix::{Error, Result};

#[derive(Parser, Debug)]
#[command(
    name = "qmix",
    about = "Runs density-matrix measurement scenarios and reports their checks",
    disable_help_subcommand = true
)]
struct Args {
    /// Scenario to run with its canonical parameters
    #[arg(long, conflicts_with_all = ["spec", "run_all"])]
    scenario: Option<String>,

    /// Path to a JSON spec document, or '-' to read it from stdin
    #[arg(long, conflicts_with = "run_all")]
    spec: Option<String>,

    /// Run every scenario with canonical parameters
    #[arg(long)]
    run_all: bool,

    /// Output format: json or text
    #[arg(long, default_value = "json")]
    format: String,

    /// Override the check tolerance
    #[arg(long)]
    tolerance: Option<f64>,

    /// Override the random seed
    #[arg(long)]
    seed: Option<u64>,

    /// Override the randomized-trial count
    #[arg(long)]
    trials: Option<usize>,
}

fn load_spec(args: &Args) -> Result<ScenarioSpec> {
    let mut spec = match (&args.scenario, &args.spec) {
        (Some(name), None) => canonical_spec(name.parse::<ScenarioId>()?),
        (None, Some(path)) => {
            let text = if path == "-" {
                let mut buffer = String::new();
                std::io::stdin().read_to_string(&mut buffer)?;
                buffer
            } else {
                std::fs::read_to_string(path)?
            };
            parse_spec(&text)?
        }
        (None, None) => {
            return Err(Error::Usage {
                message: "pass --scenario <name>, --spec <file|->, or --run-all".into(),
            })
        }
        (Some(_), Some(_)) => unreachable!("clap rejects --scenario with --spec"),
    };
    if let Some(tolerance) = args.tolerance {
        spec.tolerance = tolerance;
    }
    if let Some(seed) = args.seed {
        spec.seed = seed;
    }
    if let Some(trials) = args.trials {
        spec.trials = trials;
    }
    validate_spec(&spec)?;
    Ok(spec)
}

fn execute(args: &Args) -> Result<ExitStatus> {
    let format = args.format.parse::<Format>()?;
    let stdout = std::io::stdout();
    if args.run_all {
        let summaries = run_all(args.tolerance, args.seed, args.trials)?;
        stdout
            .lock()
            .write_all(&emit_run_all(&summaries, format)?)?;
        return Ok(
            if summaries
                .iter()
                .all(|summary| summary.exit_status == ExitStatus::Pass)
            {
                ExitStatus::Pass
            } else {
                ExitStatus::Fail
            },
        );
    }
    let spec = load_spec(args)?;
    let summary = run(&spec)?;
    stdout.lock().write_all(&emit_report(&summary, format)?)?;
    Ok(summary.exit_status)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(ExitStatus::Pass) => ExitCode::SUCCESS,
        Ok(ExitStatus::Fail) => ExitCode::from(1),
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(2)
        }
    }
}
