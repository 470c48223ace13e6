use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use plumbing_core::cli::{parse_field_flag, parse_spec, run, Check, CliError, Report, ALL_CHECKS};

#[derive(Parser)]
#[command(
    name = "plumbing",
    version,
    about = "Exact checks for A_n plumbings of lens spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Slope geometry: core types, curve types, assumptions.
    Analyze(Common),
    /// Zeroth cohomology of the base-changed dg algebra.
    Contraction(Common),
    /// The truncated isomorphism onto the completed cyclic presentation.
    VerifyPsi(Common),
    /// Orders of the central units in the localized algebra.
    Torsion(Common),
    /// Braid relations and the nontriviality sample.
    BraidCheck(Common),
    /// Every check listed in the spec, or all of them.
    Report(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    spec: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Polynomial truncation degree N.
    #[arg(long)]
    truncation: Option<u32>,
    /// Winding bound W.
    #[arg(long)]
    winding: Option<u32>,
    /// `rational` or `fp:<p>`.
    #[arg(long)]
    field: Option<String>,
}

fn execute(cli: Cli) -> Result<Report, CliError> {
    let (opts, fixed): (Common, Option<&[Check]>) = match cli.command {
        Command::Analyze(c) => (c, Some(&[Check::Geometry])),
        Command::Contraction(c) => (c, Some(&[Check::Contraction])),
        Command::VerifyPsi(c) => (c, Some(&[Check::Psi])),
        Command::Torsion(c) => (c, Some(&[Check::Torsion])),
        Command::BraidCheck(c) => (c, Some(&[Check::Braid])),
        Command::Report(c) => (c, None),
    };
    let mut spec = parse_spec(&opts.spec)?;
    if let Some(n) = opts.truncation {
        spec.truncation.poly_degree = n;
    }
    if let Some(w) = opts.winding {
        spec.truncation.winding = w;
    }
    if let Some(f) = &opts.field {
        spec.field = parse_field_flag(f)?;
    }
    let checks = match fixed {
        Some(c) => c.to_vec(),
        None => spec.checks.clone().unwrap_or_else(|| ALL_CHECKS.to_vec()),
    };
    let report = run(&spec, &checks)?;
    let json = report.to_json();
    match &opts.out {
        Some(path) => std::fs::write(path, json).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?,
        None => print!("{json}"),
    }
    Ok(report)
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(r) if r.passed => ExitCode::SUCCESS,
        Ok(r) => {
            eprintln!("verification failed");
            ExitCode::from(r.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
