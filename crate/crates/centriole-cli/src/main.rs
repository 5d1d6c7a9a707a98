//! Command line runner for the verification suites.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use centriole::report::{Format, Injection, RunConfig, SuiteId};
use centriole::suites::run_suite;

/// Build the Bott chains at the configured size, run the selected
/// verification suites, and emit a machine- or human-readable report.
///
/// Exit code is 0 exactly when no check failed.
#[derive(Parser, Debug)]
#[command(name = "centriole", version, about)]
struct Args {
    /// Size parameter; the ambient orthogonal group is SO(16n).
    #[arg(long)]
    n: Option<usize>,

    /// Seed for all sampled checks.
    #[arg(long)]
    seed: Option<u64>,

    /// Predicate tolerance; the distance tolerance is ten times larger
    /// unless set in the config file.
    #[arg(long)]
    tol: Option<f64>,

    /// Samples per sampled check.
    #[arg(long)]
    samples: Option<usize>,

    /// Suite to run: algebra, chains, inclusions, homotopy, or all.
    #[arg(long)]
    suite: Option<String>,

    /// Write the report to this path (in addition to stdout).
    #[arg(long)]
    out: Option<PathBuf>,

    /// Report format: text or json.
    #[arg(long)]
    format: Option<String>,

    /// Flat `key = value` config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Cap on the ambient dimension 16n.
    #[arg(long)]
    dim_cap: Option<usize>,

    /// Inject a deliberate fault to demonstrate failure reporting:
    /// table-f3-identity or clifford-anticommute.
    #[arg(long)]
    inject: Option<String>,
}

fn build_config(args: &Args) -> anyhow::Result<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)?;
        cfg.apply_config_file(&text)?;
    }
    if let Some(n) = args.n {
        cfg.n = n;
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(tol) = args.tol {
        cfg.tol_predicate = tol;
        cfg.tol_distance = tol * 10.0;
    }
    if let Some(samples) = args.samples {
        cfg.samples = samples;
    }
    if let Some(suite) = &args.suite {
        cfg.suites = SuiteId::parse(suite)?;
    }
    if let Some(out) = &args.out {
        cfg.out = Some(out.clone());
    }
    if let Some(format) = &args.format {
        cfg.format = match format.as_str() {
            "text" => Format::Text,
            "json" => Format::Json,
            other => anyhow::bail!("unknown format '{other}'"),
        };
    }
    if let Some(cap) = args.dim_cap {
        cfg.dim_cap = cap;
    }
    if let Some(inject) = &args.inject {
        cfg.inject = Some(match inject.as_str() {
            "table-f3-identity" => Injection::TableF3Identity,
            "clifford-anticommute" => Injection::CliffordAnticommute,
            other => anyhow::bail!("unknown injection '{other}'"),
        });
    }
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg = match build_config(&args) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match run_suite(cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match report.emit() {
        Ok(rendered) => println!("{rendered}"),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    if report.summary.fail == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
