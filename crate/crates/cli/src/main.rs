use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use serde_json::json;

use finpar_cli::{emit_report, exit_status, run_scenario, Format, ScenarioConfig};

/// Run a scenario file and write its report.
///
/// Exit status: 0 when a verdict was computed, 1 for schema or precondition
/// errors, 2 when two independent computations disagree.
#[derive(Parser, Debug)]
#[command(name = "finpar", version)]
struct Cli {
    /// Scenario configuration (JSON).
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Output format; overrides the scenario's `format`.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Largest level of direct systems; overrides the scenario's `horizon`.
    #[arg(long)]
    horizon: Option<usize>,
    /// Corpus seed; overrides the scenario's `seed`.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the report here instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Add wall-clock timings to the report (makes it non-reproducible).
    #[arg(long)]
    timings: bool,
}

fn fail(msg: impl std::fmt::Display, code: u8) -> ExitCode {
    eprintln!("finpar: {msg}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    let text = match std::fs::read_to_string(&cli.config) {
        Ok(t) => t,
        Err(e) => return fail(format!("{}: {e}", cli.config.display()), 1),
    };
    let mut cfg = match ScenarioConfig::parse(&text) {
        Ok(c) => c,
        Err(e) => return fail(format!("{}: {e}", cli.config.display()), 1),
    };
    cfg.seed = cli.seed.or(cfg.seed);
    cfg.horizon = cli.horizon.or(cfg.horizon);
    let format = cli.format.or(cfg.format).unwrap_or_default();
    let start = Instant::now();
    let mut report = match run_scenario(&cfg) {
        Ok(r) => r,
        Err(e) => return fail(&e, exit_status(&e)),
    };
    if cli.timings {
        report.body.insert("timings".into(), json!({ "elapsed_ms": start.elapsed().as_millis() }));
    }
    let bytes = match emit_report(&report, format) {
        Ok(b) => b,
        Err(e) => return fail(&e, exit_status(&e)),
    };
    let written = match &cli.out {
        Some(p) => std::fs::write(p, bytes),
        None => {
            print!("{bytes}");
            Ok(())
        }
    };
    if let Err(e) = written {
        return fail(e, 1);
    }
    if report.consistent {
        ExitCode::SUCCESS
    } else {
        fail("independent computations disagree; see the report", 2)
    }
}
