use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ssi_cli::{emit, run_suite, CliError, Format, SuiteConfig, SUITES};

#[derive(Parser)]
#[command(name = "ssi", version, about = "Seeded verification suites for the super-symmetric induced representation library")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a suite (or `all`) and write its report.
    Verify {
        suite: String,
        #[arg(long)]
        seed: Option<u64>,
        /// JSON config; unknown keys are rejected.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Report path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record `wallTimeMs` as 0 so reports are byte-stable.
        #[arg(long)]
        no_timing: bool,
    },
    /// List the available suites.
    List,
}

fn verify(
    suite: &str,
    seed: Option<u64>,
    config: Option<PathBuf>,
    format: Format,
    out: Option<PathBuf>,
    no_timing: bool,
) -> Result<bool, CliError> {
    let mut cfg = match config {
        Some(path) => SuiteConfig::load(&path)?,
        None => SuiteConfig::default(),
    };
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    let mut report = run_suite(suite, &cfg)?;
    if no_timing {
        report.wall_time_ms = 0;
    }
    emit(&report, format, out.as_deref())?;
    let failures = report.failures();
    eprintln!("{}: {} of {} checks passed", report.suite, report.checks.len() - failures, report.checks.len());
    for c in report.checks.iter().filter(|c| !c.passed) {
        eprintln!("  FAIL {}: residual {:e} > tolerance {:e}", c.name, c.residual, c.tolerance);
    }
    Ok(failures == 0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::List => {
            for s in SUITES {
                println!("{s}");
            }
            println!("all");
            ExitCode::SUCCESS
        }
        Command::Verify {
            suite,
            seed,
            config,
            format,
            out,
            no_timing,
        } => match verify(&suite, seed, config, format, out, no_timing) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(e.exit_code())
            }
        },
    }
}
