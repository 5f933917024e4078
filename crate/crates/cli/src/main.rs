mod report;
mod runner;
mod scenario;

use clap::{Args, Parser, Subcommand};
use report::Format;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "orbispace", version, about = "Scenario runner for finite orbispace models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute every task in a scenario file and print the report.
    Run(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Path to the scenario file.
    file: PathBuf,
    /// Override the scenario's truncation level (must be at least 2).
    #[arg(long)]
    truncation: Option<usize>,
    /// Coset-table bound for fundamental-group computations.
    #[arg(long, default_value_t = orbispace_core::pi1::DEFAULT_COSET_BOUND)]
    max_cosets: usize,
    /// Default homology coefficients: `integers` or `mod<p>`.
    #[arg(long, default_value = "integers")]
    coeffs: String,
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Barycentric refinement levels applied to every complex.
    #[arg(long, default_value_t = 0)]
    refine: usize,
    /// Write the report to this path instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include per-task wall-clock timings (makes output nondeterministic).
    #[arg(long)]
    timings: bool,
}

const EXIT_TASK_FAILED: u8 = 1;
const EXIT_PARSE_ERROR: u8 = 2;

fn run_command(args: &RunArgs) -> ExitCode {
    let text = match std::fs::read_to_string(&args.file) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("cannot read {}: {e}", args.file.display());
            return ExitCode::from(EXIT_PARSE_ERROR);
        }
    };
    let scenario = match scenario::parse_scenario(&text) {
        Ok(s) => s,
        Err(errors) => {
            for e in errors {
                eprintln!("{}: {e}", args.file.display());
            }
            return ExitCode::from(EXIT_PARSE_ERROR);
        }
    };
    if let Some(t) = args.truncation {
        if t < 2 {
            eprintln!("--truncation must be at least 2, got {t}");
            return ExitCode::from(EXIT_PARSE_ERROR);
        }
    }
    let coeffs = match runner::parse_coefficients(&args.coeffs) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("--coeffs: {e}");
            return ExitCode::from(EXIT_PARSE_ERROR);
        }
    };
    let options = runner::RunOptions {
        truncation: args.truncation,
        max_cosets: args.max_cosets,
        coeffs,
        refine: args.refine,
        timings: args.timings,
    };
    let report = runner::run(&scenario, &options);
    let rendered = report::emit(&report, args.format);
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &rendered) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_PARSE_ERROR);
            }
        }
        None => print!("{rendered}"),
    }
    if report.all_ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_TASK_FAILED)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Run(args) => run_command(args),
    }
}
