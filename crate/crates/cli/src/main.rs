use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pentablock_cli::{
    cmd_classify, cmd_construct, cmd_fejer_riesz, cmd_schwarz, cmd_trace, cmd_verify, Options, RunReport, EXIT_DATA,
};

#[derive(Parser)]
#[command(name = "penta", version, about = "Pentablock membership, factorization, synthesis and Schwarz interpolation")]
struct Cli {
    /// Tolerance override for membership, residual and margin checks.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Write the JSON report here instead of stdout (for `trace`: the CSV rows).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a point (or array of points) against Γ, P̄ and their boundaries.
    Classify { file: PathBuf },
    /// Fejér–Riesz factorization of a nonnegative trigonometric polynomial.
    FejerRiesz { file: PathBuf },
    /// Build a P̄-inner function from zeros and royal nodes.
    Construct { file: PathBuf },
    /// Solve a two-point Schwarz problem.
    Schwarz {
        file: PathBuf,
        /// Only report the feasibility certificate.
        #[arg(long)]
        check_only: bool,
    },
    /// Verify a Γ-inner or P̄-inner function.
    Verify {
        file: PathBuf,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Sample a function on the unit circle as CSV rows.
    Trace {
        file: PathBuf,
        #[arg(long)]
        samples: Option<usize>,
    },
}

fn emit(report: &RunReport, out: Option<&PathBuf>) -> i32 {
    let text = report.to_json();
    match out {
        Some(p) => {
            if let Err(e) = fs::write(p, text + "\n") {
                eprintln!("{}: {e}", p.display());
                return EXIT_DATA;
            }
        }
        None => println!("{text}"),
    }
    report.exit_code
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut opts = Options { tol: cli.tol, ..Options::default() };
    if let Some(t) = opts.tol {
        if !(t.is_finite() && t >= 0.0) {
            eprintln!("--tol must be a finite nonnegative number");
            return ExitCode::from(EXIT_DATA as u8);
        }
    }
    let code = match cli.command {
        Command::Classify { file } => emit(&cmd_classify(&file, &opts), cli.out.as_ref()),
        Command::FejerRiesz { file } => emit(&cmd_fejer_riesz(&file, &opts), cli.out.as_ref()),
        Command::Construct { file } => emit(&cmd_construct(&file, &opts), cli.out.as_ref()),
        Command::Schwarz { file, check_only } => {
            opts.check_only = check_only;
            emit(&cmd_schwarz(&file, &opts), cli.out.as_ref())
        }
        Command::Verify { file, samples } => {
            opts.samples = samples;
            emit(&cmd_verify(&file, &opts), cli.out.as_ref())
        }
        Command::Trace { file, samples } => {
            opts.samples = samples;
            emit(&cmd_trace(&file, &opts, cli.out.as_deref()), None)
        }
    };
    ExitCode::from(code as u8)
}
