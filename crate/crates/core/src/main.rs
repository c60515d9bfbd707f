use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use sheafilt::cli::{self, CompareTarget};
use sheafilt::sheaf::DEFAULT_SECTION_TOL;

/// Run classical LTI digital filters as sheaves over simplicial line
/// complexes, inspect their diagrams, and check them against classical
/// oracles.
///
/// Coefficient files hold a `b: <floats>` line and an optional `a:
/// <floats>` line with the feedback weights a1..aN of
/// `y[t] = b0*x[t] + sum b_i*x[t-i] - sum a_j*y[t-j]` (note the sign:
/// this is the recurrence form, i.e. the a-line is the tail of the usual
/// transfer-function denominator). Signals are CSV files with one sample
/// per line.
#[derive(Parser)]
#[command(name = "sheafilt", version)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a filter over a signal file.
    Run {
        /// Coefficient file.
        filter: PathBuf,
        /// Input signal CSV.
        input: PathBuf,
        /// Output signal CSV to write.
        output: PathBuf,
        /// CSV with an initial state vector (length order + 1); the memory
        /// components seed the first state. Defaults to zeros.
        #[arg(long)]
        init: Option<PathBuf>,
        /// Also write the traced global section to this file.
        #[arg(long, value_name = "PATH")]
        emit_section: Option<PathBuf>,
        /// Self-check tolerance for the traced section.
        #[arg(long, default_value_t = 0.0)]
        tol: f64,
    },
    /// Write the impulse response of a filter.
    Impulse {
        /// Coefficient file.
        filter: PathBuf,
        /// Number of response samples (>= 1).
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        length: u64,
        /// Output signal CSV to write.
        output: PathBuf,
    },
    /// Check a section file against the filter's gluing conditions.
    Verify {
        /// Coefficient file.
        filter: PathBuf,
        /// Section file (as written by `run --emit-section`).
        section: PathBuf,
        /// Max-norm residual tolerance per gluing equation.
        #[arg(long, default_value_t = DEFAULT_SECTION_TOL)]
        tol: f64,
    },
    /// Compare the sheaf run against classical reference implementations.
    Compare {
        /// Coefficient file.
        filter: PathBuf,
        /// Input signal CSV.
        input: PathBuf,
        /// Reference implementation(s) to run.
        #[arg(long, value_enum, default_value_t = CompareTarget::Oracle)]
        against: CompareTarget,
        /// Peak-normalized relative tolerance.
        #[arg(long, default_value_t = 1e-9)]
        rel_tol: f64,
        /// Absolute tolerance.
        #[arg(long, default_value_t = 0.0)]
        abs_tol: f64,
    },
    /// Print the filter order, stalk dimensions and diagram maps.
    Info {
        /// Coefficient file.
        filter: PathBuf,
    },
}

fn main() -> ExitCode {
    let args = Args::parse();
    let code = match args.command {
        Command::Run {
            filter,
            input,
            output,
            init,
            emit_section,
            tol,
        } => cli::cmd_run(
            &filter,
            &input,
            &output,
            init.as_deref(),
            emit_section.as_deref(),
            tol,
        ),
        Command::Impulse {
            filter,
            length,
            output,
        } => cli::cmd_impulse(&filter, length as usize, &output),
        Command::Verify {
            filter,
            section,
            tol,
        } => cli::cmd_verify(&filter, &section, tol),
        Command::Compare {
            filter,
            input,
            against,
            rel_tol,
            abs_tol,
        } => cli::cmd_compare(&filter, &input, against, rel_tol, abs_tol),
        Command::Info { filter } => cli::cmd_info(&filter),
    };
    ExitCode::from(code as u8)
}
