//! `elliptic-toda`: coefficient tables, moments, measures and verification
//! reports for elliptic solutions of the restricted Toda chain.
//!
//! Exit status is 0 on success, 1 when a verification report has failing
//! checks, and 2 for usage or domain errors.

mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::Common;

#[derive(Debug, Parser)]
#[command(
    name = "elliptic-toda",
    version,
    about = "Elliptic solutions of the restricted Toda chain"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Recurrence coefficients b_n, u_n for n = 0..n_max.
    Coeffs,
    /// The discrete orthogonality measure (cases i and ii, modified Meixner).
    Measure,
    /// Exact moments c_0..c_{count-1}; JSON output adds Hankel determinants.
    Moments {
        /// Number of moments; defaults to 2*n_max + 2.
        #[arg(long)]
        count: Option<usize>,
    },
    /// Gram matrix of the orthogonal polynomials under their measure.
    Orthogonality {
        /// Tolerance of the tanh-sinh quadrature for continuous weights.
        #[arg(long, default_value = "1e-12")]
        quad_eps: String,
        /// Lattice cutoff for the modified Meixner measure.
        #[arg(long, default_value_t = 300)]
        s_max: usize,
    },
    /// J-fraction against the normalized moment series at real z.
    Fraction {
        #[arg(long, value_delimiter = ',', default_value = "10,20,40")]
        z: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "3,5")]
        depth: Vec<usize>,
    },
    /// A degenerate family beside the limit it approaches.
    Limits,
    /// Run verification suites and emit a report.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: commands::Suite,
        /// Judge every check against this tolerance instead of its own.
        #[arg(long)]
        tol: Option<String>,
        /// Sample points for the identity suite.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let c = &cli.common;
    let result = match &cli.command {
        Command::Coeffs => commands::coeffs(c).map(|_| true),
        Command::Measure => commands::measure(c).map(|_| true),
        Command::Moments { count } => commands::moments(c, *count).map(|_| true),
        Command::Orthogonality { quad_eps, s_max } => {
            commands::orthogonality(c, quad_eps, *s_max).map(|_| true)
        }
        Command::Fraction { z, depth } => commands::fraction(c, z, depth).map(|_| true),
        Command::Limits => commands::limits(c).map(|_| true),
        Command::Verify {
            suite,
            tol,
            samples,
        } => commands::verify(c, *suite, tol.as_deref(), *samples),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain()
        .filter_map(|c| c.downcast_ref::<std::io::Error>())
        .any(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
}
