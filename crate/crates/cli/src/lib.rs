//! Command-line front end for `pbosc`.
//!
//! Exit codes: 0 all checks pass, 1 a verification failed, 2 usage error,
//! 3 I/O error.

pub mod commands;
pub mod envelope;
pub mod error;
pub mod serial;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use pbosc::DEFAULT_MAX_ROUNDS;

use commands::{Outcome, SusyArgs, Tols};
pub use envelope::{ReportEnvelope, Residual};
pub use error::{CliError, CliResult};
pub use serial::FamilyJson;

#[derive(Debug, Parser)]
#[command(name = "pbosc", version, about = "Finite-dimensional oscillator algebra reports")]
pub struct Cli {
    /// Absolute tolerance; replaces the declared tolerance of every residual
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub abs_tol: Option<f64>,

    /// Relative tolerance, scaled by the magnitude of the checked quantity
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub rel_tol: Option<f64>,

    /// Write the artifact (family JSON, CSV or report) to this file
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the operator family at cutoff s and write it as JSON
    Build {
        #[arg(long)]
        s: usize,
    },
    /// Close {a, a_dag, A} under commutators and certify su(s+1)
    Closure {
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_ROUNDS)]
        max_rounds: usize,
    },
    /// Structure constants of the closed algebra as CSV (a,b,c,f; 1-based)
    StructureConstants {
        #[arg(long)]
        s: usize,
    },
    /// Phase distribution of a state as CSV (m,theta_m,p_m)
    Phase {
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        theta0: f64,
        /// `n:<int>` for a number state, `file:<path>` for amplitudes
        #[arg(long)]
        state: String,
    },
    /// Supersymmetric multiphoton sector report
    Susy {
        /// Photons per transition, at least 1 (k = 0 is the bare two-level case and is not modeled)
        #[arg(long)]
        k: usize,
        /// Per-block dimension, default 4k+8
        #[arg(long = "d", visible_alias = "D")]
        d: Option<usize>,
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        omega0: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        g_re: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        g_im: f64,
        /// Oscillator frequency in H = {Q, Q_dag} Omega / 2
        #[arg(long, visible_alias = "Omega", default_value_t = 1.0)]
        big_omega: f64,
    },
}

pub fn execute(cli: &Cli) -> CliResult<Outcome> {
    let tols = Tols::from_flags(cli.abs_tol, cli.rel_tol)?;
    match &cli.command {
        Command::Build { s } => commands::build(*s, &tols),
        Command::Closure { s, max_rounds } => commands::closure(*s, *max_rounds, &tols),
        Command::StructureConstants { s } => commands::structure(*s, &tols),
        Command::Phase { s, theta0, state } => commands::phase(*s, *theta0, state, &tols),
        Command::Susy {
            k,
            d,
            omega,
            omega0,
            g_re,
            g_im,
            big_omega,
        } => commands::susy(
            &SusyArgs {
                k: *k,
                d: *d,
                omega: *omega,
                omega0: *omega0,
                g_re: *g_re,
                g_im: *g_im,
                big_omega: *big_omega,
            },
            &tols,
        ),
    }
}

/// Runs the command, writes its output and returns the exit code.
pub fn run(cli: &Cli) -> CliResult<u8> {
    let outcome = execute(cli)?;
    commands::emit(&outcome, cli.out.as_deref())
}
