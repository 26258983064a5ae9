//! `qpr`: evaluate q-series and q-Laguerre values, verify the asymptotic
//! regimes over degree grids, search Diophantine witnesses and sweep the
//! scaling exponent.
//!
//! Exit codes: 0 success, 1 an eligible row broke its bound, 2 usage or
//! domain error, 3 nothing eligible (or no witness) found.

mod args;
mod commands;
mod rows;

use std::fmt;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{EvalCmd, SweepCmd, VerifyCmd, WitnessCmd};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NONE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "qpr", version, about = "q-Laguerre asymptotics under exponential scaling")]
#[command(after_help = "\
Exit codes: 0 ok, 1 bound violated at an eligible n, 2 usage/domain error, 3 nothing eligible.
QPR_MAX_TERMS overrides the term cap of every series and product.

verify CSV columns: case_id,n,eligible,violated,observed_error,bound,ratio,exact_re,exact_im,
  exact_log10_mag,exact_phase_deg,main_re,main_im,nu,m,m1,beta,residual,rho,eligibility_notes,notes
witness CSV columns: n,m,m1,beta,residual,rho
sweep CSV columns: tau,theta,case_id,rows,eligible_rows,fitted_slope,predicted_order,predicted_slope,ratio
JSON output is an array of objects with the same keys.")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one special function
    Eval(EvalCmd),
    /// Compare exact values with the main term and its error bound
    Verify(VerifyCmd),
    /// List n with |n theta - m - beta| < n^-rho
    Witness(WitnessCmd),
    /// Fit error decay exponents over a grid of tau
    Sweep(SweepCmd),
}

/// A failure that ends the run with exit code 2.
#[derive(Debug)]
pub struct Failure(String);

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Self {
        Self(msg.into())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

macro_rules! failure_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Self(e.to_string())
            }
        }
    )*};
}

failure_from!(qpr_core::Error, std::io::Error, csv::Error, serde_json::Error);

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(c) => c.run(),
        Command::Verify(c) => c.run(),
        Command::Witness(c) => c.run(),
        Command::Sweep(c) => c.run(),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
