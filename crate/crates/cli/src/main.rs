//! `qpsi`: evaluate any operation of the engine or run the seeded
//! verification suites.

mod eval;
mod parse;
mod verify;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qpsi_core::{QError, SumPolicy};

#[derive(Parser, Debug)]
#[command(
    name = "qpsi",
    version,
    about = "Bilateral basic hypergeometric series and Jackson integrals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one operation and print its value.
    Eval(Box<eval::EvalArgs>),
    /// Run a verification suite and write a JSON or CSV report.
    Verify(verify::VerifyArgs),
}

/// Summation policy overrides shared by both subcommands.
#[derive(Args, Debug, Clone, Default)]
pub struct PolicyArgs {
    /// Relative truncation tolerance (default 1e-12, or $QPSI_DEFAULT_TOL).
    #[arg(long, value_name = "TOL")]
    rel_tol: Option<f64>,
    /// Term budget per one-dimensional series.
    #[arg(long)]
    max_terms: Option<usize>,
    /// Shell budget per lattice sum.
    #[arg(long)]
    max_shells: Option<usize>,
    /// Distance from zero at which a denominator counts as a pole.
    #[arg(long)]
    pole_eps: Option<f64>,
}

impl PolicyArgs {
    /// `explicit` is a subcommand-specific flag that also sets `rel_tol`.
    pub fn build(&self, explicit: Option<f64>) -> Result<SumPolicy, Failure> {
        let mut p = SumPolicy::default();
        if let Some(t) = env_tol()? {
            p.rel_tol = t;
        }
        if let Some(t) = explicit.or(self.rel_tol) {
            p.rel_tol = t;
        }
        if let Some(v) = self.max_terms {
            p.max_terms = v;
        }
        if let Some(v) = self.max_shells {
            p.max_shells = v;
        }
        if let Some(v) = self.pole_eps {
            p.pole_eps = v;
        }
        p.validate().map_err(|e| Failure::Usage(e.to_string()))?;
        Ok(p)
    }
}

fn env_tol() -> Result<Option<f64>, Failure> {
    match std::env::var("QPSI_DEFAULT_TOL") {
        Ok(s) if !s.trim().is_empty() => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::Usage(format!("QPSI_DEFAULT_TOL=`{s}` is not a number"))),
        _ => Ok(None),
    }
}

#[derive(Debug)]
pub enum Failure {
    /// Identities were checked and some failed.
    Failed(usize),
    Usage(String),
    Eval(QError),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Failed(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Eval(_) => 3,
            Failure::Io(_) => 4,
        }
    }
}

impl From<QError> for Failure {
    fn from(e: QError) -> Self {
        Failure::Eval(e)
    }
}

/// Prints one block to stdout; a reader that went away is not an error.
pub fn emit(text: &str) -> Result<(), Failure> {
    match writeln!(io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(Failure::Io(e.to_string())),
        _ => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.command {
        Command::Eval(args) => eval::run(&args),
        Command::Verify(args) => verify::run(&args),
    };
    match out {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Failed(n) => eprintln!("qpsi: {n} check(s) failed"),
                Failure::Usage(m) => eprintln!("qpsi: usage error: {m}"),
                Failure::Eval(e) => eprintln!("qpsi: {e}"),
                Failure::Io(m) => eprintln!("qpsi: i/o error: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
