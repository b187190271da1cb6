//! `qpsi verify`.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use qpsi_core::verify::{self, RunOptions, SuiteReport};

use crate::{Failure, PolicyArgs};

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite name, `all`, or a single identity.
    #[arg(long, required_unless_present = "list")]
    suite: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Trials per identity (default: each identity's own count).
    #[arg(long)]
    trials: Option<usize>,
    /// Pass threshold for every identity (default: each identity's own).
    #[arg(long)]
    tol: Option<f64>,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    format: ReportFormat,
    /// Leave wall_ms out so that reports are reproducible byte for byte.
    #[arg(long)]
    no_timing: bool,
    /// Print every suite with its identities and sampling regions.
    #[arg(long)]
    list: bool,
    #[command(flatten)]
    policy: PolicyArgs,
}

fn run_named(name: &str, opts: &RunOptions) -> Option<SuiteReport> {
    if let Some(rep) = verify::run_suite(name, opts) {
        return Some(rep);
    }
    let part = verify::registry().iter().find(|p| p.identity == name)?;
    let (results, skipped) = verify::run_part(part, opts);
    Some(SuiteReport::new(name, opts.seed, opts.policy, results, skipped))
}

fn write_report(rep: &SuiteReport, format: ReportFormat, out: impl Write) -> io::Result<()> {
    let mut out = BufWriter::new(out);
    match format {
        ReportFormat::Json => writeln!(out, "{}", rep.to_json())?,
        ReportFormat::Csv => rep.write_csv(&mut out).map_err(io::Error::other)?,
    }
    out.flush()
}

fn summarize(rep: &SuiteReport) {
    let mut err = io::stderr().lock();
    for (identity, worst) in rep.worst_by_identity() {
        let (pass, n) = rep
            .results
            .iter()
            .filter(|r| r.identity == identity)
            .fold((0, 0), |(p, n), r| (p + r.pass as usize, n + 1));
        let _ = writeln!(err, "{identity:<32} {pass:>5}/{n:<5} worst rel_err {worst:.3e}");
    }
    for r in rep.results.iter().filter(|r| r.error.is_some()) {
        let _ = writeln!(err, "  {}: {}", r.identity, r.error.as_deref().unwrap_or_default());
    }
    let s = rep.summary;
    let _ = writeln!(
        err,
        "{}: {} total, {} passed, {} failed, {} skipped",
        rep.suite, s.total, s.passed, s.failed, s.skipped
    );
}

pub fn run(args: &VerifyArgs) -> Result<(), Failure> {
    if args.list {
        return crate::emit(verify::listing().trim_end());
    }
    let name = args.suite.as_deref().unwrap_or_default();
    if let Some(t) = args.tol {
        if t.is_nan() || t < 0.0 {
            return Err(Failure::Usage(format!("--tol must be non-negative, got {t}")));
        }
    }
    let opts = RunOptions {
        seed: args.seed,
        trials: args.trials,
        tol: args.tol,
        policy: args.policy.build(None)?,
        timing: !args.no_timing,
    };
    let rep = run_named(name, &opts).ok_or_else(|| {
        Failure::Usage(format!(
            "unknown suite or identity `{name}`; known suites: {}, all",
            verify::SUITES.join(", ")
        ))
    })?;
    match &args.report {
        Some(path) => {
            let f = File::create(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            write_report(&rep, args.format, f).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        }
        None => match write_report(&rep, args.format, io::stdout().lock()) {
            Err(e) if e.kind() != io::ErrorKind::BrokenPipe => return Err(Failure::Io(e.to_string())),
            _ => {}
        },
    }
    summarize(&rep);
    match rep.summary.failed {
        0 => Ok(()),
        n => Err(Failure::Failed(n)),
    }
}
