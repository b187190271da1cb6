//! Seeded verification suites.
//!
//! Every identity is a *part*: a parameter generator confined to a documented
//! safe region, a default tolerance and a trial count. A suite is a named group
//! of parts. Each part draws from its own ChaCha8 stream of the run seed, so
//! adding or removing parts never perturbs the others.

mod record;
mod suites;

use std::time::Instant;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::qcore::SumPolicy;

pub use record::{fmt17, SuiteReport, Summary, VerifyRecord};

/// One checkable identity.
#[derive(Debug, Clone, Copy)]
pub struct Part {
    pub identity: &'static str,
    pub suite: &'static str,
    /// What the identity states, in words.
    pub statement: &'static str,
    /// The region the generator draws from.
    pub region: &'static str,
    pub trials: usize,
    pub tol: f64,
    stream: u64,
    run: fn(&mut ChaCha8Rng, usize, &SumPolicy) -> Outcome,
}

/// Run-wide settings.
#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub seed: u64,
    /// Overrides every part's trial count.
    pub trials: Option<usize>,
    /// Overrides every part's pass threshold.
    pub tol: Option<f64>,
    pub policy: SumPolicy,
    pub timing: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: 0,
            trials: None,
            tol: None,
            policy: SumPolicy::default(),
            timing: true,
        }
    }
}

/// The result of one trial before it is judged against a tolerance.
pub(crate) enum Outcome {
    Done(Check),
    Failed {
        params: Vec<(String, f64)>,
        error: String,
    },
    /// The generator found no admissible parameters.
    Skipped,
}

pub(crate) struct Check {
    pub params: Vec<(String, f64)>,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub terms: usize,
    /// Replaces the default `|lhs - rhs| / |rhs|`.
    pub rel_err: Option<f64>,
    /// Extra condition that must hold besides the tolerance.
    pub ok: bool,
}

pub const SUITES: &[&str] = &[
    "ramanujan-1psi1",
    "askey-I",
    "q-beta-recurrence",
    "nabla",
    "bailey-6psi6",
    "bc1-J",
    "bc1-shift",
    "j6phi5",
    "aomoto",
    "milne-gustafson",
    "reductions",
    "classical",
    "asymptotics",
];

pub fn registry() -> &'static [Part] {
    suites::PARTS
}

/// The parts belonging to `suite` (`"all"` selects everything), or `None`
/// for an unknown name.
pub fn parts_of(suite: &str) -> Option<Vec<&'static Part>> {
    if suite == "all" {
        return Some(suites::PARTS.iter().collect());
    }
    if !SUITES.contains(&suite) {
        return None;
    }
    Some(suites::PARTS.iter().filter(|p| p.suite == suite).collect())
}

/// Human-readable registry listing for `--list`.
pub fn listing() -> String {
    let mut out = String::new();
    for suite in SUITES {
        out.push_str(&format!("{suite}\n"));
        for p in suites::PARTS.iter().filter(|p| p.suite == *suite) {
            out.push_str(&format!(
                "  {}  [{} trials, tol {:e}]\n    {}\n    region: {}\n",
                p.identity, p.trials, p.tol, p.statement, p.region
            ));
        }
    }
    out.push_str("all\n  every suite above\n");
    out
}

fn judge(check: Check, identity: &str, tol: f64, wall_ms: Option<f64>) -> VerifyRecord {
    let abs_err = (check.lhs - check.rhs).norm();
    let rel_err = check.rel_err.unwrap_or_else(|| {
        let scale = check.rhs.norm();
        if scale > 0.0 {
            abs_err / scale
        } else if abs_err == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    });
    VerifyRecord {
        identity: identity.to_string(),
        params: check.params,
        lhs: check.lhs,
        rhs: check.rhs,
        rel_err,
        abs_err,
        terms: check.terms,
        wall_ms,
        pass: check.ok && rel_err <= tol,
        error: None,
    }
}

/// Runs one part; records come back in trial order, followed by the number
/// of skipped trials.
pub fn run_part(part: &Part, opts: &RunOptions) -> (Vec<VerifyRecord>, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(part.stream);
    let trials = opts.trials.unwrap_or(part.trials);
    let tol = opts.tol.unwrap_or(part.tol);
    let mut records = Vec::with_capacity(trials);
    let mut skipped = 0;
    for trial in 0..trials {
        let start = Instant::now();
        let outcome = (part.run)(&mut rng, trial, &opts.policy);
        let wall_ms = opts.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
        match outcome {
            Outcome::Done(check) => records.push(judge(check, part.identity, tol, wall_ms)),
            Outcome::Failed { params, error } => {
                let nan = Complex64::new(f64::NAN, f64::NAN);
                records.push(VerifyRecord {
                    identity: part.identity.to_string(),
                    params,
                    lhs: nan,
                    rhs: nan,
                    rel_err: f64::NAN,
                    abs_err: f64::NAN,
                    terms: 0,
                    wall_ms,
                    pass: false,
                    error: Some(error),
                })
            }
            Outcome::Skipped => skipped += 1,
        }
    }
    (records, skipped)
}

/// Runs a suite, or `None` if the name is unknown.
pub fn run_suite(suite: &str, opts: &RunOptions) -> Option<SuiteReport> {
    let parts = parts_of(suite)?;
    let mut results = Vec::new();
    let mut skipped = 0;
    for part in parts {
        let (r, s) = run_part(part, opts);
        results.extend(r);
        skipped += s;
    }
    Some(SuiteReport::new(suite, opts.seed, opts.policy, results, skipped))
}
