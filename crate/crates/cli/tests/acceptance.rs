//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the lines always show.
//! Criteria 1-10 drive the registered verification parts directly at seed
//! 42 with explicit thresholds; 11 runs the `qpsi` binary twice.

use std::process::{exit, Command};
use std::time::Instant;

use qpsi_core::verify::{registry, run_part, RunOptions};

const SEED: u64 = 42;

struct Criterion {
    id: u32,
    title: &'static str,
    /// (identity, pass threshold)
    parts: &'static [(&'static str, f64)],
    /// Wall-clock budget in seconds for all parts together.
    budget: Option<f64>,
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        title: "Ramanujan 1psi1 sum equals product",
        parts: &[("ramanujan-1psi1", 1e-9)],
        budget: Some(10.0),
    },
    Criterion {
        id: 2,
        title: "Bailey 6psi6 sum equals product",
        parts: &[("bailey-6psi6", 1e-8)],
        budget: Some(30.0),
    },
    Criterion {
        id: 3,
        title: "Askey I(xi) closed form; I(1) equals q_beta",
        parts: &[("askey-I", 1e-9), ("askey-I[xi=1]", 1e-12)],
        budget: None,
    },
    Criterion {
        id: 4,
        title: "difference equations: recurrence, nabla, BC1 shifts",
        parts: &[
            ("q-beta-recurrence", 1e-9),
            ("nabla[phi=1]", 1e-9),
            ("nabla[phi=z]", 1e-9),
            ("nabla[phi=1-z]", 1e-9),
            ("bc1-shift[i=1]", 1e-9),
            ("bc1-shift[i=2]", 1e-9),
            ("bc1-shift[i=3]", 1e-9),
            ("bc1-shift[i=4]", 1e-9),
        ],
        budget: None,
    },
    Criterion {
        id: 5,
        title: "asymptotics: alpha-shift leading term, BC1 nu=0 dominance",
        parts: &[("askey-leading[N=40]", 1e-8), ("bc1-limit[N=10]", 1e-6)],
        budget: None,
    },
    Criterion {
        id: 6,
        title: "Aomoto product, n = 2, 3",
        parts: &[("aomoto[n=2]", 1e-7), ("aomoto[n=3]", 1e-7)],
        budget: Some(120.0),
    },
    Criterion {
        id: 7,
        title: "Milne-Gustafson product, n = 2, 3",
        parts: &[("milne-gustafson[n=2]", 1e-7), ("milne-gustafson[n=3]", 1e-7)],
        budget: None,
    },
    Criterion {
        id: 8,
        title: "n = 1 reduction tower",
        parts: &[
            ("reduction[atype-askey]", 1e-8),
            ("reduction[mg-askey]", 1e-8),
            ("reduction[bctype-bc1]", 1e-8),
            ("reduction[vwp6-jackson]", 1e-8),
        ],
        budget: None,
    },
    Criterion {
        id: 9,
        title: "classical Selberg and Dixon-Anderson",
        parts: &[
            ("selberg[n=1]", 1e-12),
            ("selberg[n=2,quadrature]", 1e-6),
            ("dixon-anderson[n=2,quadrature]", 1e-6),
            ("selberg[n=2,unit]", 1e-12),
        ],
        budget: None,
    },
    Criterion {
        id: 10,
        title: "q_beta approaches beta_integral monotonically as q -> 1",
        parts: &[("q-beta-limit", 1e-2)],
        budget: None,
    },
];

fn run(c: &Criterion) -> (bool, String) {
    let start = Instant::now();
    let mut records = 0;
    let mut problems = Vec::new();
    let mut worst: f64 = 0.0;
    for &(identity, tol) in c.parts {
        let Some(part) = registry().iter().find(|p| p.identity == identity) else {
            problems.push(format!("{identity} is not registered"));
            continue;
        };
        let opts = RunOptions {
            seed: SEED,
            tol: Some(tol),
            timing: false,
            ..RunOptions::default()
        };
        let (recs, skipped) = run_part(part, &opts);
        records += recs.len();
        let failed = recs.iter().filter(|r| !r.pass).count();
        if failed > 0 || skipped > 0 {
            problems.push(format!("{identity}: {failed} failed, {skipped} skipped"));
        }
        for r in &recs {
            if let Some(e) = &r.error {
                problems.push(format!("{identity}: {e}"));
            }
        }
        let w = recs.iter().map(|r| r.rel_err / tol).fold(0.0, f64::max);
        worst = worst.max(if w.is_nan() { f64::INFINITY } else { w });
    }
    let secs = start.elapsed().as_secs_f64();
    if let Some(b) = c.budget {
        if secs > b {
            problems.push(format!("took {secs:.1} s, budget {b} s"));
        }
    }
    let mut detail = format!("{records} records, worst rel_err/threshold {worst:.2e}, {secs:.2} s");
    if let Some(b) = c.budget {
        detail.push_str(&format!(" (budget {b} s)"));
    }
    if !problems.is_empty() {
        detail.push_str(&format!("; {}", problems.join("; ")));
    }
    (problems.is_empty(), detail)
}

fn determinism() -> (bool, String) {
    let start = Instant::now();
    let report = || {
        Command::new(env!("CARGO_BIN_EXE_qpsi"))
            .args(["verify", "--suite", "all", "--seed", "42", "--no-timing"])
            .output()
            .expect("qpsi runs")
    };
    let (a, b) = (report(), report());
    let secs = start.elapsed().as_secs_f64();
    let ok = a.status.success() && b.status.success() && !a.stdout.is_empty() && a.stdout == b.stdout;
    let detail = format!(
        "two runs of `verify --suite all --seed 42 --no-timing`: {} bytes, identical {}, exit {:?}/{:?}, {secs:.2} s",
        a.stdout.len(),
        a.stdout == b.stdout,
        a.status.code(),
        b.status.code()
    );
    (ok, detail)
}

fn line(id: u32, ok: bool, title: &str, detail: &str) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("{tag} {id:>2}  {title}: {detail}");
}

fn main() {
    println!("acceptance criteria (seed {SEED})");
    let mut failures = 0;
    for c in CRITERIA {
        let (ok, detail) = run(c);
        failures += !ok as usize;
        line(c.id, ok, c.title, &detail);
    }
    let (ok, detail) = determinism();
    failures += !ok as usize;
    line(11, ok, "byte-identical reports for the same seed", &detail);
    println!(
        "EXCL 12  m = 2 Selberg-type combination and the general-n BC-type product: \
         no closed form to check against; covered by convergence and invariance tests only"
    );
    if failures > 0 {
        println!("{failures} criterion/criteria failed");
        exit(1);
    }
    println!("all criteria passed");
}
