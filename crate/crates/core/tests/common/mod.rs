#![allow(dead_code)]

pub mod oracle;

use qpsi_core::{Complex64, QBase, SumPolicy};

pub fn c(v: [f64; 2]) -> Complex64 {
    Complex64::new(v[0], v[1])
}

pub fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub fn q(v: f64) -> QBase {
    QBase::new(v).unwrap()
}

pub fn pol() -> SumPolicy {
    SumPolicy::default()
}

pub fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

#[track_caller]
pub fn assert_rel(a: Complex64, b: Complex64, tol: f64) {
    let r = rel(a, b);
    assert!(r <= tol, "{a} vs {b}: relative difference {r:e} > {tol:e}");
}

/// Fixed-seed configuration so property runs are reproducible.
pub fn seeded(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..proptest::test_runner::Config::default()
    }
}
