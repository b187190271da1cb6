mod common;

use common::*;
use proptest::prelude::*;
use qpsi_core::qcore::{lattice_clearance, qpoch_inf, qpoch_multi, ShiftRange};
use qpsi_core::series::*;
use qpsi_core::{Complex64, QError};

fn psi(a: &[f64], b: &[f64], x: f64) -> PsiParams {
    PsiParams::new(
        a.iter().map(|&v| re(v)).collect(),
        b.iter().map(|&v| re(v)).collect(),
        re(x),
        q(0.5),
    )
    .unwrap()
}

fn vwp6(a: f64, b: f64, c: f64, d: f64, e: f64) -> VWP6Params {
    VWP6Params {
        a: re(a),
        b: re(b),
        c: re(c),
        d: re(d),
        e: re(e),
        q: q(0.5),
    }
}

#[test]
fn convergence_report() {
    let r = converges(&psi(&[0.4], &[0.1], 0.5));
    assert!(r.converges);
    assert!((r.lower_margin - 0.25).abs() < 1e-15 && (r.upper_margin - 0.5).abs() < 1e-15);
    assert!(!converges(&psi(&[0.4], &[0.4], 0.5)).converges);
    assert!(!converges(&psi(&[0.4], &[0.1], 1.0)).converges);
    assert!(PsiParams::new(vec![re(1.0)], vec![], re(0.5), q(0.5)).is_err());
}

#[test]
fn b_equal_q_truncates_to_q_binomial() {
    let p = psi(&[0.4], &[0.5], 0.3);
    for nu in -5..0 {
        assert_eq!(rpsir_term(&p, nu, &pol()).unwrap(), re(0.0));
    }
    let s = sum_rpsir(&p, &pol()).unwrap();
    assert!(s.converged);
    // the scan below zero stops after `consecutive_small` exact zeros
    assert!(s.truncation_window[0].0 >= -(pol().consecutive_small as i64));
    assert_rel(s.value, c(oracle::PSI11_B_EQ_Q), 1e-13);
    let h = q(0.5);
    let binomial = qpoch_inf(re(0.12), h, &pol()) / qpoch_inf(re(0.3), h, &pol());
    assert_rel(s.value, binomial, 1e-13);
    assert_rel(
        product_1psi1(re(0.4), re(0.5), re(0.3), h, &pol()).unwrap(),
        binomial,
        1e-13,
    );
}

#[test]
fn ramanujan_example() {
    let s = sum_rpsir(&psi(&[0.4], &[0.1], 0.5), &pol()).unwrap();
    assert!(s.converged);
    assert_rel(s.value, c(oracle::PSI11_SUM), 1e-12);
    let prod = product_1psi1(re(0.4), re(0.1), re(0.5), q(0.5), &pol()).unwrap();
    assert_rel(prod, c(oracle::PSI11_PRODUCT), 1e-13);
    assert_rel(s.value, prod, 1e-10);
}

#[test]
fn ramanujan_a_equal_one() {
    let s = sum_rpsir(&psi(&[1.0], &[0.1], 0.3), &pol()).unwrap();
    assert_rel(s.value, c(oracle::PSI11_A1_SUM), 1e-12);
    let prod = product_1psi1(re(1.0), re(0.1), re(0.3), q(0.5), &pol()).unwrap();
    assert_rel(prod, c(oracle::PSI11_A1_PRODUCT), 1e-13);
    // x = q is a zero of the product
    let zero = product_1psi1(re(1.0), re(0.1), re(0.5), q(0.5), &pol());
    assert!(matches!(zero, Err(QError::Pole(_))) || zero.unwrap().norm() < 1e-14);
}

#[test]
fn two_psi_two_example() {
    let s = sum_rpsir(&psi(&[0.4, 0.3], &[0.05, 0.1], 0.5), &pol()).unwrap();
    assert!(s.converged);
    assert!(s.err_estimate <= 1e-12 * s.value.norm());
    assert_rel(s.value, c(oracle::PSI22_SUM), 1e-12);
}

#[test]
fn outside_annulus_is_a_convergence_error() {
    let r = sum_rpsir(&psi(&[0.4], &[0.1], 1.2), &pol());
    assert!(matches!(r, Err(QError::Convergence { .. })));
    // |a^2 q / (bcde)| = 0.5 * 0.5^2 / 0.05^2 > 1
    let r = vwp6_lhs(&vwp6(0.5, 0.1, 0.5, 0.5, 0.2), &pol());
    assert!(matches!(r, Err(QError::Convergence { .. })));
}

#[test]
fn bailey_example() {
    let p = vwp6(0.09, 0.7, 0.6, 0.55, 0.8);
    let s = vwp6_lhs(&p, &pol()).unwrap();
    assert!(s.converged);
    assert_rel(s.value, c(oracle::VWP6_LHS), 1e-11);
    let rhs = vwp6_rhs(&p, &pol()).unwrap();
    assert_rel(rhs, c(oracle::VWP6_RHS), 1e-12);
    assert_rel(s.value, rhs, 1e-9);
}

#[test]
fn bailey_singular_example_is_a_pole() {
    // d = q: (q/d)_inf = 0 upstairs and the negative side hits a pole
    assert!(vwp6_lhs(&vwp6(0.09, 0.7, 0.6, 0.5, 0.8), &pol()).is_err());
}

#[test]
fn bailey_with_e_equal_a_over_d() {
    let (a, d) = (0.09, 0.55);
    let p = vwp6(a, 0.7, 0.6, d, a / d);
    let rhs = vwp6_rhs(&p, &pol()).unwrap();
    assert!(rhs.is_finite());
    assert_rel(rhs, c(oracle::VWP6_E_A_OVER_D_RHS), 1e-12);
    assert_rel(
        vwp6_lhs(&p, &pol()).unwrap().value,
        c(oracle::VWP6_E_A_OVER_D_LHS),
        1e-10,
    );
}

#[test]
fn bailey_product_is_symmetric() {
    let base = vwp6_rhs(&vwp6(0.09, 0.7, 0.6, 0.55, 0.8), &pol()).unwrap();
    for (b, c_, d, e) in [
        (0.6, 0.7, 0.55, 0.8),
        (0.8, 0.6, 0.55, 0.7),
        (0.7, 0.55, 0.6, 0.8),
        (0.55, 0.8, 0.7, 0.6),
    ] {
        assert_rel(vwp6_rhs(&vwp6(0.09, b, c_, d, e), &pol()).unwrap(), base, 1e-14);
    }
}

#[test]
fn square_root_branch_is_immaterial() {
    let p = vwp6(0.09, 0.7, 0.6, 0.55, 0.8);
    let mut flipped = p.to_psi();
    flipped.a.swap(0, 1);
    flipped.b.swap(0, 1);
    let s = sum_rpsir(&flipped, &pol()).unwrap();
    assert_rel(s.value, vwp6_lhs(&p, &pol()).unwrap().value, 1e-13);
}

fn ramanujan_point() -> impl Strategy<Value = (f64, Complex64, Complex64, Complex64)> {
    (
        0.1f64..0.8,
        0.3f64..3.0,
        -3.1f64..3.1,
        0.05f64..2.0,
        -3.1f64..3.1,
        0.0f64..1.0,
        -3.1f64..3.1,
    )
        .prop_map(|(qv, ar, at, br, bt, s, xt)| {
            let a = Complex64::from_polar(ar, at);
            let b = Complex64::from_polar(br, bt);
            let lo = b.norm() / a.norm() + 0.05;
            let x = Complex64::from_polar(lo + s * (0.95 - lo), xt);
            (qv, a, b, x)
        })
}

proptest! {
    #![proptest_config(seeded(64))]

    #[test]
    // the direct form grows like q^(-nu^2/2) and leaves f64 below nu = -20 at q = 0.1
    fn term_matches_pochhammer_form((qv, a, b, x) in ramanujan_point(), nu in -15i64..40) {
        let h = q(qv);
        prop_assume!(lattice_clearance(b, h, ShiftRange::All) > 0.01);
        prop_assume!(lattice_clearance(a, h, ShiftRange::All) > 0.01);
        let p = PsiParams::new(vec![a], vec![b], x, h).unwrap();
        let t = rpsir_term(&p, nu, &pol()).unwrap();
        let direct = qpoch_multi(&[a], h, nu, &pol()).unwrap() / qpoch_multi(&[b], h, nu, &pol()).unwrap()
            * x.powi(nu as i32);
        prop_assert!(rel(t, direct) <= 1e-12, "{} vs {}", t, direct);
    }

    #[test]
    fn ramanujan_identity((qv, a, b, x) in ramanujan_point()) {
        let h = q(qv);
        prop_assume!(x.norm() > b.norm() / a.norm() + 0.05 && x.norm() < 0.95);
        let hq = re(qv);
        for u in [x, b, hq / a, b / (a * x), a * x, b / a, hq / (a * x)] {
            prop_assume!(lattice_clearance(u, h, ShiftRange::NonNegative) >= 0.01);
        }
        let p = PsiParams::new(vec![a], vec![b], x, h).unwrap();
        let prod = product_1psi1(a, b, x, h, &pol()).unwrap();
        // only well-conditioned sums are expected to reach 1e-9
        prop_assume!(rpsir_abs_sum(&p, &pol()).unwrap() <= 1e3 * prod.norm());
        let s = sum_rpsir(&p, &pol()).unwrap();
        prop_assert!(rel(s.value, prod) <= 1e-9, "{} vs {}", s.value, prod);
    }
}
