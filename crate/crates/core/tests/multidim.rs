mod common;

use common::*;
use qpsi_core::jackson1d::{bc1_j_sum, BC1Params};
use qpsi_core::multidim::*;
use qpsi_core::QError;

fn atype(alpha: f64, tau: f64, a: &[f64], b: &[f64], xi: &[f64]) -> ATypeParams {
    let v = |xs: &[f64]| xs.iter().map(|&x| re(x)).collect::<Vec<_>>();
    ATypeParams::new(re(alpha), re(tau), v(a), v(b), v(xi), q(0.5)).unwrap()
}

fn aomoto2() -> ATypeParams {
    atype(0.8, 0.37, &[1.0], &[4.0], &[0.9, 1.1])
}

fn mg2() -> ATypeParams {
    atype(0.8, 0.5, &[0.9, 1.1], &[2.0, 3.0], &[0.95, 1.05])
}

const A: [f64; 4] = [2.3, 2.0, 1.7, 2.6];

fn bctype2() -> BCTypeParams {
    BCTypeParams::from_a(&A.map(re), re(0.37), vec![re(0.7), re(0.8)], q(0.5)).unwrap()
}

#[test]
fn atype_summand_example() {
    let p = atype(0.8, 0.37, &[1.0], &[0.3], &[1.0, 1.0]);
    let z = [re(1.0), q(0.5).powc(re(0.37))];
    assert_rel(
        atype_summand(&p, &z, &pol()).unwrap(),
        c(oracle::ATYPE_SUMMAND_N2),
        1e-13,
    );
}

#[test]
fn atype_summand_vanishes_on_the_diagonal() {
    let p = aomoto2();
    assert_eq!(atype_summand(&p, &[re(0.7), re(0.7)], &pol()).unwrap(), re(0.0));
    assert!(atype_summand(&p, &[re(0.7)], &pol()).is_err());
}

#[test]
fn aomoto_example() {
    let p = aomoto2();
    let s = atype_sum(&p, &pol()).unwrap();
    assert!(s.converged);
    assert_rel(s.value, c(oracle::AOMOTO_N2_BOX), 1e-11);
    let prod = aomoto_product(&p, &pol()).unwrap();
    assert_rel(prod, c(oracle::AOMOTO_N2_PRODUCT), 1e-12);
    assert_rel(s.value, prod, 1e-7);
}

#[test]
fn aomoto_printed_example_diverges() {
    let p = atype(0.8, 0.37, &[1.0], &[0.3], &[0.9, 1.1]);
    assert!(matches!(atype_sum(&p, &pol()), Err(QError::Convergence { .. })));
}

#[test]
fn aomoto_rejects_integer_tau() {
    let p = atype(0.8, 1.0, &[1.0], &[4.0], &[0.9, 1.1]);
    assert!(matches!(aomoto_product(&p, &pol()), Err(QError::Domain(_))));
    assert!(matches!(aomoto_product(&mg2(), &pol()), Err(QError::Domain(_))));
}

#[test]
fn milne_gustafson_example() {
    let p = mg2();
    let s = atype_sum(&p, &pol()).unwrap();
    assert_rel(s.value, c(oracle::MG_N2_BOX), 1e-11);
    let prod = mg_product(&p, &pol()).unwrap();
    assert_rel(prod, c(oracle::MG_N2_BOX), 1e-12);
    assert_rel(s.value, prod, 1e-7);
}

#[test]
fn milne_gustafson_printed_normalization() {
    // the printed quotient equals -I~ / (q)_inf^2 at n = 2
    let qinf = qpsi_core::qcore::qpoch_inf(re(0.5), q(0.5), &pol());
    assert_rel(-c(oracle::MG_N2_PRODUCT) * qinf * qinf, c(oracle::MG_N2_BOX), 1e-12);
    assert!(mg_constant(&mg2(), &pol()).unwrap().re > 0.0);
}

#[test]
fn milne_gustafson_exchange() {
    let p = mg2();
    let swapped = p.with_xi(vec![re(1.05), re(0.95)]);
    let s = atype_sum(&swapped, &pol()).unwrap().value;
    assert_rel(s, c(oracle::MG_N2_SWAPPED_BOX), 1e-11);
    let r1 = mg_product(&p, &pol()).unwrap() / atype_sum(&p, &pol()).unwrap().value;
    let r2 = mg_product(&swapped, &pol()).unwrap() / s;
    assert_rel(r2, r1, 1e-10);
}

#[test]
fn milne_gustafson_printed_example_diverges() {
    let p = atype(0.8, 0.5, &[0.9, 1.1], &[0.2, 0.3], &[0.95, 1.05]);
    assert!(matches!(atype_sum(&p, &pol()), Err(QError::Convergence { .. })));
}

#[test]
fn atype_shift_invariance() {
    for p in [aomoto2(), mg2()] {
        let base = atype_sum(&p, &pol()).unwrap().value;
        for i in 0..p.n {
            let mut xi = p.xi.clone();
            xi[i] *= 0.5;
            assert_rel(atype_sum(&p.with_xi(xi), &pol()).unwrap().value, base, 1e-9);
        }
    }
}

#[test]
fn atype_is_deterministic() {
    let p = mg2();
    let a = atype_sum(&p, &pol()).unwrap();
    let b = atype_sum(&p, &pol()).unwrap();
    assert_eq!(a.value.re.to_bits(), b.value.re.to_bits());
    assert_eq!(a.value.im.to_bits(), b.value.im.to_bits());
    assert_eq!(a.terms_used, b.terms_used);
}

#[test]
fn lattice_window_history() {
    let l = atype_lattice(&aomoto2(), &pol()).unwrap();
    let h = &l.window.shell_history;
    assert_eq!(h.len(), l.window.shells);
    let k = pol().consecutive_small;
    assert!(h[h.len() - k..].windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn specialization_builders() {
    let h = q(0.5);
    assert_eq!(selberg_spec_xi(1, re(0.7), h), vec![re(1.0)]);
    let xi = selberg_spec_xi(3, re(1.0), h);
    assert_eq!(xi, vec![re(1.0), re(0.5), re(0.25)]);
    let xi = selberg_spec_xi(2, re(0.5), q(0.25));
    assert!((xi[1] - re(0.5)).norm() < 1e-15);

    let p = da_spec_params(re(0.7), &[re(0.4)], h).unwrap();
    assert_eq!((p.n, p.m, p.alpha, p.tau), (1, 1, re(0.7), re(0.5)));
    assert_eq!((p.a[0], p.xi[0]), (re(0.4), re(0.4)));
    assert!((p.b[0] - re(2.5)).norm() < 1e-15);

    let t = re(0.37);
    let qt = h.powc(t);
    assert_eq!(
        atype_m2_xi_family(2, 0, t, re(0.9), re(1.1), h).unwrap(),
        vec![re(1.1), re(1.1) * qt]
    );
    assert_eq!(
        atype_m2_xi_family(2, 2, t, re(0.9), re(1.1), h).unwrap(),
        vec![re(0.9), re(0.9) * qt]
    );
    assert_eq!(
        atype_m2_xi_family(2, 1, t, re(0.9), re(1.1), h).unwrap(),
        vec![re(0.9), re(1.1)]
    );
    assert!(atype_m2_xi_family(2, 3, t, re(0.9), re(1.1), h).is_err());
}

#[test]
fn dixon_anderson_specialization_is_singular() {
    // xi_2 b_2 = q puts a theta zero on the lattice
    let p = da_spec_params(re(0.7), &[re(0.4), re(0.9)], q(0.5)).unwrap();
    assert!(atype_sum(&p, &pol()).is_err());
}

#[test]
fn alternating_sum_example() {
    let p = atype(1.0, 0.5, &[1.5, 2.0, 1.7], &[1.2, 1.8, 1.4], &[0.9, 1.3]);
    let x = [re(0.9), re(1.3), re(1.1)];
    let s = atype_alternating_sum(&p, &x, &pol()).unwrap();
    assert_rel(s.value, c(oracle::ALTERNATING_N2_BOX), 1e-10);
    // exchanging two x values flips the sign
    let swapped = atype_alternating_sum(&p, &[x[1], x[0], x[2]], &pol()).unwrap();
    assert_rel(-swapped.value, s.value, 1e-10);
    assert!(atype_alternating_sum(&mg2(), &x, &pol()).is_err());
}

#[test]
fn bctype_summand_zeros() {
    let p = bctype2();
    assert_eq!(bctype_summand(&p, &[re(0.7), re(0.7)], &pol()).unwrap(), re(0.0));
    assert_eq!(bctype_summand(&p, &[re(0.8), re(1.25)], &pol()).unwrap(), re(0.0));
}

#[test]
fn bctype_example_and_shift_invariance() {
    let p = bctype2();
    let s = bctype_sum(&p, &pol()).unwrap();
    assert!(s.converged);
    assert_rel(s.value, c(oracle::BCTYPE_N2_BOX), 1e-10);
    for i in 0..2 {
        let mut xi = p.xi.clone();
        xi[i] *= 0.5;
        assert_rel(bctype_sum(&p.with_xi(xi), &pol()).unwrap().value, s.value, 1e-9);
    }
}

#[test]
fn bctype_n1_is_bc1() {
    let p = BCTypeParams::from_a(&A.map(re), re(0.37), vec![re(0.7)], q(0.5)).unwrap();
    let one = BC1Params {
        a: A.map(re),
        xi: re(0.7),
        q: q(0.5),
    };
    assert_rel(
        bctype_sum(&p, &pol()).unwrap().value,
        bc1_j_sum(&one, &pol()).unwrap().value,
        1e-10,
    );
}

#[test]
fn parameter_validation() {
    let h = q(0.5);
    assert!(ATypeParams::new(re(1.0), re(0.5), vec![], vec![], vec![re(1.0)], h).is_err());
    assert!(ATypeParams::new(re(1.0), re(0.5), vec![re(1.0)], vec![re(0.0)], vec![re(1.0)], h).is_err());
    assert!(BCTypeParams::new(vec![re(0.1); 3], re(0.5), vec![re(1.0)], h).is_err());
    assert!(BCTypeParams::new(vec![re(0.1); 4], re(0.5), vec![], h).is_err());
}
