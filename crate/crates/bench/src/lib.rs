//! Fixed parameter sets shared by the benchmarks, all inside the
//! convergence regions of their series.

use qpsi_core::jackson1d::{AskeyParams, BC1Params};
use qpsi_core::multidim::ATypeParams;
use qpsi_core::series::PsiParams;
use qpsi_core::{Complex64, QBase};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn q(v: f64) -> QBase {
    QBase::new(v).expect("valid base")
}

/// `_1 psi_1` with `|b/a| = 0.35 < |x| = 0.8`.
pub fn psi11(qv: f64) -> PsiParams {
    PsiParams::new(vec![c(2.0, 0.2)], vec![c(0.7, 0.0)], c(0.8, 0.0), q(qv)).expect("valid params")
}

pub fn askey(qv: f64) -> AskeyParams {
    AskeyParams {
        alpha: c(0.4, 0.0),
        beta: c(-0.9, 0.0),
        xi: c(0.7, 0.3),
        q: q(qv),
    }
}

pub fn bc1(qv: f64) -> BC1Params {
    BC1Params {
        a: [c(0.9, 0.0), c(0.8, 0.1), c(1.2, 0.0), c(2.0, 0.0)],
        xi: c(0.7, 0.0),
        q: q(qv),
    }
}

/// `m = 1`, `tau = 0.37`, `xi = (0.7, 0.4)` extended to `n` coordinates.
pub fn atype(n: usize, qv: f64) -> ATypeParams {
    let xi = (0..n).map(|k| c(0.7 * 0.55f64.powi(k as i32), 0.0)).collect();
    ATypeParams::new(
        c(0.4, 0.0),
        c(0.37, 0.0),
        vec![c(3.0, 0.0)],
        vec![c(0.5, 0.0)],
        xi,
        q(qv),
    )
    .expect("valid params")
}
