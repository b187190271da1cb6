//! Quadrature of the classical integrals for `n <= 2`.
//!
//! Every one-dimensional integral has the form
//! `int_a^b (z - a)^(ea - 1) (b - z)^(eb - 1) g(z) dz` with `g` bounded. The
//! range is split at its midpoint and each half substituted `|z - c| =
//! u^(1/e)`, which absorbs the endpoint power and leaves a smooth integrand
//! for the double-exponential rule. Two-dimensional integrals are iterated.
//! The error of an iterated integral is the outer rule's estimate plus the
//! integral of `|outer weight| * inner error`.

use quadrature::double_exponential::integrate;

use super::{DAParams, SelbergParams};
use crate::error::{QError, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum QuadKind {
    Selberg(SelbergParams),
    DixonAnderson(DAParams),
}

#[derive(Debug, Clone, Copy)]
struct Est {
    value: f64,
    err: f64,
}

/// `int_a^b (z - a)^(ea - 1) (b - z)^(eb - 1) g(z) dz`; `tol` is absolute.
fn singular<G: Fn(f64) -> f64>(g: G, a: f64, b: f64, ea: f64, eb: f64, tol: f64) -> Est {
    let w = b - a;
    let half = 0.5 * w;
    let left = integrate(
        |u: f64| {
            let d = u.powf(1.0 / ea);
            (w - d).powf(eb - 1.0) * g(a + d) / ea
        },
        0.0,
        half.powf(ea),
        0.5 * tol,
    );
    let right = integrate(
        |u: f64| {
            let d = u.powf(1.0 / eb);
            (w - d).powf(ea - 1.0) * g(b - d) / eb
        },
        0.0,
        half.powf(eb),
        0.5 * tol,
    );
    Est {
        value: left.integral + right.integral,
        err: left.error_estimate + right.error_estimate,
    }
}

/// As [`singular`] with `g = h * inner`, inner errors propagated.
#[allow(clippy::too_many_arguments)]
fn iterated<H, I>(h: H, inner: I, a: f64, b: f64, ea: f64, eb: f64, tol: f64) -> Est
where
    H: Fn(f64) -> f64,
    I: Fn(f64) -> Est,
{
    let v = singular(|z| h(z) * inner(z).value, a, b, ea, eb, tol);
    // the error integral only needs its order of magnitude
    let e = singular(|z| h(z).abs() * inner(z).err, a, b, ea, eb, tol * 1e3);
    Est {
        value: v.value,
        err: v.err + e.value.abs(),
    }
}

fn selberg(p: &SelbergParams, tol: f64) -> Result<Est> {
    let (a, b, t) = (p.alpha, p.beta, p.tau);
    match p.n {
        1 => Ok(singular(|_| 1.0, 0.0, 1.0, a, b, tol)),
        2 => {
            // symmetric in (z1, z2): twice the integral over z2 < z1
            let e = iterated(
                |_| 1.0,
                |z1| singular(|z2| (1.0 - z2).powf(b - 1.0), 0.0, z1, a, 2.0 * t + 1.0, tol),
                0.0,
                1.0,
                a,
                b,
                tol,
            );
            Ok(Est {
                value: 2.0 * e.value,
                err: 2.0 * e.err,
            })
        }
        n => Err(QError::Domain(format!("quadrature oracle supports n <= 2, got {n}"))),
    }
}

fn dixon_anderson(p: &DAParams, tol: f64) -> Result<Est> {
    let (x, s) = (&p.x, &p.s);
    match p.n() {
        1 => Ok(singular(|_| 1.0, x[0], x[1], s[0], s[1], tol)),
        2 => Ok(iterated(
            |z2| (z2 - x[0]).powf(s[0] - 1.0),
            |z2| {
                singular(
                    |z1| (x[2] - z1).powf(s[2] - 1.0) * (z2 - z1),
                    x[0],
                    x[1],
                    s[0],
                    s[1],
                    tol,
                )
            },
            x[1],
            x[2],
            s[1],
            s[2],
            tol,
        )),
        n => Err(QError::Domain(format!("quadrature oracle supports n <= 2, got {n}"))),
    }
}

/// The integral side of the Selberg or Dixon-Anderson formula for `n <= 2`.
///
/// Fails with [`QError::Quadrature`] if the propagated error estimate exceeds
/// `rel_tol` relative to the result.
pub fn quad_oracle(kind: &QuadKind, rel_tol: f64) -> Result<f64> {
    if !(rel_tol > 0.0) {
        return Err(QError::Domain("rel_tol must be positive".into()));
    }
    let tol = rel_tol * 1e-3;
    let est = match kind {
        QuadKind::Selberg(p) => {
            p.validate()?;
            selberg(p, tol)?
        }
        QuadKind::DixonAnderson(p) => {
            p.validate()?;
            dixon_anderson(p, tol)?
        }
    };
    let rel = est.err / est.value.abs();
    if !est.value.is_finite() || !(rel <= rel_tol) {
        return Err(QError::Quadrature(format!(
            "estimated relative error {rel:.3e} exceeds {rel_tol:.3e}"
        )));
    }
    Ok(est.value)
}
