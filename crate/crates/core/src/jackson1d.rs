//! One-dimensional Jackson integrals.
//!
//! * Askey's bilateral integral `I(xi)` of `z^alpha (qz)_inf / (q^beta z)_inf`,
//!   its theta-quotient evaluation, the q-beta integral at `xi = 1`, and the
//!   residuals of its q-difference equations.
//! * The BC1-type integral `J(xi)` of `Phi(z) Delta(z)` whose evaluation is
//!   equivalent to the very-well-poised `_6 psi_6` summation, with Jackson's
//!   `_6 phi_5` product at `xi = a_1` and the `a_i -> q a_i` shift equation.
//!
//! Lattice summands are evaluated from `(xi, nu)` rather than from the float
//! `z = xi q^nu`, so factors that vanish identically on the lattice (the
//! truncation at `xi = 1` or `xi = a_1`) come out as exact zeros.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::error::{QError, Result};
use crate::qcore::{
    qpoch_inf, qpoch_inf_nonzero, qpoch_ratio_shifted, theta, theta_nonzero, QBase, SeriesValue, SumPolicy,
};
use crate::series::VWP6Params;
use crate::summation::{sum_lattice, RatioHints, Sides};

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

#[inline]
fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `int_0^a f(z) d_q z = (1-q) sum_{nu >= 0} f(a q^nu) a q^nu`.
pub fn jackson_unilateral<F>(mut f: F, a: Complex64, q: QBase, policy: &SumPolicy) -> Result<SeriesValue>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    let w = 1.0 - q.get();
    sum_lattice(
        |nu| {
            let z = a * q.powi(nu);
            Ok(f(z)? * z * w)
        },
        Sides::NonNegative,
        RatioHints::default(),
        q,
        policy,
    )
}

/// `int_0^{xi infinity} f(z) d_q z / z = (1-q) sum_{nu in Z} f(xi q^nu)`.
pub fn jackson_bilateral<F>(mut f: F, xi: Complex64, q: QBase, policy: &SumPolicy) -> Result<SeriesValue>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    if xi == ZERO {
        return Err(QError::Domain("xi must be nonzero".into()));
    }
    let w = 1.0 - q.get();
    sum_lattice(
        |nu| Ok(f(xi * q.powi(nu))? * w),
        Sides::Both,
        RatioHints::default(),
        q,
        policy,
    )
}

// ---------------------------------------------------------------------------
// Askey's integral
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AskeyParams {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub xi: Complex64,
    pub q: QBase,
}

impl AskeyParams {
    pub fn with_alpha(self, alpha: Complex64) -> Self {
        AskeyParams { alpha, ..self }
    }

    pub fn with_xi(self, xi: Complex64) -> Self {
        AskeyParams { xi, ..self }
    }
}

/// `(1-q) Phi(xi q^nu)` with `Phi(z) = z^alpha (qz)_inf / (q^beta z)_inf`.
fn askey_weight(p: &AskeyParams, nu: i64, policy: &SumPolicy) -> Result<Complex64> {
    let qb = p.q.powc(p.beta);
    let ratio = qpoch_ratio_shifted((p.xi, nu + 1), (qb * p.xi, nu), p.q, policy)?;
    if ratio == ZERO {
        return Ok(ZERO);
    }
    let ln_z = p.xi.ln() + re(nu as f64 * p.q.ln());
    Ok((p.alpha * ln_z).exp() * ratio * (1.0 - p.q.get()))
}

fn check_xi(xi: Complex64) -> Result<()> {
    if xi == ZERO {
        Err(QError::Domain("xi must be nonzero".into()))
    } else {
        Ok(())
    }
}

/// `I(xi) = int_0^{xi infinity} z^alpha (qz)_inf/(q^beta z)_inf d_q z / z`.
pub fn askey_i_sum(p: &AskeyParams, policy: &SumPolicy) -> Result<SeriesValue> {
    check_xi(p.xi)?;
    sum_lattice(
        |nu| askey_weight(p, nu, policy),
        Sides::Both,
        RatioHints::default(),
        p.q,
        policy,
    )
}

/// `C = (1-q)(q)_inf (q^{1-beta})_inf / ((q^alpha)_inf (q^{1-alpha-beta})_inf)`.
pub fn askey_constant(alpha: Complex64, beta: Complex64, q: QBase, policy: &SumPolicy) -> Result<Complex64> {
    let num = qpoch_inf(re(q.get()), q, policy) * qpoch_inf(q.powc(ONE - beta), q, policy);
    let den = qpoch_inf_nonzero(q.powc(alpha), q, policy)? * qpoch_inf_nonzero(q.powc(ONE - alpha - beta), q, policy)?;
    Ok(num / den * (1.0 - q.get()))
}

/// `C xi^alpha theta(q^{alpha+beta} xi) / theta(q^beta xi)`.
pub fn askey_i_product(p: &AskeyParams, policy: &SumPolicy) -> Result<Complex64> {
    check_xi(p.xi)?;
    let c = askey_constant(p.alpha, p.beta, p.q, policy)?;
    let num = theta(p.q.powc(p.alpha + p.beta) * p.xi, p.q, policy)?;
    let den = theta_nonzero(p.q.powc(p.beta) * p.xi, p.q, policy)?;
    Ok(c * (p.alpha * p.xi.ln()).exp() * num / den)
}

/// `I(xi) / I(1) = xi^alpha theta(q^{a+b} xi) theta(q^b) / (theta(q^{a+b}) theta(q^b xi))`.
pub fn askey_connection_coefficient(p: &AskeyParams, policy: &SumPolicy) -> Result<Complex64> {
    check_xi(p.xi)?;
    let q = p.q;
    let qab = q.powc(p.alpha + p.beta);
    let qb = q.powc(p.beta);
    let num = theta(qab * p.xi, q, policy)? * theta(qb, q, policy)?;
    let den = theta_nonzero(qab, q, policy)? * theta_nonzero(qb * p.xi, q, policy)?;
    Ok((p.alpha * p.xi.ln()).exp() * num / den)
}

/// q-beta integral `(1-q)(q^{alpha+beta})_inf (q)_inf / ((q^alpha)_inf (q^beta)_inf)`.
///
/// Formed from two factor-by-factor ratios, which stay representable as
/// `q -> 1` where each infinite product underflows.
pub fn q_beta(alpha: Complex64, beta: Complex64, q: QBase, policy: &SumPolicy) -> Result<Complex64> {
    let r1 = qpoch_ratio_shifted((q.powc(alpha + beta), 0), (q.powc(alpha), 0), q, policy)?;
    let r2 = qpoch_ratio_shifted((re(q.get()), 0), (q.powc(beta), 0), q, policy)?;
    Ok(r1 * r2 * (1.0 - q.get()))
}

/// Large-`alpha` limit of `I(alpha; 1)`: its `nu = 0` term
/// `(1-q)(q)_inf / (q^beta)_inf`.
pub fn askey_leading_term(beta: Complex64, q: QBase, policy: &SumPolicy) -> Result<Complex64> {
    Ok(qpoch_ratio_shifted((re(q.get()), 0), (q.powc(beta), 0), q, policy)? * (1.0 - q.get()))
}

/// Relative residual of `I(alpha) = (1 - q^{alpha+beta})/(1 - q^alpha) I(alpha+1)`.
pub fn recurrence_residual_i(p: &AskeyParams, policy: &SumPolicy) -> Result<f64> {
    let (lhs, rhs) = recurrence_sides_i(p, policy)?;
    if lhs.norm() <= policy.abs_floor {
        return Err(QError::Division("I(alpha; xi) vanishes".into()));
    }
    Ok((lhs - rhs).norm() / lhs.norm())
}

/// Both sides of the alpha-recurrence, `(I(alpha), factor * I(alpha+1))`.
pub fn recurrence_sides_i(p: &AskeyParams, policy: &SumPolicy) -> Result<(Complex64, Complex64)> {
    let i0 = askey_i_sum(p, policy)?.value;
    let i1 = askey_i_sum(&p.with_alpha(p.alpha + ONE), policy)?.value;
    let den = ONE - p.q.powc(p.alpha);
    if den.norm() < policy.pole_eps {
        return Err(QError::Pole("1 - q^alpha vanishes".into()));
    }
    let factor = (ONE - p.q.powc(p.alpha + p.beta)) / den;
    Ok((i0, factor * i1))
}

/// The two brackets `<phi>` and `<b(z) phi(qz)>` whose difference is
/// `<nabla phi>`; both are `Phi`-weighted bilateral Jackson sums on the same
/// lattice, and the weights are computed once.
pub fn nabla_brackets<F>(p: &AskeyParams, phi: F, policy: &SumPolicy) -> Result<(SeriesValue, SeriesValue)>
where
    F: Fn(Complex64) -> Complex64,
{
    check_xi(p.xi)?;
    let q = p.q;
    let qa = q.powc(p.alpha);
    let qb = q.powc(p.beta);
    let qc = re(q.get());
    let mut cache: HashMap<i64, Complex64> = HashMap::new();
    let mut weight = |nu: i64| -> Result<Complex64> {
        if let Some(&w) = cache.get(&nu) {
            return Ok(w);
        }
        let w = askey_weight(p, nu, policy)?;
        cache.insert(nu, w);
        Ok(w)
    };

    let plain = sum_lattice(
        |nu| Ok(weight(nu)? * phi(p.xi * q.powi(nu))),
        Sides::Both,
        RatioHints::default(),
        q,
        policy,
    )?;
    let shifted = sum_lattice(
        |nu| {
            let w = weight(nu)?;
            if w == ZERO {
                return Ok(ZERO);
            }
            let z = p.xi * q.powi(nu);
            let den = ONE - qc * z;
            if den.norm() < policy.pole_eps {
                return Err(QError::Pole(format!("b(z) has a pole at nu = {nu}")));
            }
            let b = qa * (ONE - qb * z) / den;
            Ok(w * b * phi(qc * z))
        },
        Sides::Both,
        RatioHints::default(),
        q,
        policy,
    )?;
    Ok((plain, shifted))
}

/// `|<nabla phi>| / (|<phi>| + abs_floor)` with
/// `nabla phi(z) = phi(z) - b(z) phi(qz)` and `b(z) = q^alpha (1 - q^beta z)/(1 - qz)`.
pub fn nabla_residual<F>(p: &AskeyParams, phi: F, policy: &SumPolicy) -> Result<f64>
where
    F: Fn(Complex64) -> Complex64,
{
    let (plain, shifted) = nabla_brackets(p, phi, policy)?;
    Ok((plain.value - shifted.value).norm() / (plain.value.norm() + policy.abs_floor))
}

// ---------------------------------------------------------------------------
// BC1-type integral
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BC1Params {
    /// `a_i = q^{alpha_i}`
    pub a: [Complex64; 4],
    pub xi: Complex64,
    pub q: QBase,
}

impl BC1Params {
    /// `alpha_i = log_q a_i` on the principal branch.
    pub fn alphas(&self) -> [Complex64; 4] {
        self.a.map(|a| self.q.log_of(a))
    }

    pub fn alpha_sum(&self) -> Complex64 {
        self.alphas().iter().sum()
    }

    pub fn with_xi(self, xi: Complex64) -> Self {
        BC1Params { xi, ..self }
    }

    /// The same integral with `a_i -> q a_i` (`i` is 1-based).
    pub fn shifted(self, i: usize) -> Self {
        let mut a = self.a;
        a[i - 1] *= self.q.get();
        BC1Params { a, ..self }
    }

    /// Very-well-poised parameters `(xi^2, a_1 xi, .., a_4 xi)` that the
    /// integral reproduces after multiplication by [`bc1_vwp6_prefactor`].
    pub fn to_vwp6(&self) -> VWP6Params {
        let x = self.xi;
        VWP6Params {
            a: x * x,
            b: self.a[0] * x,
            c: self.a[1] * x,
            d: self.a[2] * x,
            e: self.a[3] * x,
            q: self.q,
        }
    }

    fn check(&self) -> Result<()> {
        if self.xi == ZERO || self.a.contains(&ZERO) {
            return Err(QError::Domain("xi and all a_i must be nonzero".into()));
        }
        Ok(())
    }
}

/// `(1-q) Phi(z) Delta(z)` at `z = xi q^nu`.
fn bc1_term(p: &BC1Params, nu: i64, policy: &SumPolicy) -> Result<Complex64> {
    let q = p.q;
    let mut ratio = ONE;
    for &a in &p.a {
        ratio *= qpoch_ratio_shifted((p.xi / a, nu + 1), (a * p.xi, nu), q, policy)?;
    }
    let one_minus_z2 = ONE - p.xi * p.xi * q.powi(2 * nu);
    if ratio == ZERO || one_minus_z2 == ZERO {
        return Ok(ZERO);
    }
    // z^{2 - sum alpha} * z^{-1}
    let exponent = re(1.0) - p.alpha_sum();
    let ln_z = p.xi.ln() + re(nu as f64 * q.ln());
    Ok((exponent * ln_z).exp() * one_minus_z2 * ratio * (1.0 - q.get()))
}

/// `Phi(z) Delta(z)` at an arbitrary point, with
/// `Phi(z) = prod_i z^{1/2 - alpha_i} (qz/a_i)_inf / (z a_i)_inf` and
/// `Delta(z) = 1/z - z`. The four powers are merged into one.
pub fn bc1_summand(p: &BC1Params, z: Complex64, policy: &SumPolicy) -> Result<Complex64> {
    p.check()?;
    if z == ZERO {
        return Err(QError::Domain("z must be nonzero".into()));
    }
    let q = p.q;
    let mut ratio = ONE;
    for &a in &p.a {
        ratio *= qpoch_ratio_shifted((z * q.get() / a, 0), (a * z, 0), q, policy)?;
    }
    let exponent = re(2.0) - p.alpha_sum();
    Ok((exponent * z.ln()).exp() * (ONE / z - z) * ratio)
}

/// `J(xi) = int_0^{xi infinity} Phi(z) Delta(z) d_q z / z`.
pub fn bc1_j_sum(p: &BC1Params, policy: &SumPolicy) -> Result<SeriesValue> {
    p.check()?;
    sum_lattice(
        |nu| bc1_term(p, nu, policy),
        Sides::Both,
        RatioHints::default(),
        p.q,
        policy,
    )
}

/// `(1-q) sum |Phi Delta|` over the lattice of `J(xi)`; its ratio to `|J|`
/// bounds the cancellation in [`bc1_j_sum`].
pub fn bc1_j_abs_sum(p: &BC1Params, policy: &SumPolicy) -> Result<f64> {
    p.check()?;
    let s = sum_lattice(
        |nu| Ok(re(bc1_term(p, nu, policy)?.norm())),
        Sides::Both,
        RatioHints::default(),
        p.q,
        policy,
    )?;
    Ok(s.value.re)
}

/// The `nu = 0` term `(1-q) Phi(xi) Delta(xi)` of `J(xi)`.
pub fn bc1_leading_term(p: &BC1Params, policy: &SumPolicy) -> Result<Complex64> {
    p.check()?;
    bc1_term(p, 0, policy)
}

/// `C~ = (1-q)(q)_inf prod_{i<j} (q/(a_i a_j))_inf / (q/(a_1 a_2 a_3 a_4))_inf`.
pub fn bc1_constant(a: &[Complex64; 4], q: QBase, policy: &SumPolicy) -> Result<Complex64> {
    let qc = re(q.get());
    let mut num = qpoch_inf(qc, q, policy);
    for i in 0..4 {
        for j in i + 1..4 {
            num *= qpoch_inf(qc / (a[i] * a[j]), q, policy);
        }
    }
    let prod: Complex64 = a.iter().product();
    Ok(num / qpoch_inf_nonzero(qc / prod, q, policy)? * (1.0 - q.get()))
}

/// `C~ xi theta(xi^2) / prod_m xi^{alpha_m} theta(a_m xi)`, with the two-factor
/// theta `(z)_inf (q/z)_inf` in the quotient. In terms of the three-factor
/// `theta` this carries an extra `(q)_inf^3`.
pub fn bc1_j_product(p: &BC1Params, policy: &SumPolicy) -> Result<Complex64> {
    p.check()?;
    let q = p.q;
    let c = bc1_constant(&p.a, q, policy)? * qpoch_inf(re(q.get()), q, policy).powi(3);
    let mut den = (p.alpha_sum() * p.xi.ln()).exp();
    for &a in &p.a {
        den *= theta_nonzero(a * p.xi, q, policy)?;
    }
    Ok(c * p.xi * theta(p.xi * p.xi, q, policy)? / den)
}

/// The coefficient `K_i` in `T_{a_i} J = -K_i J`:
/// `prod_k (1 - a_i a_k) / (a_i (1 - a_i^2)(1 - a_1 a_2 a_3 a_4))`.
pub fn bc1_shift_factor(a: &[Complex64; 4], i: usize, policy: &SumPolicy) -> Result<Complex64> {
    if !(1..=4).contains(&i) {
        return Err(QError::Domain(format!("shift index must be in 1..=4, got {i}")));
    }
    let ai = a[i - 1];
    let num: Complex64 = a.iter().map(|&ak| ONE - ai * ak).product();
    let prod: Complex64 = a.iter().product();
    let den = ai * (ONE - ai * ai) * (ONE - prod);
    if den.norm() < policy.pole_eps {
        return Err(QError::Pole("shift-equation denominator vanishes".into()));
    }
    Ok(num / den)
}

/// Both sides `(T_{a_i} J, -K_i J)` of the shift equation, with both
/// integrals evaluated as lattice sums.
pub fn bc1_shift_sides(p: &BC1Params, i: usize, policy: &SumPolicy) -> Result<(Complex64, Complex64)> {
    let k = bc1_shift_factor(&p.a, i, policy)?;
    let j = bc1_j_sum(p, policy)?.value;
    let shifted = bc1_j_sum(&p.shifted(i), policy)?.value;
    Ok((shifted, -k * j))
}

/// Relative residual of `T_{a_i} J(xi) + K_i J(xi) = 0`.
pub fn bc1_shift_residual(p: &BC1Params, i: usize, policy: &SumPolicy) -> Result<f64> {
    let (lhs, rhs) = bc1_shift_sides(p, i, policy)?;
    let scale = lhs.norm().max(rhs.norm());
    if scale <= policy.abs_floor {
        return Err(QError::Division("J vanishes".into()));
    }
    Ok((lhs - rhs).norm() / scale)
}

/// Jackson's `_6 phi_5` product, the value of `J(a_1)`:
/// `(1-q) a_1^{1 - sum alpha} (q)_inf prod_{2<=i<j<=4} (q/(a_i a_j))_inf
///  / ((q/(a_1 a_2 a_3 a_4))_inf prod_{k=2}^4 (a_1 a_k)_inf)`.
pub fn j6phi5_product(a: &[Complex64; 4], q: QBase, policy: &SumPolicy) -> Result<Complex64> {
    if a.contains(&ZERO) {
        return Err(QError::Domain("all a_i must be nonzero".into()));
    }
    let qc = re(q.get());
    let alpha_sum: Complex64 = a.iter().map(|&x| q.log_of(x)).sum();
    let mut num = (((ONE - alpha_sum) * a[0].ln()).exp()) * qpoch_inf(qc, q, policy);
    for i in 1..4 {
        for j in i + 1..4 {
            num *= qpoch_inf(qc / (a[i] * a[j]), q, policy);
        }
    }
    let prod: Complex64 = a.iter().product();
    let mut den = qpoch_inf_nonzero(qc / prod, q, policy)?;
    for k in 1..4 {
        den *= qpoch_inf_nonzero(a[0] * a[k], q, policy)?;
    }
    Ok(num / den * (1.0 - q.get()))
}

/// `xi^{sum alpha - 1} / ((1-q)(1-xi^2)) prod_i (a_i xi)_inf / (q xi / a_i)_inf`,
/// the factor turning `J(xi)` into the very-well-poised bilateral sum.
pub fn bc1_vwp6_prefactor(p: &BC1Params, policy: &SumPolicy) -> Result<Complex64> {
    p.check()?;
    let q = p.q;
    let x = p.xi;
    let one_minus = ONE - x * x;
    if one_minus.norm() < policy.pole_eps {
        return Err(QError::Pole("1 - xi^2 vanishes".into()));
    }
    let mut v = ((p.alpha_sum() - ONE) * x.ln()).exp() / (one_minus * (1.0 - q.get()));
    for &a in &p.a {
        v *= qpoch_inf(a * x, q, policy) / qpoch_inf_nonzero(x * q.get() / a, q, policy)?;
    }
    Ok(v)
}

/// The very-well-poised sum assembled from the Jackson integral.
pub fn vwp6_via_jackson(p: &BC1Params, policy: &SumPolicy) -> Result<Complex64> {
    Ok(bc1_vwp6_prefactor(p, policy)? * bc1_j_sum(p, policy)?.value)
}

/// `a_1 -> a_1 q^{2N}`, `a_{2,3,4} -> a_{2,3,4} q^{-N}`, so that
/// `sum alpha` drops by `N` and `J(a_1)` approaches its `nu = 0` term.
pub fn bc1_limit_parameters(a: &[Complex64; 4], steps: i64, q: QBase) -> [Complex64; 4] {
    [
        a[0] * q.powi(2 * steps),
        a[1] * q.powi(-steps),
        a[2] * q.powi(-steps),
        a[3] * q.powi(-steps),
    ]
}
