//! Bilateral basic hypergeometric series `_r psi_r` and the closed-form
//! products for `_1 psi_1` and the very-well-poised `_6 psi_6`.

use num_complex::Complex64;

use crate::error::{QError, Result};
use crate::qcore::{qpoch_inf, qpoch_inf_nonzero, QBase, SeriesValue, SumPolicy};
use crate::summation::{sum_lattice, RatioHints, Sides};

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Parameters of `_r psi_r [a_1..a_r ; b_1..b_r ; q, x]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PsiParams {
    pub a: Vec<Complex64>,
    pub b: Vec<Complex64>,
    pub x: Complex64,
    pub q: QBase,
}

/// Position of `|x|` inside the convergence annulus
/// `|b_1..b_r / a_1..a_r| < |x| < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceReport {
    pub converges: bool,
    /// `|x| - |prod b / prod a|`
    pub lower_margin: f64,
    /// `1 - |x|`
    pub upper_margin: f64,
}

impl PsiParams {
    pub fn new(a: Vec<Complex64>, b: Vec<Complex64>, x: Complex64, q: QBase) -> Result<Self> {
        if a.len() != b.len() || a.is_empty() {
            return Err(QError::Domain(format!(
                "need r >= 1 numerators and denominators, got {} and {}",
                a.len(),
                b.len()
            )));
        }
        Ok(PsiParams { a, b, x, q })
    }

    pub fn r(&self) -> usize {
        self.a.len()
    }

    fn lower_ratio(&self) -> f64 {
        let pa: Complex64 = self.a.iter().product();
        let pb: Complex64 = self.b.iter().product();
        pb.norm() / pa.norm()
    }
}

pub fn converges(params: &PsiParams) -> ConvergenceReport {
    let ax = params.x.norm();
    let lower = params.lower_ratio();
    let lower_margin = ax - lower;
    let upper_margin = 1.0 - ax;
    ConvergenceReport {
        converges: lower_margin > 0.0 && upper_margin > 0.0,
        lower_margin,
        upper_margin,
    }
}

/// `t(nu+1) / t(nu) = x prod(1 - a_i q^nu) / prod(1 - b_i q^nu)`.
fn up_ratio(p: &PsiParams, nu: i64, policy: &SumPolicy) -> Result<Complex64> {
    let qn = p.q.powi(nu);
    let mut num = p.x;
    let mut den = ONE;
    for (&a, &b) in p.a.iter().zip(&p.b) {
        num *= ONE - a * qn;
        let f = ONE - b * qn;
        if f.norm() < policy.pole_eps {
            return Err(QError::Pole(format!("denominator 1 - ({b}) q^{nu} vanishes")));
        }
        den *= f;
    }
    Ok(num / den)
}

/// `t(nu) / t(nu+1)` for `nu < 0`, written as
/// `prod (q^k - b_i) / (x prod (q^k - a_i))` with `k = -nu` so that no factor
/// grows like `q^-k`. `u = q^k` gives an exactly vanishing factor.
fn down_ratio(p: &PsiParams, nu: i64, policy: &SumPolicy) -> Result<Complex64> {
    let qk = p.q.powi(-nu);
    let mut num = ONE;
    let mut den = p.x;
    for (&a, &b) in p.a.iter().zip(&p.b) {
        num *= qk - b;
        let f = qk - a;
        if f.norm() < policy.pole_eps * qk {
            return Err(QError::Pole(format!(
                "numerator parameter ({a}) hits a pole at nu = {nu}"
            )));
        }
        den *= f;
    }
    Ok(num / den)
}

/// A single term `(a_1..a_r)_nu / (b_1..b_r)_nu x^nu`, computed from scratch.
pub fn rpsir_term(p: &PsiParams, nu: i64, policy: &SumPolicy) -> Result<Complex64> {
    let mut t = ONE;
    if nu >= 0 {
        for l in 0..nu {
            t *= up_ratio(p, l, policy)?;
        }
    } else {
        for l in (nu..0).rev() {
            t *= down_ratio(p, l, policy)?;
        }
    }
    Ok(t)
}

/// Multiplicative term generator with periodic from-scratch resynchronisation.
pub(crate) struct RpsirTerms<'a> {
    p: &'a PsiParams,
    policy: &'a SumPolicy,
    up: Complex64,
    down: Complex64,
}

pub(crate) const RESYNC_EVERY: i64 = 64;

impl<'a> RpsirTerms<'a> {
    pub(crate) fn new(p: &'a PsiParams, policy: &'a SumPolicy) -> Self {
        RpsirTerms {
            p,
            policy,
            up: ONE,
            down: ONE,
        }
    }

    /// Must be called with `nu = 0, 1, 2, ...` and `-1, -2, ...` in order.
    pub(crate) fn term(&mut self, nu: i64) -> Result<Complex64> {
        if nu == 0 {
            return Ok(ONE);
        }
        if nu % RESYNC_EVERY == 0 {
            let t = rpsir_term(self.p, nu, self.policy)?;
            if nu > 0 {
                self.up = t;
            } else {
                self.down = t;
            }
            return Ok(t);
        }
        if nu > 0 {
            self.up *= up_ratio(self.p, nu - 1, self.policy)?;
            Ok(self.up)
        } else {
            self.down *= down_ratio(self.p, nu, self.policy)?;
            Ok(self.down)
        }
    }
}

/// Every `nu > 0` term vanishes: some `a_i q^l = 1` exactly with `l >= 0`.
fn terminates_above(p: &PsiParams) -> bool {
    p.a.iter().any(|&a| {
        let l = (-a.norm().ln() / p.q.ln()).round();
        l >= 0.0 && ONE - a * p.q.powi(l as i64) == Complex64::default()
    })
}

/// Every `nu < 0` term vanishes: some `b_i = q^k` exactly with `k >= 1`.
fn terminates_below(p: &PsiParams) -> bool {
    p.b.iter().any(|&b| {
        let k = (b.norm().ln() / p.q.ln()).round();
        k >= 1.0 && p.q.powi(k as i64) - b == Complex64::default()
    })
}

/// Tail ratios for the summation engine, or an error outside the annulus.
/// A direction whose terms vanish identically needs no decay condition.
fn annulus_hints(p: &PsiParams) -> Result<RatioHints> {
    let report = converges(p);
    let up = report.upper_margin > 0.0 || terminates_above(p);
    let down = report.lower_margin > 0.0 || terminates_below(p);
    if !(up && down) {
        return Err(QError::convergence(format!(
            "|x| = {} outside the annulus (margins {}, {})",
            p.x.norm(),
            report.lower_margin,
            report.upper_margin
        )));
    }
    let x = p.x.norm();
    Ok(RatioHints {
        positive: (report.upper_margin > 0.0).then_some(x),
        negative: (report.lower_margin > 0.0).then(|| p.lower_ratio() / x),
    })
}

/// Sum `_r psi_r` over `nu in Z` with independent adaptive truncation in each
/// direction.
pub fn sum_rpsir(params: &PsiParams, policy: &SumPolicy) -> Result<SeriesValue> {
    let hints = annulus_hints(params)?;
    let mut gen = RpsirTerms::new(params, policy);
    sum_lattice(|nu| gen.term(nu), Sides::Both, hints, params.q, policy)
}

/// `sum |t(nu)|`, the scale against which cancellation in [`sum_rpsir`] is
/// measured; `sum |t| / |sum t|` bounds the loss of relative accuracy.
pub fn rpsir_abs_sum(params: &PsiParams, policy: &SumPolicy) -> Result<f64> {
    let hints = annulus_hints(params)?;
    let mut gen = RpsirTerms::new(params, policy);
    let s = sum_lattice(
        |nu| Ok(Complex64::new(gen.term(nu)?.norm(), 0.0)),
        Sides::Both,
        hints,
        params.q,
        policy,
    )?;
    Ok(s.value.re)
}

/// Closed form of `_1 psi_1 [a ; b ; q, x]`:
/// `(ax, q, b/a, q/(ax))_inf / (x, b, q/a, b/(ax))_inf`.
pub fn product_1psi1(a: Complex64, b: Complex64, x: Complex64, q: QBase, policy: &SumPolicy) -> Result<Complex64> {
    if a == Complex64::default() || x == Complex64::default() {
        return Err(QError::Domain("a and x must be nonzero".into()));
    }
    let qc = Complex64::new(q.get(), 0.0);
    let ax = a * x;
    let num = qpoch_inf(ax, q, policy)
        * qpoch_inf(qc, q, policy)
        * qpoch_inf(b / a, q, policy)
        * qpoch_inf(qc / ax, q, policy);
    let den = qpoch_inf_nonzero(x, q, policy)?
        * qpoch_inf_nonzero(b, q, policy)?
        * qpoch_inf_nonzero(qc / a, q, policy)?
        * qpoch_inf_nonzero(b / ax, q, policy)?;
    Ok(num / den)
}

/// Very-well-poised `_6 psi_6` with argument fixed to `a^2 q / (bcde)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VWP6Params {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
    pub e: Complex64,
    pub q: QBase,
}

impl VWP6Params {
    pub fn argument(&self) -> Complex64 {
        self.a * self.a * self.q.get() / (self.b * self.c * self.d * self.e)
    }

    /// The `r = 6` parameter list. `sqrt(a)` is the principal root; the pair
    /// `(sqrt a, -sqrt a)` enters symmetrically so the branch is immaterial.
    pub fn to_psi(&self) -> PsiParams {
        let s = self.a.sqrt();
        let q = self.q.get();
        let aq = self.a * q;
        PsiParams {
            a: vec![s * q, -s * q, self.b, self.c, self.d, self.e],
            b: vec![s, -s, aq / self.b, aq / self.c, aq / self.d, aq / self.e],
            x: self.argument(),
            q: self.q,
        }
    }
}

pub fn vwp6_lhs(params: &VWP6Params, policy: &SumPolicy) -> Result<SeriesValue> {
    if params.argument().norm() >= 1.0 {
        return Err(QError::convergence(format!(
            "|a^2 q/(bcde)| = {} >= 1",
            params.argument().norm()
        )));
    }
    sum_rpsir(&params.to_psi(), policy)
}

/// Nine-over-nine product side of the very-well-poised summation.
pub fn vwp6_rhs(params: &VWP6Params, policy: &SumPolicy) -> Result<Complex64> {
    let VWP6Params { a, b, c, d, e, q } = *params;
    let qc = Complex64::new(q.get(), 0.0);
    let aq = a * qc;
    let num = [
        aq,
        aq / (b * c),
        aq / (b * d),
        aq / (b * e),
        aq / (c * d),
        aq / (c * e),
        aq / (d * e),
        qc,
        qc / a,
    ];
    let den = [
        aq / b,
        aq / c,
        aq / d,
        aq / e,
        qc / b,
        qc / c,
        qc / d,
        qc / e,
        params.argument(),
    ];
    let mut v = ONE;
    for u in num {
        v *= qpoch_inf(u, q, policy);
    }
    for u in den {
        v /= qpoch_inf_nonzero(u, q, policy)?;
    }
    Ok(v)
}
