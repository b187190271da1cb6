//! q-shifted factorials.
//!
//! Every infinite product is evaluated factor by factor in ascending order
//! `l = 0, 1, 2, ...` and stops once the perturbation `|u q^l|` has stayed
//! below the cutoff for `consecutive_small` factors. The cutoff is
//! `min(rel_tol * (1 - q), EPSILON)`, so the neglected tail is below both the
//! policy tolerance and working precision.
//!
//! Arguments living on a geometric lattice are passed as a coefficient and an
//! integer shift, `c * q^k`. The power `q^j` is reset to exactly `1.0` when
//! `j` reaches zero, so a factor `1 - c q^j` with `c == 1.0` at `j == 0`
//! vanishes exactly rather than up to rounding.

use num_complex::Complex64;

use super::base::{QBase, SumPolicy};
use crate::error::{QError, Result};

#[inline]
fn cutoff(q: QBase, policy: &SumPolicy) -> f64 {
    (policy.rel_tol * (1.0 - q.get())).min(f64::EPSILON)
}

/// Walks `q^j` for `j = start, start + 1, ...`, storing `q^|j|` so that
/// negative powers never overflow.
#[derive(Debug, Clone, Copy)]
struct Powers {
    q: f64,
    j: i64,
    abs_pow: f64,
}

impl Powers {
    #[inline]
    fn new(q: QBase, start: i64) -> Self {
        Powers {
            q: q.get(),
            j: start,
            abs_pow: q.powi(start.abs()),
        }
    }

    #[inline]
    fn advance(&mut self) {
        self.j += 1;
        if self.j == 0 {
            self.abs_pow = 1.0;
        } else if self.j > 0 {
            self.abs_pow *= self.q;
        } else {
            self.abs_pow /= self.q;
        }
    }

    /// `c q^j`
    #[inline]
    fn scale(&self, c: Complex64) -> Complex64 {
        if self.j >= 0 {
            c * self.abs_pow
        } else {
            c / self.abs_pow
        }
    }
}

/// `1/z` without forming `|z|^2`, which overflows once `|z|` passes `1e154`.
pub(crate) fn recip(z: Complex64) -> Complex64 {
    let s = z.re.abs().max(z.im.abs());
    let w = z / s;
    w.conj() / (w.norm_sqr() * s)
}

fn pole(u: Complex64, j: i64) -> QError {
    QError::Pole(format!("factor 1 - ({u}) q^{j} vanishes"))
}

/// `(c q^shift; q)_inf`, optionally rejecting near-zero factors.
fn shifted_product(c: Complex64, shift: i64, q: QBase, policy: &SumPolicy, guard: bool) -> Result<Complex64> {
    let cut = cutoff(q, policy);
    let mut pw = Powers::new(q, shift);
    let mut prod = Complex64::new(1.0, 0.0);
    let mut small = 0;
    for _ in 0..policy.max_terms {
        let u = pw.scale(c);
        let factor = Complex64::new(1.0, 0.0) - u;
        if guard && factor.norm() < policy.pole_eps {
            return Err(pole(c, pw.j));
        }
        prod *= factor;
        if u.norm() < cut {
            small += 1;
            if small >= policy.consecutive_small {
                break;
            }
        } else {
            small = 0;
        }
        pw.advance();
    }
    Ok(prod)
}

/// `(u; q)_inf = prod_{l >= 0} (1 - u q^l)`.
pub fn qpoch_inf(u: Complex64, q: QBase, policy: &SumPolicy) -> Complex64 {
    // unguarded products never fail
    shifted_product(u, 0, q, policy, false).unwrap_or_default()
}

/// `(u; q)_inf` for use in a denominator: fails with [`QError::Pole`] if any
/// factor is within `pole_eps` of zero.
pub fn qpoch_inf_nonzero(u: Complex64, q: QBase, policy: &SumPolicy) -> Result<Complex64> {
    shifted_product(u, 0, q, policy, true)
}

/// `(c q^shift; q)_inf` with exact handling of the `q^0` factor.
pub fn qpoch_inf_shifted(c: Complex64, shift: i64, q: QBase, policy: &SumPolicy) -> Complex64 {
    shifted_product(c, shift, q, policy, false).unwrap_or_default()
}

/// `(c_num q^k_num)_inf / (c_den q^k_den)_inf`, evaluated as one product of
/// factor ratios so that neither Pochhammer symbol has to be representable on
/// its own. Denominator factors are pole-guarded.
pub fn qpoch_ratio_shifted(
    num: (Complex64, i64),
    den: (Complex64, i64),
    q: QBase,
    policy: &SumPolicy,
) -> Result<Complex64> {
    let cut = cutoff(q, policy);
    let one = Complex64::new(1.0, 0.0);
    let mut pn = Powers::new(q, num.1);
    let mut pd = Powers::new(q, den.1);
    // q^{k_num - k_den}, used while both walkers are at negative powers
    let offset = q.powi(num.1 - den.1);
    let mut prod = one;
    let mut small = 0;
    for _ in 0..policy.max_terms {
        let un = pn.scale(num.0);
        let ud = pd.scale(den.0);
        if pn.j < 0 && pd.j < 0 {
            // (1 - c_n/s_n)/(1 - c_d/s_d) = (s_n - c_n)/(s_d - c_d) * s_d/s_n
            let d = pd.abs_pow - den.0;
            if d.norm() < policy.pole_eps * pd.abs_pow {
                return Err(pole(den.0, pd.j));
            }
            prod *= (pn.abs_pow - num.0) / d * offset;
        } else {
            let d = one - ud;
            if d.norm() < policy.pole_eps {
                return Err(pole(den.0, pd.j));
            }
            prod *= (one - un) / d;
        }
        if un.norm() < cut && ud.norm() < cut {
            small += 1;
            if small >= policy.consecutive_small {
                break;
            }
        } else {
            small = 0;
        }
        pn.advance();
        pd.advance();
    }
    Ok(prod)
}

/// `(u; q)_nu` for any integer `nu`, in the direct finite-product forms
/// `prod_{l=0}^{nu-1} (1 - u q^l)` and `1 / prod_{l=nu}^{-1} (1 - u q^l)`.
pub fn qpoch_fin(u: Complex64, q: QBase, nu: i64, policy: &SumPolicy) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    if nu >= 0 {
        let mut prod = one;
        let mut p = 1.0;
        for _ in 0..nu {
            prod *= one - u * p;
            p *= q.get();
        }
        Ok(prod)
    } else {
        let mut den = one;
        for l in nu..0 {
            let f = one - u * q.powi(l);
            if f.norm() < policy.pole_eps {
                return Err(pole(u, l));
            }
            den *= f;
        }
        Ok(recip(den))
    }
}

/// `(u_1, ..., u_r; q)_nu`, the product of [`qpoch_fin`] over `us` in order.
pub fn qpoch_multi(us: &[Complex64], q: QBase, nu: i64, policy: &SumPolicy) -> Result<Complex64> {
    us.iter().try_fold(Complex64::new(1.0, 0.0), |acc, &u| {
        Ok(acc * qpoch_fin(u, q, nu, policy)?)
    })
}

/// Which integer powers of `q` a clearance check ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftRange {
    All,
    NonNegative,
    Negative,
}

impl ShiftRange {
    fn contains(self, k: i64) -> bool {
        match self {
            ShiftRange::All => true,
            ShiftRange::NonNegative => k >= 0,
            ShiftRange::Negative => k < 0,
        }
    }
}

/// `min |1 - c q^k|` over the integers `k` in `range`.
///
/// Used to keep sampled parameters away from lattice poles.
pub fn lattice_clearance(c: Complex64, q: QBase, range: ShiftRange) -> f64 {
    let r = c.norm();
    if r == 0.0 {
        return 1.0;
    }
    // |c q^k| = 1 at k = -ln|c| / ln q
    let k_star = (-(r.ln()) / q.ln()).round() as i64;
    let mut candidates: Vec<i64> = (k_star - 2..=k_star + 2).collect();
    match range {
        ShiftRange::All => {}
        ShiftRange::NonNegative => candidates.push(0),
        ShiftRange::Negative => candidates.push(-1),
    }
    candidates
        .into_iter()
        .filter(|&k| range.contains(k))
        .map(|k| (Complex64::new(1.0, 0.0) - c * q.powi(k)).norm())
        .fold(f64::INFINITY, f64::min)
}
