//! The BC-type family `J~(xi)` over `Z^n`.

use num_complex::Complex64;

use super::shells::{shell_sum, DenseCache, LatticeSum};
use crate::error::{QError, Result};
use crate::qcore::{qpoch_ratio_shifted, QBase, SeriesValue, SumPolicy};

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Parameters of `J~(xi) = int Phi~(z) Delta~(z)` with `a_m = q^{alpha_m}`,
/// `m = 1..2s+2`, and `t = q^tau`.
#[derive(Debug, Clone, PartialEq)]
pub struct BCTypeParams {
    pub n: usize,
    pub s: usize,
    pub alpha: Vec<Complex64>,
    pub tau: Complex64,
    pub xi: Vec<Complex64>,
    pub q: QBase,
}

impl BCTypeParams {
    /// `s` is read off `alpha.len() = 2s + 2` and `n` off `xi`.
    pub fn new(alpha: Vec<Complex64>, tau: Complex64, xi: Vec<Complex64>, q: QBase) -> Result<Self> {
        if alpha.len() < 4 || !alpha.len().is_multiple_of(2) {
            return Err(QError::Domain(format!(
                "need 2s + 2 exponents with s >= 1, got {}",
                alpha.len()
            )));
        }
        let p = BCTypeParams {
            n: xi.len(),
            s: alpha.len() / 2 - 1,
            alpha,
            tau,
            xi,
            q,
        };
        p.validate()?;
        Ok(p)
    }

    /// Same as [`BCTypeParams::new`] with `alpha_m = log_q a_m`.
    pub fn from_a(a: &[Complex64], tau: Complex64, xi: Vec<Complex64>, q: QBase) -> Result<Self> {
        if a.contains(&ZERO) {
            return Err(QError::Domain("a entries must be nonzero".into()));
        }
        Self::new(a.iter().map(|&v| q.log_of(v)).collect(), tau, xi, q)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.s == 0 {
            return Err(QError::Domain("n and s must be at least 1".into()));
        }
        if self.alpha.len() != 2 * self.s + 2 || self.xi.len() != self.n {
            return Err(QError::Domain(format!(
                "expected {} exponents and {} xi values, got {} and {}",
                2 * self.s + 2,
                self.n,
                self.alpha.len(),
                self.xi.len()
            )));
        }
        if self.xi.contains(&ZERO) {
            return Err(QError::Domain("xi entries must be nonzero".into()));
        }
        Ok(())
    }

    pub fn a(&self) -> Vec<Complex64> {
        self.alpha.iter().map(|&al| self.q.powc(al)).collect()
    }

    pub fn with_xi(&self, xi: Vec<Complex64>) -> Self {
        BCTypeParams {
            n: xi.len(),
            xi,
            ..self.clone()
        }
    }

    /// Merged power of `z_i` (1-based `i`) in `Phi~ Delta~`:
    /// `s - sum alpha - 2 tau (n - i)`.
    fn axis_exponent(&self, i: usize) -> Complex64 {
        let sum: Complex64 = self.alpha.iter().sum();
        Complex64::new(self.s as f64, 0.0) - sum - self.tau * (2.0 * (self.n - i) as f64)
    }
}

/// `Phi~(z) Delta~(z)` at an arbitrary point.
pub fn bctype_summand(p: &BCTypeParams, z: &[Complex64], policy: &SumPolicy) -> Result<Complex64> {
    p.validate()?;
    if z.len() != p.n {
        return Err(QError::Domain(format!("expected {} coordinates, got {}", p.n, z.len())));
    }
    if z.contains(&ZERO) {
        return Err(QError::Domain("z entries must be nonzero".into()));
    }
    let q = p.q;
    let t = q.powc(p.tau);
    let a = p.a();
    let mut v = ONE;
    for (i, &zi) in z.iter().enumerate() {
        v *= (p.axis_exponent(i + 1) * zi.ln()).exp() * (ONE - zi * zi);
        for &am in &a {
            v *= qpoch_ratio_shifted((zi * q.get() / am, 0), (am * zi, 0), q, policy)?;
        }
    }
    for j in 0..p.n {
        for k in j + 1..p.n {
            for w in [z[j] / z[k], z[j] * z[k]] {
                v *= qpoch_ratio_shifted((w * q.get() / t, 0), (t * w, 0), q, policy)? * (ONE - w);
            }
        }
    }
    Ok(v)
}

/// `(q w/t)_inf / (t w)_inf (1 - w)` with `w = c q^k`.
fn pair_factor(c: Complex64, k: i64, t: Complex64, q: QBase, policy: &SumPolicy) -> Result<Complex64> {
    let lin = ONE - c * q.powi(k);
    if lin == ZERO {
        return Ok(ZERO);
    }
    Ok(qpoch_ratio_shifted((c / t, k + 1), (t * c, k), q, policy)? * lin)
}

struct BCTypeLattice<'a> {
    p: &'a BCTypeParams,
    policy: &'a SumPolicy,
    a: Vec<Complex64>,
    exponents: Vec<Complex64>,
    t: Complex64,
    axes: Vec<DenseCache>,
    diffs: Vec<DenseCache>,
    sums: Vec<DenseCache>,
}

impl<'a> BCTypeLattice<'a> {
    fn new(p: &'a BCTypeParams, policy: &'a SumPolicy) -> Self {
        let n = p.n;
        let half = policy.max_shells;
        let pairs = n * (n - 1) / 2;
        BCTypeLattice {
            p,
            policy,
            a: p.a(),
            exponents: (1..=n).map(|i| p.axis_exponent(i)).collect(),
            t: p.q.powc(p.tau),
            axes: vec![DenseCache::new(half); n],
            diffs: vec![DenseCache::new(2 * half); pairs],
            sums: vec![DenseCache::new(2 * half); pairs],
        }
    }

    fn axis(&mut self, i: usize, nu: i64) -> Result<Complex64> {
        let (p, policy) = (self.p, self.policy);
        let e = self.exponents[i];
        let a = &self.a;
        self.axes[i].get_or_try(nu, |nu| {
            let xi = p.xi[i];
            let lin = ONE - xi * xi * p.q.powi(2 * nu);
            if lin == ZERO {
                return Ok(ZERO);
            }
            let mut v = lin;
            for &am in a {
                v *= qpoch_ratio_shifted((xi / am, nu + 1), (am * xi, nu), p.q, policy)?;
                if v == ZERO {
                    return Ok(ZERO);
                }
            }
            let ln_z = xi.ln() + Complex64::new(nu as f64 * p.q.ln(), 0.0);
            Ok(v * (e * ln_z).exp())
        })
    }

    fn site(&mut self, nu: &[i64]) -> Result<Complex64> {
        let n = self.p.n;
        let mut v = ONE;
        for (i, &k) in nu.iter().enumerate() {
            v *= self.axis(i, k)?;
            if v == ZERO {
                return Ok(ZERO);
            }
        }
        let mut slot = 0;
        for j in 0..n {
            for k in j + 1..n {
                let (xj, xk) = (self.p.xi[j], self.p.xi[k]);
                let (t, q, policy) = (self.t, self.p.q, self.policy);
                let fd = self.diffs[slot].get_or_try(nu[j] - nu[k], |d| pair_factor(xj / xk, d, t, q, policy));
                let fs = self.sums[slot].get_or_try(nu[j] + nu[k], |s| pair_factor(xj * xk, s, t, q, policy));
                v *= fd? * fs?;
                slot += 1;
            }
        }
        Ok(v)
    }
}

/// `(1-q)^n sum_{nu in Z^n} Phi~ Delta~ (xi q^nu)` with the window.
pub fn bctype_lattice(p: &BCTypeParams, policy: &SumPolicy) -> Result<LatticeSum> {
    p.validate()?;
    let mut lattice = BCTypeLattice::new(p, policy);
    let scale = (1.0 - p.q.get()).powi(p.n as i32);
    shell_sum(p.n, scale, |nu| lattice.site(nu), policy)
}

/// `J~(xi)` as a shell-summed lattice sum.
pub fn bctype_sum(p: &BCTypeParams, policy: &SumPolicy) -> Result<SeriesValue> {
    Ok(bctype_lattice(p, policy)?.value)
}
