//! The A-type family `I~(xi)` over `Z^n`.

use num_complex::Complex64;

use super::shells::{shell_sum, DenseCache, LatticeSum};
use crate::error::{QError, Result};
use crate::qcore::{
    qpoch_inf, qpoch_inf_nonzero, qpoch_ratio_shifted, theta, theta_nonzero, QBase, SeriesValue, SumPolicy,
};

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Parameters of
/// `I~(xi) = int (z_1..z_n)^alpha prod_{i,j} (q z_i/a_j)_inf/(b_j z_i)_inf
///   prod_{k<l} z_k^{2tau-1} (q^{1-tau} z_l/z_k)_inf/(q^tau z_l/z_k)_inf (z_k - z_l)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ATypeParams {
    pub n: usize,
    pub m: usize,
    pub alpha: Complex64,
    pub tau: Complex64,
    pub a: Vec<Complex64>,
    pub b: Vec<Complex64>,
    pub xi: Vec<Complex64>,
    pub q: QBase,
}

impl ATypeParams {
    /// Builds the parameter set; `n` and `m` are read off `xi` and `a`.
    pub fn new(
        alpha: Complex64,
        tau: Complex64,
        a: Vec<Complex64>,
        b: Vec<Complex64>,
        xi: Vec<Complex64>,
        q: QBase,
    ) -> Result<Self> {
        let p = ATypeParams {
            n: xi.len(),
            m: a.len(),
            alpha,
            tau,
            a,
            b,
            xi,
            q,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.m == 0 {
            return Err(QError::Domain("n and m must be at least 1".into()));
        }
        if self.xi.len() != self.n || self.a.len() != self.m || self.b.len() != self.m {
            return Err(QError::Domain(format!(
                "expected {} xi and {} a, b values, got {}, {}, {}",
                self.n,
                self.m,
                self.xi.len(),
                self.a.len(),
                self.b.len()
            )));
        }
        let all = self.a.iter().chain(&self.b).chain(&self.xi);
        if all.into_iter().any(|&v| v == ZERO) {
            return Err(QError::Domain("a, b and xi entries must be nonzero".into()));
        }
        Ok(())
    }

    pub fn with_xi(&self, xi: Vec<Complex64>) -> Self {
        ATypeParams {
            n: xi.len(),
            xi,
            ..self.clone()
        }
    }

    /// Merged power of `z_i` (1-based `i`): `alpha + 2 tau (n - i)`.
    fn axis_exponent(&self, i: usize) -> Complex64 {
        self.alpha + self.tau * (2.0 * (self.n - i) as f64)
    }
}

/// The integrand at an arbitrary point `z`.
pub fn atype_summand(p: &ATypeParams, z: &[Complex64], policy: &SumPolicy) -> Result<Complex64> {
    p.validate()?;
    if z.len() != p.n {
        return Err(QError::Domain(format!("expected {} coordinates, got {}", p.n, z.len())));
    }
    if z.contains(&ZERO) {
        return Err(QError::Domain("z entries must be nonzero".into()));
    }
    let q = p.q;
    let qt = q.powc(p.tau);
    let mut v = ONE;
    for (i, &zi) in z.iter().enumerate() {
        v *= (p.axis_exponent(i + 1) * zi.ln()).exp();
        for (&aj, &bj) in p.a.iter().zip(&p.b) {
            v *= qpoch_ratio_shifted((zi * q.get() / aj, 0), (bj * zi, 0), q, policy)?;
        }
    }
    for k in 0..p.n {
        for l in k + 1..p.n {
            let w = z[l] / z[k];
            v *= qpoch_ratio_shifted((w * q.get() / qt, 0), (qt * w, 0), q, policy)?;
            v *= ONE - w;
        }
    }
    Ok(v)
}

/// Per-site factors of the lattice sum, cached per axis and per pair.
struct ATypeLattice<'a> {
    p: &'a ATypeParams,
    policy: &'a SumPolicy,
    exponents: Vec<Complex64>,
    ln_xi: Vec<Complex64>,
    axes: Vec<DenseCache>,
    pairs: Vec<DenseCache>,
    qt: Complex64,
}

impl<'a> ATypeLattice<'a> {
    fn new(p: &'a ATypeParams, policy: &'a SumPolicy) -> Self {
        let n = p.n;
        let half = policy.max_shells;
        ATypeLattice {
            p,
            policy,
            exponents: (1..=n).map(|i| p.axis_exponent(i)).collect(),
            ln_xi: p.xi.iter().map(|x| x.ln()).collect(),
            axes: vec![DenseCache::new(half); n],
            pairs: vec![DenseCache::new(2 * half); n * (n - 1) / 2],
            qt: p.q.powc(p.tau),
        }
    }

    fn axis(&mut self, i: usize, nu: i64) -> Result<Complex64> {
        let (p, policy) = (self.p, self.policy);
        let e = self.exponents[i];
        let ln_xi = self.ln_xi[i];
        self.axes[i].get_or_try(nu, |nu| {
            let xi = p.xi[i];
            let mut v = ONE;
            for (&aj, &bj) in p.a.iter().zip(&p.b) {
                v *= qpoch_ratio_shifted((xi / aj, nu + 1), (bj * xi, nu), p.q, policy)?;
                if v == ZERO {
                    return Ok(ZERO);
                }
            }
            let ln_z = ln_xi + Complex64::new(nu as f64 * p.q.ln(), 0.0);
            Ok(v * (e * ln_z).exp())
        })
    }

    /// `(q^{1-tau} w)_inf / (q^tau w)_inf (1 - w)` with `w = (xi_l/xi_k) q^d`.
    fn pair(&mut self, slot: usize, k: usize, l: usize, d: i64) -> Result<Complex64> {
        let (p, policy, qt) = (self.p, self.policy, self.qt);
        self.pairs[slot].get_or_try(d, |d| {
            let c = p.xi[l] / p.xi[k];
            let lin = ONE - c * p.q.powi(d);
            if lin == ZERO {
                return Ok(ZERO);
            }
            Ok(qpoch_ratio_shifted((c / qt, d + 1), (qt * c, d), p.q, policy)? * lin)
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
        for k in 0..n {
            for l in k + 1..n {
                v *= self.pair(slot, k, l, nu[l] - nu[k])?;
                slot += 1;
            }
        }
        Ok(v)
    }
}

/// `(1-q)^n sum_{nu in Z^n} f(xi_1 q^nu_1, ..., xi_n q^nu_n)` with the window.
pub fn atype_lattice(p: &ATypeParams, policy: &SumPolicy) -> Result<LatticeSum> {
    p.validate()?;
    let mut lattice = ATypeLattice::new(p, policy);
    let scale = (1.0 - p.q.get()).powi(p.n as i32);
    shell_sum(p.n, scale, |nu| lattice.site(nu), policy)
}

/// `I~(xi)` as a shell-summed lattice sum.
pub fn atype_sum(p: &ATypeParams, policy: &SumPolicy) -> Result<SeriesValue> {
    Ok(atype_lattice(p, policy)?.value)
}

fn is_positive_integer(t: Complex64) -> bool {
    t.im == 0.0 && t.re >= 1.0 && t.re.fract() == 0.0
}

/// Aomoto's constant `c_0` for `m = 1`.
pub fn aomoto_constant(p: &ATypeParams, policy: &SumPolicy) -> Result<Complex64> {
    p.validate()?;
    if p.m != 1 {
        return Err(QError::Domain(format!(
            "the Aomoto product needs m = 1, got m = {}",
            p.m
        )));
    }
    if is_positive_integer(p.tau) {
        return Err(QError::Domain(
            "positive integer tau makes the constant an unregularized 0/0".into(),
        ));
    }
    let q = p.q;
    let qc = Complex64::new(q.get(), 0.0);
    let ab = p.a[0] * p.b[0];
    let mut c0 = ONE;
    for j in 1..=p.n {
        let jf = j as f64;
        let num = qpoch_inf(qc, q, policy)
            * qpoch_inf(q.powc(ONE - p.tau * jf), q, policy)
            * qpoch_inf(q.powc(ONE - p.tau * (jf - 1.0)) / ab, q, policy);
        let den = qpoch_inf_nonzero(q.powc(ONE - p.tau), q, policy)?
            * qpoch_inf_nonzero(q.powc(p.alpha + p.tau * (jf - 1.0)), q, policy)?
            * qpoch_inf_nonzero(q.powc(ONE - p.alpha - p.tau * (p.n as f64 + jf - 2.0)) / ab, q, policy)?;
        c0 *= num / den * (1.0 - q.get());
    }
    Ok(c0)
}

/// Aomoto's evaluation of `I~(xi)` for `m = 1`:
/// `c_0 prod_i xi_i^{alpha + 2(n-i)tau} theta(q^{alpha+(n-1)tau} b_1 xi_i)/theta(b_1 xi_i)
///  prod_{j<k} theta(xi_k/xi_j)/theta(q^tau xi_k/xi_j)`.
pub fn aomoto_product(p: &ATypeParams, policy: &SumPolicy) -> Result<Complex64> {
    let c0 = aomoto_constant(p, policy)?;
    let q = p.q;
    let b1 = p.b[0];
    let shift = q.powc(p.alpha + p.tau * (p.n as f64 - 1.0));
    let qt = q.powc(p.tau);
    let mut v = c0;
    for (i, &x) in p.xi.iter().enumerate() {
        v *= (p.axis_exponent(i + 1) * x.ln()).exp();
        v *= theta(shift * b1 * x, q, policy)? / theta_nonzero(b1 * x, q, policy)?;
    }
    for j in 0..p.n {
        for k in j + 1..p.n {
            let r = p.xi[k] / p.xi[j];
            v *= theta(r, q, policy)? / theta_nonzero(qt * r, q, policy)?;
        }
    }
    Ok(v)
}

fn check_mg(p: &ATypeParams) -> Result<()> {
    p.validate()?;
    if p.m != p.n {
        return Err(QError::Domain(format!(
            "the Milne-Gustafson product needs m = n, got m = {}, n = {}",
            p.m, p.n
        )));
    }
    if (p.tau - Complex64::new(0.5, 0.0)).norm() > 1e-14 {
        return Err(QError::Domain(format!(
            "the Milne-Gustafson product needs tau = 1/2, got {}",
            p.tau
        )));
    }
    Ok(())
}

/// `c_1 = (1-q)^n (q)_inf^n prod_{i,j} (q/(a_i b_j))_inf
///  / ((q^alpha)_inf (q^{1-alpha}/(a_1..a_n b_1..b_n))_inf)`.
pub fn mg_constant(p: &ATypeParams, policy: &SumPolicy) -> Result<Complex64> {
    check_mg(p)?;
    let q = p.q;
    let qc = Complex64::new(q.get(), 0.0);
    let mut num = qpoch_inf(qc, q, policy).powi(p.n as i32) * (1.0 - q.get()).powi(p.n as i32);
    for &ai in &p.a {
        for &bj in &p.b {
            num *= qpoch_inf(qc / (ai * bj), q, policy);
        }
    }
    let ab: Complex64 = p.a.iter().chain(&p.b).product();
    let den =
        qpoch_inf_nonzero(q.powc(p.alpha), q, policy)? * qpoch_inf_nonzero(q.powc(ONE - p.alpha) / ab, q, policy)?;
    Ok(num / den)
}

/// The Milne-Gustafson evaluation of `I~(xi)` for `m = n`, `tau = 1/2`:
/// `c_1 (xi_1..xi_n)^alpha theta(q^alpha xi_1..xi_n b_1..b_n) / prod_{i,j} theta(xi_i b_j)
///  prod_{i<j} xi_i theta(xi_j/xi_i)`.
///
/// The thetas in this quotient are the two-factor `(z)_inf (q/z)_inf`; with the
/// three-factor `theta` the quotient picks up `(q)_inf^{(n+2)(n-1)/2}`, which is
/// divided back out here. The pair factor is written `xi_i theta(xi_j/xi_i)`,
/// which equals `-xi_j theta(xi_i/xi_j)`.
pub fn mg_product(p: &ATypeParams, policy: &SumPolicy) -> Result<Complex64> {
    let c1 = mg_constant(p, policy)?;
    let q = p.q;
    let xi_prod: Complex64 = p.xi.iter().product();
    let b_prod: Complex64 = p.b.iter().product();
    let ln_xi: Complex64 = p.xi.iter().map(|x| x.ln()).sum();
    let mut v = c1 * (p.alpha * ln_xi).exp() * theta(q.powc(p.alpha) * xi_prod * b_prod, q, policy)?;
    for &x in &p.xi {
        for &bj in &p.b {
            v /= theta_nonzero(x * bj, q, policy)?;
        }
    }
    for i in 0..p.n {
        for j in i + 1..p.n {
            v *= p.xi[i] * theta(p.xi[j] / p.xi[i], q, policy)?;
        }
    }
    let deficit = ((p.n + 2) * (p.n - 1) / 2) as i32;
    Ok(v * qpoch_inf(Complex64::new(q.get(), 0.0), q, policy).powi(deficit))
}

/// `(1, q^tau, ..., q^{(n-1)tau})`.
pub fn selberg_spec_xi(n: usize, tau: Complex64, q: QBase) -> Vec<Complex64> {
    (0..n).map(|j| q.powc(tau * j as f64)).collect()
}

/// `m = n`, `tau = 1/2`, `alpha = s0`, `a_j = x_j`, `b_j = q^{j-1}/x_j`,
/// `xi = (a_1, ..., a_n)`; `x` is indexed from zero like the classical
/// interlacing points.
pub fn da_spec_params(s0: Complex64, x: &[Complex64], q: QBase) -> Result<ATypeParams> {
    if x.is_empty() {
        return Err(QError::Domain("need at least one x value".into()));
    }
    if x.contains(&ZERO) {
        return Err(QError::Domain("x entries must be nonzero".into()));
    }
    let a = x.to_vec();
    let b = x.iter().enumerate().map(|(j, &xj)| q.powi(j as i64) / xj).collect();
    ATypeParams::new(s0, Complex64::new(0.5, 0.0), a.clone(), b, a, q)
}

/// `xi = (x_1, x_1 q^tau, ..., x_1 q^{(i-1)tau}, x_2, ..., x_2 q^{(n-i-1)tau})`.
pub fn atype_m2_xi_family(
    n: usize,
    i: usize,
    tau: Complex64,
    x1: Complex64,
    x2: Complex64,
    q: QBase,
) -> Result<Vec<Complex64>> {
    if i > n {
        return Err(QError::Domain(format!("block index {i} exceeds n = {n}")));
    }
    if x1 == ZERO || x2 == ZERO {
        return Err(QError::Domain("x1 and x2 must be nonzero".into()));
    }
    let first = (0..i).map(|k| x1 * q.powc(tau * k as f64));
    let second = (0..n - i).map(|k| x2 * q.powc(tau * k as f64));
    Ok(first.chain(second).collect())
}

/// `sum_{i=1}^{n+1} (-1)^{i-1} I~(x without x_i)` for `m = n + 1`, `alpha = 1`.
pub fn atype_alternating_sum(p: &ATypeParams, x: &[Complex64], policy: &SumPolicy) -> Result<SeriesValue> {
    let n = x
        .len()
        .checked_sub(1)
        .filter(|&n| n >= 1)
        .ok_or_else(|| QError::Domain("need at least two x values".into()))?;
    if p.m != n + 1 {
        return Err(QError::Domain(format!("need m = n + 1 = {}, got m = {}", n + 1, p.m)));
    }
    if p.alpha != ONE {
        return Err(QError::Domain(format!("need alpha = 1, got {}", p.alpha)));
    }
    let mut value = ZERO;
    let mut err = 0.0;
    let mut terms = 0;
    let mut converged = true;
    let mut window = Vec::new();
    for i in 0..=n {
        let xi: Vec<Complex64> = x.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &v)| v).collect();
        let s = atype_sum(&p.with_xi(xi), policy).map_err(|e| e.context(format_args!("i = {}", i + 1)))?;
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        value += s.value * sign;
        err += s.err_estimate;
        terms += s.terms_used;
        converged &= s.converged;
        window.extend(s.truncation_window);
    }
    // the combination can cancel, so re-judge against its own magnitude
    converged &= err <= policy.rel_tol * policy.scale(value.norm());
    Ok(SeriesValue {
        value,
        err_estimate: err,
        terms_used: terms,
        converged,
        truncation_window: window,
    })
}
