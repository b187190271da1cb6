//! Classical (`q = 1`) reference values: the Euler beta integral and the
//! Selberg and Dixon-Anderson gamma-function products, all evaluated in log
//! space, plus a double-exponential quadrature oracle for their integral
//! sides at `n <= 2`.

mod quad;

pub use quad::{quad_oracle, QuadKind};

use crate::error::{QError, Result};
use crate::qcore::log_gamma_real;

/// `Gamma(alpha) Gamma(beta) / Gamma(alpha + beta)`.
pub fn beta_integral(alpha: f64, beta: f64) -> Result<f64> {
    if !(alpha > 0.0 && beta > 0.0) {
        return Err(QError::Domain(format!(
            "beta integral needs positive exponents, got ({alpha}, {beta})"
        )));
    }
    Ok((log_gamma_real(alpha)? + log_gamma_real(beta)? - log_gamma_real(alpha + beta)?).exp())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelbergParams {
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    pub tau: f64,
}

impl SelbergParams {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(QError::Domain("n must be at least 1".into()));
        }
        if !(self.alpha > 0.0 && self.beta > 0.0 && self.tau > 0.0) {
            return Err(QError::Domain(format!(
                "alpha, beta and tau must be positive, got ({}, {}, {})",
                self.alpha, self.beta, self.tau
            )));
        }
        Ok(())
    }
}

/// `prod_{j=1}^n Gamma(tau j + 1) Gamma(alpha + (n-j) tau) Gamma(beta + (n-j) tau)
///  / (Gamma(tau + 1) Gamma(alpha + beta + (n+j-2) tau))`.
pub fn selberg_product(p: &SelbergParams) -> Result<f64> {
    p.validate()?;
    let n = p.n as f64;
    let mut log = 0.0;
    for j in 1..=p.n {
        let j = j as f64;
        log += log_gamma_real(p.tau * j + 1.0)?
            + log_gamma_real(p.alpha + (n - j) * p.tau)?
            + log_gamma_real(p.beta + (n - j) * p.tau)?
            - log_gamma_real(p.tau + 1.0)?
            - log_gamma_real(p.alpha + p.beta + (n + j - 2.0) * p.tau)?;
    }
    Ok(log.exp())
}

/// Interlacing points `x_0 < ... < x_n` and exponents `s_0, ..., s_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DAParams {
    pub x: Vec<f64>,
    pub s: Vec<f64>,
}

impl DAParams {
    pub fn n(&self) -> usize {
        self.x.len().saturating_sub(1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.x.len() < 2 || self.s.len() != self.x.len() {
            return Err(QError::Domain(format!(
                "need n + 1 >= 2 points and as many exponents, got {} and {}",
                self.x.len(),
                self.s.len()
            )));
        }
        if self.x.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(QError::Domain("x must be strictly increasing".into()));
        }
        if self.s.iter().any(|&s| !(s > 0.0)) {
            return Err(QError::Domain("s entries must be positive".into()));
        }
        Ok(())
    }
}

/// `Gamma(s_0)...Gamma(s_n) / Gamma(s_0 + ... + s_n) prod_{i<j} (x_j - x_i)^{s_i + s_j - 1}`.
pub fn da_product(p: &DAParams) -> Result<f64> {
    p.validate()?;
    let mut log = -log_gamma_real(p.s.iter().sum())?;
    for &s in &p.s {
        log += log_gamma_real(s)?;
    }
    for i in 0..p.x.len() {
        for j in i + 1..p.x.len() {
            log += (p.s[i] + p.s[j] - 1.0) * (p.x[j] - p.x[i]).ln();
        }
    }
    Ok(log.exp())
}
