use num_complex::Complex64;

use crate::error::{QError, Result};

/// The nome `q`, restricted to the open interval `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct QBase(f64);

impl QBase {
    pub fn new(q: f64) -> Result<Self> {
        if q > 0.0 && q < 1.0 {
            Ok(QBase(q))
        } else {
            Err(QError::Domain(format!("q must lie in (0, 1), got {q}")))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn ln(self) -> f64 {
        self.0.ln()
    }

    /// `q^k` for an integer `k`; exactly `1.0` at `k = 0`.
    #[inline]
    pub fn powi(self, k: i64) -> f64 {
        if k == 0 {
            1.0
        } else {
            self.0.powf(k as f64)
        }
    }

    /// `q^s` for a complex exponent, on the real positive branch of `q`.
    #[inline]
    pub fn powc(self, s: Complex64) -> Complex64 {
        (s * self.ln()).exp()
    }

    /// `log_q u` on the principal branch.
    #[inline]
    pub fn log_of(self, u: Complex64) -> Complex64 {
        u.ln() / self.ln()
    }
}

/// Truncation and pole-guard settings shared by every series, product and
/// lattice sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumPolicy {
    pub rel_tol: f64,
    pub abs_floor: f64,
    pub max_terms: usize,
    pub consecutive_small: usize,
    pub max_shells: usize,
    pub pole_eps: f64,
}

impl Default for SumPolicy {
    fn default() -> Self {
        SumPolicy {
            rel_tol: 1e-12,
            abs_floor: 1e-300,
            max_terms: 1_000_000,
            consecutive_small: 3,
            max_shells: 200,
            pole_eps: 1e-10,
        }
    }
}

impl SumPolicy {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(QError::Domain("rel_tol must be positive".into()));
        }
        if self.max_terms == 0 || self.consecutive_small == 0 || self.max_shells == 0 {
            return Err(QError::Domain(
                "max_terms, consecutive_small and max_shells must be at least 1".into(),
            ));
        }
        if !(self.abs_floor >= 0.0) || !(self.pole_eps >= 0.0) {
            return Err(QError::Domain("abs_floor and pole_eps must be non-negative".into()));
        }
        Ok(())
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    /// The magnitude a partial sum is measured against.
    #[inline]
    pub(crate) fn scale(&self, partial: f64) -> f64 {
        partial.max(self.abs_floor)
    }
}

/// A computed (possibly truncated) sum.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    pub err_estimate: f64,
    pub terms_used: usize,
    pub converged: bool,
    /// Index interval actually summed, one entry per lattice axis.
    pub truncation_window: Vec<(i64, i64)>,
}

impl SeriesValue {
    /// Relative form of the error estimate.
    pub fn rel_err_estimate(&self, policy: &SumPolicy) -> f64 {
        self.err_estimate / policy.scale(self.value.norm())
    }
}
