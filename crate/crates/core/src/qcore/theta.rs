use num_complex::Complex64;

use super::base::{QBase, SumPolicy};
use super::pochhammer::{qpoch_inf, qpoch_inf_nonzero};
use crate::error::{QError, Result};

/// `theta(z) = (z)_inf (q/z)_inf (q)_inf`.
///
/// Vanishes exactly on `z in q^Z` and satisfies `theta(qz) = -theta(z)/z`.
pub fn theta(z: Complex64, q: QBase, policy: &SumPolicy) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(QError::Domain("theta is undefined at z = 0".into()));
    }
    let qc = Complex64::new(q.get(), 0.0);
    Ok(qpoch_inf(z, q, policy) * qpoch_inf(qc / z, q, policy) * qpoch_inf(qc, q, policy))
}

/// [`theta`] for use in a denominator: rejects `z` within `pole_eps` (factor
/// by factor) of a zero.
pub fn theta_nonzero(z: Complex64, q: QBase, policy: &SumPolicy) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(QError::Domain("theta is undefined at z = 0".into()));
    }
    let qc = Complex64::new(q.get(), 0.0);
    let a = qpoch_inf_nonzero(z, q, policy).map_err(|e| e.context("theta"))?;
    let b = qpoch_inf_nonzero(qc / z, q, policy).map_err(|e| e.context("theta"))?;
    Ok(a * b * qpoch_inf(qc, q, policy))
}
