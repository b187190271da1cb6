use crate::error::{QError, Result};

/// `ln Gamma(x)` for real `x > 0`.
pub fn log_gamma_real(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(QError::Domain(format!("log_gamma_real needs x > 0, got {x}")));
    }
    Ok(statrs::function::gamma::ln_gamma(x))
}
