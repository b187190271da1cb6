//! Scalar building blocks: the nome, truncation policy, q-shifted factorials,
//! the theta function, compensated accumulation and real log-gamma.

mod accum;
mod base;
mod gamma;
mod pochhammer;
mod theta;

pub use accum::CompensatedSum;
pub use base::{QBase, SeriesValue, SumPolicy};
pub use gamma::log_gamma_real;
pub use pochhammer::{
    lattice_clearance, qpoch_fin, qpoch_inf, qpoch_inf_nonzero, qpoch_inf_shifted, qpoch_multi, qpoch_ratio_shifted,
    ShiftRange,
};
pub use theta::{theta, theta_nonzero};
