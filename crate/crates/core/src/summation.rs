//! Adaptive one- and two-sided summation of lattice-indexed terms.
//!
//! Terms are requested in the fixed order `nu = 0, 1, 2, ...` and then
//! `nu = -1, -2, ...`, so a stateful term generator (a ratio recurrence, say)
//! can rely on sequential calls within each direction. A direction stops once
//! `consecutive_small` successive terms fall below `rel_tol * |partial|` and
//! the geometric tail bound built from the last observed term ratio is within
//! half the tolerance budget. A direction whose terms fail to decrease for a
//! whole divergence window is reported as [`QError::Convergence`].

use num_complex::Complex64;

use crate::error::{QError, Result};
use crate::qcore::{CompensatedSum, QBase, SeriesValue, SumPolicy};

/// Asymptotic `|t(nu+1)/t(nu)|` per direction, when known in closed form.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct RatioHints {
    pub positive: Option<f64>,
    pub negative: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Sides {
    Both,
    NonNegative,
}

/// Number of consecutive non-decreasing terms tolerated before a direction
/// is declared divergent. Scales with the natural lattice length `1/(1-q)`.
pub(crate) fn divergence_window(q: QBase) -> usize {
    64 + (32.0 / (1.0 - q.get())).ceil() as usize
}

const NON_DECAY_SLACK: f64 = 1e-6;

pub(crate) fn sum_lattice<F>(
    mut term: F,
    sides: Sides,
    hints: RatioHints,
    q: QBase,
    policy: &SumPolicy,
) -> Result<SeriesValue>
where
    F: FnMut(i64) -> Result<Complex64>,
{
    policy.validate()?;
    let window = divergence_window(q);
    let t0 = term(0)?;
    if !t0.is_finite() {
        return Err(QError::convergence("non-finite term at nu = 0"));
    }
    let mut total = CompensatedSum::new();
    total.add(t0);
    let mut terms_used = 1usize;
    let mut err = 0.0;
    let mut lo = 0i64;
    let mut hi = 0i64;

    let directions: &[(i64, Option<f64>)] = match sides {
        Sides::Both => &[(1, hints.positive), (-1, hints.negative)],
        Sides::NonNegative => &[(1, hints.positive)],
    };

    for &(step, hint) in directions {
        let mut prev_abs = t0.norm();
        let mut ratio: Option<f64> = None;
        let mut small = 0usize;
        let mut non_decay = 0usize;
        let mut recent: Vec<f64> = Vec::new();
        let mut k = 0i64;
        let tail = loop {
            if terms_used >= policy.max_terms {
                return Err(QError::Convergence {
                    message: format!("max_terms = {} exhausted", policy.max_terms),
                    history: recent,
                });
            }
            k += 1;
            let nu = step * k;
            let t = term(nu)?;
            if !t.is_finite() {
                return Err(QError::Convergence {
                    message: format!("non-finite term at nu = {nu}"),
                    history: recent,
                });
            }
            terms_used += 1;
            total.add(t);
            let a = t.norm();
            if recent.len() == 16 {
                recent.remove(0);
            }
            recent.push(a);

            if a > 0.0 && prev_abs > 0.0 {
                ratio = Some(a / prev_abs);
            }
            if a > 0.0 && a >= prev_abs * (1.0 - NON_DECAY_SLACK) {
                non_decay += 1;
                if non_decay >= window {
                    return Err(QError::Convergence {
                        message: format!("terms stopped decreasing near nu = {nu} ({window} steps)"),
                        history: recent,
                    });
                }
            } else {
                non_decay = 0;
            }

            let scale = policy.scale(total.value().norm());
            if a < policy.rel_tol * scale {
                small += 1;
            } else {
                small = 0;
            }
            let tail = if a == 0.0 {
                0.0
            } else {
                let rho = match (ratio, hint) {
                    (Some(r), Some(h)) => r.max(h),
                    (Some(r), None) => r,
                    (None, Some(h)) => h,
                    (None, None) => f64::INFINITY,
                };
                if rho < 1.0 {
                    a * rho / (1.0 - rho)
                } else {
                    f64::INFINITY
                }
            };
            if small >= policy.consecutive_small && tail <= 0.5 * policy.rel_tol * scale {
                break tail;
            }
            prev_abs = a;
        };
        err += tail;
        if step > 0 {
            hi = k;
        } else {
            lo = -k;
        }
    }

    let value = total.value();
    Ok(SeriesValue {
        value,
        err_estimate: err,
        terms_used,
        converged: err <= policy.rel_tol * policy.scale(value.norm()),
        truncation_window: vec![(lo, hi)],
    })
}
