//! Summation over `Z^n` by expanding l-infinity shells.
//!
//! Shell `r` holds every `nu` with `max |nu_i| = r`; shells are summed in
//! increasing `r` and each shell in lexicographic order, all into one
//! compensated accumulator, so the result depends only on the inputs.
//!
//! Convergence is judged on the absolute shell sums `A_r = sum |t|` over the
//! shell, which bound the signed shell sums and are immune to cancellation
//! inside a shell. The sum stops once `consecutive_small` successive shells
//! have `A_r < rel_tol * |partial|`, each no larger than the one before, and
//! the geometric tail `A_r rho / (1 - rho)` with `rho = A_r / A_{r-1}` fits in
//! half the tolerance budget.

use num_complex::Complex64;

use crate::error::{QError, Result};
use crate::qcore::{CompensatedSum, SeriesValue, SumPolicy};

/// Shells that are always summed before growth of the per-site shell
/// average is treated as divergence.
const GROWTH_BURN_IN: usize = 24;

/// The part of the lattice that was actually summed.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeWindow {
    /// Per-axis index range `[-R, R]`.
    pub axis_ranges: Vec<(i64, i64)>,
    /// Number of shells summed, `R + 1`.
    pub shells: usize,
    /// Absolute shell sums `A_r`, `r = 0..shells`.
    pub shell_history: Vec<f64>,
}

/// A lattice sum together with the window it covered.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSum {
    pub value: SeriesValue,
    pub window: LatticeWindow,
}

/// Number of lattice points on shell `r` in `n` dimensions.
pub(crate) fn shell_size(n: usize, r: usize) -> f64 {
    if r == 0 {
        return 1.0;
    }
    let outer = (2 * r + 1) as f64;
    let inner = (2 * r - 1) as f64;
    outer.powi(n as i32) - inner.powi(n as i32)
}

/// Calls `visit` on every point of shell `r` in lexicographic order.
pub(crate) fn for_each_on_shell<F>(n: usize, r: i64, mut visit: F) -> Result<()>
where
    F: FnMut(&[i64]) -> Result<()>,
{
    let mut nu = vec![0i64; n];
    walk(&mut nu, 0, r, false, &mut visit)
}

fn walk<F>(nu: &mut [i64], depth: usize, r: i64, on_shell: bool, visit: &mut F) -> Result<()>
where
    F: FnMut(&[i64]) -> Result<()>,
{
    let n = nu.len();
    if depth == n {
        return if on_shell { visit(nu) } else { Ok(()) };
    }
    // the last coordinate must reach the shell if no earlier one did
    let last = depth + 1 == n;
    for v in -r..=r {
        let hit = on_shell || v.abs() == r;
        if last && !hit {
            continue;
        }
        nu[depth] = v;
        walk(nu, depth + 1, r, hit, visit)?;
    }
    Ok(())
}

fn history_error(message: String, history: &[f64]) -> QError {
    QError::Convergence {
        message,
        history: history.to_vec(),
    }
}

/// `scale * sum_{nu in Z^n} site(nu)` by the shell rule described above.
pub(crate) fn shell_sum<F>(n: usize, scale: f64, mut site: F, policy: &SumPolicy) -> Result<LatticeSum>
where
    F: FnMut(&[i64]) -> Result<Complex64>,
{
    policy.validate()?;
    if n == 0 {
        return Err(QError::Domain("dimension must be at least 1".into()));
    }
    let mut total = CompensatedSum::new();
    let mut history: Vec<f64> = Vec::new();
    let mut terms = 0usize;
    let mut small_run = 0usize;
    let mut growth_run = 0usize;

    for r in 0..policy.max_shells {
        let mut abs_sum = 0.0;
        for_each_on_shell(n, r as i64, |nu| {
            let t = site(nu)?;
            if !t.is_finite() {
                return Err(history_error(format!("non-finite summand at {nu:?}"), &history));
            }
            total.add(t);
            abs_sum += t.norm();
            terms += 1;
            Ok(())
        })?;
        history.push(abs_sum);

        let partial = total.value();
        let budget = policy.rel_tol * policy.scale(partial.norm());
        let prev = if r > 0 { history[r - 1] } else { f64::INFINITY };
        if r > 0 && abs_sum < budget && abs_sum <= prev {
            small_run += 1;
        } else {
            small_run = 0;
        }
        if small_run >= policy.consecutive_small {
            let rho = if prev > 0.0 { abs_sum / prev } else { 0.0 };
            let tail = if abs_sum == 0.0 {
                0.0
            } else {
                abs_sum * rho / (1.0 - rho)
            };
            if rho < 1.0 && tail <= 0.5 * budget {
                let value = partial * scale;
                let err = tail * scale.abs();
                let converged = err <= policy.rel_tol * policy.scale(value.norm());
                let rr = r as i64;
                return Ok(LatticeSum {
                    value: SeriesValue {
                        value,
                        err_estimate: err,
                        terms_used: terms,
                        converged,
                        truncation_window: vec![(-rr, rr); n],
                    },
                    window: LatticeWindow {
                        axis_ranges: vec![(-rr, rr); n],
                        shells: r + 1,
                        shell_history: history,
                    },
                });
            }
        }

        if r > 0 {
            let now = abs_sum / shell_size(n, r);
            let before = history[r - 1] / shell_size(n, r - 1);
            if now > before {
                growth_run += 1;
            } else {
                growth_run = 0;
            }
            if r >= GROWTH_BURN_IN && growth_run >= policy.consecutive_small {
                return Err(history_error(
                    format!("shell sums grow over {growth_run} consecutive shells up to radius {r}"),
                    &history,
                ));
            }
        }
    }
    Err(history_error(
        format!("shell sums did not settle within {} shells", policy.max_shells),
        &history,
    ))
}

/// Lazily filled table indexed by an integer in `[-half, half]`.
#[derive(Debug, Clone)]
pub(crate) struct DenseCache {
    half: i64,
    slots: Vec<Option<Complex64>>,
}

impl DenseCache {
    pub(crate) fn new(half: usize) -> Self {
        DenseCache {
            half: half as i64,
            slots: vec![None; 2 * half + 1],
        }
    }

    #[inline]
    pub(crate) fn get_or_try<F>(&mut self, k: i64, f: F) -> Result<Complex64>
    where
        F: FnOnce(i64) -> Result<Complex64>,
    {
        let idx = (k + self.half) as usize;
        if let Some(v) = self.slots[idx] {
            return Ok(v);
        }
        let v = f(k)?;
        self.slots[idx] = Some(v);
        Ok(v)
    }
}
