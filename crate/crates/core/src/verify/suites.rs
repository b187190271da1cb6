use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Check, Outcome, Part};
use crate::classical::{beta_integral, da_product, quad_oracle, selberg_product, DAParams, QuadKind, SelbergParams};
use crate::error::Result;
use crate::jackson1d::*;
use crate::multidim::{aomoto_product, atype_sum, bctype_sum, mg_product, ATypeParams, BCTypeParams};
use crate::qcore::{lattice_clearance, QBase, ShiftRange, SumPolicy};
use crate::series::{product_1psi1, rpsir_abs_sum, sum_rpsir, vwp6_lhs, vwp6_rhs, PsiParams, VWP6Params};

/// Minimum `|1 - u q^k|` for every factor a generator screens.
const CLEAR: f64 = 0.01;
/// Convergence margin for the bilateral series.
const MARGIN: f64 = 0.05;
const ATTEMPTS: usize = 10_000;
/// Largest admissible `sum |terms| / |closed form|`: cancellation may cost at
/// most three digits.
const KAPPA_MAX: f64 = 1e3;
const TAU_AOMOTO: f64 = 0.37;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo..hi)
}

fn polar(rng: &mut ChaCha8Rng, r_lo: f64, r_hi: f64) -> Complex64 {
    let r = uniform(rng, r_lo, r_hi);
    Complex64::from_polar(r, uniform(rng, -PI, PI))
}

fn base(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> QBase {
    QBase::new(uniform(rng, lo, hi)).expect("range lies inside (0, 1)")
}

/// Rejection sampling: the first admissible draw, if any.
fn draw<T>(rng: &mut ChaCha8Rng, mut f: impl FnMut(&mut ChaCha8Rng) -> Option<T>) -> Option<T> {
    (0..ATTEMPTS).find_map(|_| f(rng))
}

/// `u q^k` stays `CLEAR` away from 1 for every integer `k` (`all`) or every
/// `k >= 0` (`nonneg`).
fn clear(q: QBase, all: &[Complex64], nonneg: &[Complex64]) -> bool {
    all.iter().all(|&u| lattice_clearance(u, q, ShiftRange::All) >= CLEAR)
        && nonneg
            .iter()
            .all(|&u| lattice_clearance(u, q, ShiftRange::NonNegative) >= CLEAR)
}

fn prod(xs: &[Complex64]) -> Complex64 {
    xs.iter().product()
}

fn well_conditioned(mass: Result<f64>, value: Result<Complex64>) -> bool {
    match (mass, value) {
        (Ok(m), Ok(v)) => m <= KAPPA_MAX * v.norm(),
        _ => false,
    }
}

#[derive(Default)]
struct Params(Vec<(String, f64)>);

impl Params {
    fn real(&mut self, k: &str, v: f64) -> &mut Self {
        self.0.push((k.to_string(), v));
        self
    }

    fn cplx(&mut self, k: &str, z: Complex64) -> &mut Self {
        self.real(&format!("{k}_re"), z.re).real(&format!("{k}_im"), z.im)
    }

    fn list(&mut self, k: &str, zs: &[Complex64]) -> &mut Self {
        for (i, &z) in zs.iter().enumerate() {
            self.cplx(&format!("{k}{}", i + 1), z);
        }
        self
    }

    fn take(&mut self) -> Vec<(String, f64)> {
        std::mem::take(&mut self.0)
    }
}

struct Eval {
    lhs: Complex64,
    rhs: Complex64,
    terms: usize,
    rel_err: Option<f64>,
    ok: bool,
}

impl Eval {
    fn new(lhs: Complex64, rhs: Complex64, terms: usize) -> Self {
        Eval {
            lhs,
            rhs,
            terms,
            rel_err: None,
            ok: true,
        }
    }
}

fn settle(params: &mut Params, r: Result<Eval>) -> Outcome {
    match r {
        Ok(e) => Outcome::Done(Check {
            params: params.take(),
            lhs: e.lhs,
            rhs: e.rhs,
            terms: e.terms,
            rel_err: e.rel_err,
            ok: e.ok,
        }),
        Err(err) => Outcome::Failed {
            params: params.take(),
            error: err.to_string(),
        },
    }
}

macro_rules! or_skip {
    ($e:expr) => {
        match $e {
            Some(v) => v,
            None => return Outcome::Skipped,
        }
    };
}

// ---------------------------------------------------------------------------
// Bilateral series
// ---------------------------------------------------------------------------

fn ramanujan(rng: &mut ChaCha8Rng, _: usize, policy: &SumPolicy) -> Outcome {
    let (a, b, x, q) = or_skip!(draw(rng, |rng| {
        let q = base(rng, 0.1, 0.8);
        let a = polar(rng, 0.3, 3.0);
        let b = polar(rng, 0.05, 2.0);
        let lower = b.norm() / a.norm() + MARGIN;
        if lower >= 1.0 - MARGIN {
            return None;
        }
        let x = polar(rng, lower, 1.0 - MARGIN);
        let qc = re(q.get());
        if !clear(q, &[], &[x, b, qc / a, b / (a * x), a * x, b / a, qc / (a * x)]) {
            return None;
        }
        let psi = PsiParams::new(vec![a], vec![b], x, q).ok()?;
        well_conditioned(rpsir_abs_sum(&psi, policy), product_1psi1(a, b, x, q, policy)).then_some((a, b, x, q))
    }));
    let mut params = Params::default();
    params.real("q", q.get()).cplx("a", a).cplx("b", b).cplx("x", x);
    settle(
        &mut params,
        (|| {
            let s = sum_rpsir(&PsiParams::new(vec![a], vec![b], x, q)?, policy)?;
            Ok(Eval::new(s.value, product_1psi1(a, b, x, q, policy)?, s.terms_used))
        })(),
    )
}

fn vwp6_clear(p: &VWP6Params) -> bool {
    let VWP6Params { a, b, c, d, e, q } = *p;
    let qc = re(q.get());
    let aq = a * qc;
    let psi = p.to_psi();
    let mut nonneg: Vec<Complex64> = psi.b.clone();
    nonneg.extend(psi.a.iter().map(|&u| qc / u));
    nonneg.extend([
        aq,
        aq / (b * c),
        aq / (b * d),
        aq / (b * e),
        aq / (c * d),
        aq / (c * e),
        aq / (d * e),
        qc / a,
        aq / b,
        aq / c,
        aq / d,
        aq / e,
        qc / b,
        qc / c,
        qc / d,
        qc / e,
        p.argument(),
    ]);
    clear(q, &[], &nonneg)
}

fn bailey(rng: &mut ChaCha8Rng, _: usize, policy: &SumPolicy) -> Outcome {
    let p = or_skip!(draw(rng, |rng| {
        let q = base(rng, 0.1, 0.8);
        let p = VWP6Params {
            a: polar(rng, 0.05, 1.0),
            b: polar(rng, 0.3, 1.5),
            c: polar(rng, 0.3, 1.5),
            d: polar(rng, 0.3, 1.5),
            e: polar(rng, 0.3, 1.5),
            q,
        };
        // the lower edge of the annulus is |x|^2, so |x| - |x|^2 >= MARGIN
        let x = p.argument().norm();
        let inside = x <= 1.0 - MARGIN && x - x * x >= MARGIN;
        let ok = inside && vwp6_clear(&p) && well_conditioned(rpsir_abs_sum(&p.to_psi(), policy), vwp6_rhs(&p, policy));
        ok.then_some(p)
    }));
    let mut params = Params::default();
    params
        .real("q", p.q.get())
        .cplx("a", p.a)
        .cplx("b", p.b)
        .cplx("c", p.c)
        .cplx("d", p.d)
        .cplx("e", p.e);
    settle(
        &mut params,
        (|| {
            let s = vwp6_lhs(&p, policy)?;
            Ok(Eval::new(s.value, vwp6_rhs(&p, policy)?, s.terms_used))
        })(),
    )
}

// ---------------------------------------------------------------------------
// Askey's integral
// ---------------------------------------------------------------------------

/// `alpha` in `[0.2, 1.5]`, `alpha + beta` in `[s_lo, s_hi]`, complex `xi`
/// with `|xi|` in `[0.5, 1.5]`.
fn askey_draw(rng: &mut ChaCha8Rng, s_lo: f64, s_hi: f64) -> Option<AskeyParams> {
    draw(rng, |rng| {
        let q = base(rng, 0.1, 0.8);
        let alpha = uniform(rng, 0.2, 1.5);
        let beta = uniform(rng, s_lo, s_hi) - alpha;
        let xi = polar(rng, 0.5, 1.5);
        let qb = q.powc(re(beta));
        let qs = q.powc(re(alpha + beta));
        clear(q, &[xi, qb * xi, qs * xi, qs * xi * q.get()], &[q.powc(re(1.0 - beta))]).then_some(AskeyParams {
            alpha: re(alpha),
            beta: re(beta),
            xi,
            q,
        })
    })
}

fn askey_params(p: &AskeyParams) -> Params {
    let mut params = Params::default();
    params
        .real("q", p.q.get())
        .real("alpha", p.alpha.re)
        .real("beta", p.beta.re)
        .cplx("xi", p.xi);
    params
}

fn askey_i(rng: &mut ChaCha8Rng, _: usize, policy: &SumPolicy) -> Outcome {
    let p = or_skip!(askey_draw(rng, -1.0, 0.8));
    settle(
        &mut askey_params(&p),
        (|| {
            let s = askey_i_sum(&p, policy)?;
            Ok(Eval::new(s.value, askey_i_product(&p, policy)?, s.terms_used))
        })(),
    )
}

fn askey_xi1(rng: &mut ChaCha8Rng, _: usize, policy: &SumPolicy) -> Outcome {
    let q = base(rng, 0.1, 0.8);
    let p = AskeyParams {
        alpha: re(uniform(rng, 0.3, 2.0)),
        beta: re(uniform(rng, 0.2, 2.0)),
        xi: re(1.0),
        q,
    };
    settle(
        &mut askey_params(&p),
        (|| {
            let s = askey_i_sum(&p, policy)?;
            Ok(Eval::new(s.value, q_beta(p.alpha, p.beta, q, policy)?, s.terms_used))
        })(),
    )
}

fn recurrence(rng: &mut ChaCha8Rng, _: usize, policy: &SumPolicy) -> Outcome {
    let p = or_skip!(askey_draw(rng, -1.2, -0.1));
    settle(
        &mut askey_params(&p),
        (|| {
            let (lhs, rhs) = recurrence_sides_i(&p, policy)?;
            Ok(Eval::new(lhs, rhs, 0))
        })(),
    )
}

fn nabla(phi: fn(Complex64) -> Complex64, rng: &mut ChaCha8Rng, policy: &SumPolicy) -> Outcome {
    let p = or_skip!(askey_draw(rng, -1.2, -0.1));
    settle(
        &mut askey_params(&p),
        (|| {
            let (plain, shifted) = nabla_brackets(&p, phi, policy)?;
            let mut e = Eval::new(plain.value, shifted.value, plain.terms_used + shifted.terms_used);
            e.rel_err = Some((plain.value - shifted.value).norm() / (plain.value.norm() + policy.abs_floor));
            Ok(e)
        })(),
    )
}

fn nabla_one(rng: &mut ChaCha8Rng, _: usize, policy: &SumPolicy) -> Outcome {
    nabla(|_| re(1.0), rng, policy)
}

fn nabla_z(rng: &mut ChaCha8Rng, _: usize, policy: &SumPolicy) -> Outcome {
    nabla(|z| z, rng, policy)
}

fn nabla_one_minus_z(rng: &mut ChaCha8Rng, _: usize, policy: &SumPolicy) -> Outcome {
    nabla(|z| re(1.0) - z, rng, policy)
}

// ---------------------------------------------------------------------------
// BC1-type integral
// ---------------------------------------------------------------------------

/// Real `a_i` in `[0.5, 3.5]` with `sum alpha <= sum_max`; `xi` complex with
/// `|xi|` in `[0.5, 1.5]` unless `at_a1`, in which case `xi = a_1`. The sum
/// must be well conditioned.
fn bc1_draw(
    rng: &mut ChaCha8Rng,
    q_lo: f64,
    q_hi: f64,
    sum_max: f64,
    at_a1: bool,
    policy: &SumPolicy,
) -> Option<BC1Params> {
    draw(rng, |rng| {
        let q = base(rng, q_lo, q_hi);
        let a = [(); 4].map(|_| re(uniform(rng, 0.5, 3.5)));
        let xi = if at_a1 { a[0] } else { polar(rng, 0.5, 1.5) };
        let p = BC1Params { a, xi, q };
        if p.alpha_sum().re > sum_max {
            return None;
        }
        let qc = re(q.get());
        let mut all = vec![xi * xi];
        let mut nonneg = vec![qc / prod(&a)];
        for i in 0..4 {
            all.push(a[i] * xi);
            if !at_a1 {
                all.push(xi / a[i]);
            }
            for j in i + 1..4 {
                nonneg.push(qc / (a[i] * a[j]));
            }
        }
        (clear(q, &all, &nonneg) && bc1_conditioned(&p, policy)).then_some(p)
    })
}

fn bc1_conditioned(p: &BC1Params, policy: &SumPolicy) -> bool {
    well_conditioned(bc1_j_abs_sum(p, policy), bc1_j_product(p, policy))
}

fn bc1_params(p: &BC1Params) -> Params {
    let mut params = Params::default();
    params.real("q", p.q.get()).list("a", &p.a).cplx("xi", p.xi);
    params
}

fn bc1_j(rng: &mut ChaCha8Rng, _: usize, policy: &SumPolicy) -> Outcome {
    let p = or_skip!(bc1_draw(rng, 0.1, 0.8, 0.8, false, policy));
    settle(
        &mut bc1_params(&p),
        (|| {
            let s = bc1_j_sum(&p, policy)?;
            Ok(Eval::new(s.value, bc1_j_product(&p, policy)?, s.terms_used))
        })(),
    )
}

fn bc1_shift(i: usize, rng: &mut ChaCha8Rng, policy: &SumPolicy) -> Outcome {
    let p = or_skip!(draw(rng, |rng| {
        let p = bc1_draw(rng, 0.1, 0.8, -0.2, false, policy)?;
        let ok = p.a.iter().all(|&a| (1.0 - a * a).norm() >= CLEAR)
            && (1.0 - prod(&p.a)).norm() >= CLEAR
            && bc1_conditioned(&p.shifted(i), policy);
        ok.then_some(p)
    }));
    settle(
        &mut bc1_params(&p),
        (|| {
            let (lhs, rhs) = bc1_shift_sides(&p, i, policy)?;
            let mut e = Eval::new(lhs, rhs, 0);
            e.rel_err = Some((lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(policy.abs_floor));
            Ok(e)
        })(),
    )
}

fn bc1_shift_1(rng: &mut ChaCha8Rng, _: usize, policy: &SumPolicy) -> Outcome {
    bc1_shift(1, rng, policy)
}

fn bc1_shift_2(rng: &mut ChaCha8Rng, _: usize, policy: &SumPolicy) -> Outcome {
    bc1_shift(2, rng, policy)
}

fn bc1_shift_3(rng: &mut ChaCha8Rng, _: usize, policy: &SumPolicy) -> Outcome {
    bc1_shift(3, rng, policy)
}

fn bc1_shift_4(rng: &mut ChaCha8Rng, _: usize, policy: &SumPolicy) -> Outcome {
    bc1_shift(4, rng, policy)
}

fn j6phi5_sum(rng: &mut ChaCha8Rng, _: usize, policy: &SumPolicy) -> Outcome {
    let p = or_skip!(bc1_draw(rng, 0.1, 0.8, 0.8, true, policy));
    settle(
        &mut bc1_params(&p),
        (|| {
            let s = bc1_j_sum(&p, policy)?;
            Ok(Eval::new(s.value, j6phi5_product(&p.a, p.q, policy)?, s.terms_used))
        })(),
    )
}

fn j6phi5_theta(rng: &mut ChaCha8Rng, _: usize, policy: &SumPolicy) -> Outcome {
    let p = or_skip!(bc1_draw(rng, 0.1, 0.8, 0.8, true, policy));
    settle(
        &mut bc1_params(&p),
        (|| {
            Ok(Eval::new(
                bc1_j_product(&p, policy)?,
                j6phi5_product(&p.a, p.q, policy)?,
                0,
            ))
        })(),
    )
}

// ---------------------------------------------------------------------------
// A-type integrals
// ---------------------------------------------------------------------------

/// Pair screening shared by the A-type generators: `xi_l / xi_k` and
/// `q^tau xi_l / xi_k` off the lattice for every ordered pair.
fn pair_args(xi: &[Complex64], qt: Complex64) -> Vec<Complex64> {
    let mut out = Vec::new();
    for (k, &x) in xi.iter().enumerate() {
        for (l, &y) in xi.iter().enumerate() {
            if k != l {
                out.push(y / x);
                out.push(qt * y / x);
            }
        }
    }
    out
}

fn atype_params(p: &ATypeParams) -> Params {
    let mut params = Params::default();
    params
        .real("q", p.q.get())
        .real("alpha", p.alpha.re)
        .real("tau", p.tau.re)
        .list("a", &p.a)
        .list("b", &p.b)
        .list("xi", &p.xi);
    params
}

/// `m = 1`, `tau = 0.37`. With `beta' = log_q(a_1 b_1)` the sum converges when
/// `alpha > 0` and `alpha + beta' - 1 + 2 tau (n - 1) < 0`; the generator puts
/// the second quantity in `[-2, -0.8]`.
fn aomoto(n: usize, rng: &mut ChaCha8Rng, policy: &SumPolicy) -> Outcome {
    let p = or_skip!(draw(rng, |rng| {
        let q = base(rng, 0.3, 0.6);
        let alpha = uniform(rng, 0.8, 1.5);
        let tau = TAU_AOMOTO;
        let a1 = re(uniform(rng, 0.5, 2.0));
        let decay = uniform(rng, -2.0, -0.8);
        let beta = decay - alpha + 1.0 - 2.0 * tau * (n - 1) as f64;
        let b1 = q.powc(re(beta)) / a1;
        let xi: Vec<Complex64> = (0..n).map(|_| re(uniform(rng, 0.5, 1.5))).collect();
        let ab = a1 * b1;
        let qt = q.powc(re(tau));
        let lead = q.powc(re(alpha + (n - 1) as f64 * tau));
        let mut all = pair_args(&xi, qt);
        for &x in &xi {
            all.extend([b1 * x, x / a1, lead * b1 * x]);
        }
        let mut nonneg = vec![q.powc(re(1.0 - tau))];
        for j in 1..=n {
            let j = j as f64;
            nonneg.extend([
                q.powc(re(1.0 - j * tau)),
                q.powc(re(1.0 - (j - 1.0) * tau)) / ab,
                q.powc(re(alpha + (j - 1.0) * tau)),
                q.powc(re(1.0 - alpha - (n as f64 + j - 2.0) * tau)) / ab,
            ]);
        }
        if !clear(q, &all, &nonneg) {
            return None;
        }
        ATypeParams::new(re(alpha), re(tau), vec![a1], vec![b1], xi, q).ok()
    }));
    settle(
        &mut atype_params(&p),
        (|| {
            let s = atype_sum(&p, policy)?;
            Ok(Eval::new(s.value, aomoto_product(&p, policy)?, s.terms_used))
        })(),
    )
}

fn aomoto_2(rng: &mut ChaCha8Rng, _: usize, policy: &SumPolicy) -> Outcome {
    aomoto(2, rng, policy)
}

fn aomoto_3(rng: &mut ChaCha8Rng, _: usize, policy: &SumPolicy) -> Outcome {
    aomoto(3, rng, policy)
}

/// `m = n`, `tau = 1/2`. With `B = sum_j log_q(a_j b_j)` the sum converges when
/// `alpha > 0` and `alpha + B - 1 < 0`; the generator puts the latter in
/// `[-2, -0.8]` and splits `B` over the `j` with random weights.
fn milne_gustafson(n: usize, rng: &mut ChaCha8Rng, policy: &SumPolicy) -> Outcome {
    let p = or_skip!(draw(rng, |rng| {
        let q = base(rng, 0.3, 0.6);
        let alpha = uniform(rng, 0.3, 1.2);
        let total = uniform(rng, -2.0, -0.8) + 1.0 - alpha;
        let weights: Vec<f64> = (0..n).map(|_| uniform(rng, 0.5, 1.5)).collect();
        let wsum: f64 = weights.iter().sum();
        let a: Vec<Complex64> = (0..n).map(|_| re(uniform(rng, 0.5, 1.5))).collect();
        let b: Vec<Complex64> = a
            .iter()
            .zip(&weights)
            .map(|(&aj, w)| q.powc(re(total * w / wsum)) / aj)
            .collect();
        let xi: Vec<Complex64> = (0..n).map(|_| re(uniform(rng, 0.5, 1.5))).collect();
        let qc = re(q.get());
        let qa = q.powc(re(alpha));
        let mut all = pair_args(&xi, q.powc(re(0.5)));
        all.push(qa * prod(&xi) * prod(&b));
        let mut nonneg = vec![qa, q.powc(re(1.0 - alpha)) / (prod(&a) * prod(&b))];
        for &x in &xi {
            for (&aj, &bj) in a.iter().zip(&b) {
                all.extend([x * bj, x / aj]);
            }
        }
        for &ai in &a {
            for &bj in &b {
                nonneg.push(qc / (ai * bj));
            }
        }
        if !clear(q, &all, &nonneg) {
            return None;
        }
        ATypeParams::new(re(alpha), re(0.5), a, b, xi, q).ok()
    }));
    settle(
        &mut atype_params(&p),
        (|| {
            let s = atype_sum(&p, policy)?;
            Ok(Eval::new(s.value, mg_product(&p, policy)?, s.terms_used))
        })(),
    )
}

fn milne_gustafson_2(rng: &mut ChaCha8Rng, _: usize, policy: &SumPolicy) -> Outcome {
    milne_gustafson(2, rng, policy)
}

fn milne_gustafson_3(rng: &mut ChaCha8Rng, _: usize, policy: &SumPolicy) -> Outcome {
    milne_gustafson(3, rng, policy)
}

// ---------------------------------------------------------------------------
// Reductions
// ---------------------------------------------------------------------------

fn askey_as_atype(p: &AskeyParams, tau: f64) -> Result<ATypeParams> {
    ATypeParams::new(p.alpha, re(tau), vec![re(1.0)], vec![p.q.powc(p.beta)], vec![p.xi], p.q)
}

/// Both tails of the `n = 1` lattice sum fall below `1e-13` within 150 shells,
/// inside the default shell budget.
fn askey_fast_tails(p: &AskeyParams) -> bool {
    let rate = p.alpha.re.min(1.0 - p.alpha.re - p.beta.re) * -p.q.get().ln();
    rate * 150.0 >= 30.0
}

fn reduce_atype(rng: &mut ChaCha8Rng, _: usize, policy: &SumPolicy) -> Outcome {
    let p = or_skip!(draw(rng, |rng| askey_draw(rng, -1.0, 0.8).filter(askey_fast_tails)));
    settle(
        &mut askey_params(&p),
        (|| {
            let s = atype_sum(&askey_as_atype(&p, TAU_AOMOTO)?, policy)?;
            Ok(Eval::new(s.value, askey_i_sum(&p, policy)?.value, s.terms_used))
        })(),
    )
}

fn reduce_mg(rng: &mut ChaCha8Rng, _: usize, policy: &SumPolicy) -> Outcome {
    let p = or_skip!(askey_draw(rng, -1.0, 0.8));
    settle(
        &mut askey_params(&p),
        (|| {
            let lhs = mg_product(&askey_as_atype(&p, 0.5)?, policy)?;
            Ok(Eval::new(lhs, askey_i_product(&p, policy)?, 0))
        })(),
    )
}

fn reduce_bctype(rng: &mut ChaCha8Rng, _: usize, policy: &SumPolicy) -> Outcome {
    let p = or_skip!(bc1_draw(rng, 0.1, 0.8, 0.8, false, policy));
    settle(
        &mut bc1_params(&p),
        (|| {
            let bt = BCTypeParams::from_a(&p.a, re(TAU_AOMOTO), vec![p.xi], p.q)?;
            let s = bctype_sum(&bt, policy)?;
            Ok(Eval::new(s.value, bc1_j_sum(&p, policy)?.value, s.terms_used))
        })(),
    )
}

fn reduce_vwp6(rng: &mut ChaCha8Rng, _: usize, policy: &SumPolicy) -> Outcome {
    let p = or_skip!(draw(rng, |rng| {
        let p = bc1_draw(rng, 0.1, 0.8, 0.8, false, policy)?;
        let ok = (1.0 - p.xi * p.xi).norm() >= CLEAR && vwp6_clear(&p.to_vwp6());
        ok.then_some(p)
    }));
    settle(
        &mut bc1_params(&p),
        (|| {
            let s = vwp6_lhs(&p.to_vwp6(), policy)?;
            Ok(Eval::new(vwp6_via_jackson(&p, policy)?, s.value, s.terms_used))
        })(),
    )
}

// ---------------------------------------------------------------------------
// Classical limits
// ---------------------------------------------------------------------------

const QUAD_TOL: f64 = 1e-9;

fn selberg_params(p: &SelbergParams) -> Params {
    let mut params = Params::default();
    params
        .real("n", p.n as f64)
        .real("alpha", p.alpha)
        .real("beta", p.beta)
        .real("tau", p.tau);
    params
}

fn selberg_beta(rng: &mut ChaCha8Rng, _: usize, _: &SumPolicy) -> Outcome {
    let p = SelbergParams {
        n: 1,
        alpha: uniform(rng, 0.2, 5.0),
        beta: uniform(rng, 0.2, 5.0),
        tau: uniform(rng, 0.1, 2.0),
    };
    settle(
        &mut selberg_params(&p),
        (|| {
            Ok(Eval::new(
                re(selberg_product(&p)?),
                re(beta_integral(p.alpha, p.beta)?),
                0,
            ))
        })(),
    )
}

fn selberg_quad(rng: &mut ChaCha8Rng, _: usize, _: &SumPolicy) -> Outcome {
    let p = SelbergParams {
        n: 2,
        alpha: uniform(rng, 0.6, 3.0),
        beta: uniform(rng, 0.6, 3.0),
        tau: uniform(rng, 0.3, 1.5),
    };
    settle(
        &mut selberg_params(&p),
        (|| {
            let quad = quad_oracle(&QuadKind::Selberg(p), QUAD_TOL)?;
            Ok(Eval::new(re(selberg_product(&p)?), re(quad), 0))
        })(),
    )
}

fn selberg_sixth(_: &mut ChaCha8Rng, _: usize, _: &SumPolicy) -> Outcome {
    let p = SelbergParams {
        n: 2,
        alpha: 1.0,
        beta: 1.0,
        tau: 1.0,
    };
    settle(
        &mut selberg_params(&p),
        (|| Ok(Eval::new(re(selberg_product(&p)?), re(1.0 / 6.0), 0)))(),
    )
}

fn da_quad(rng: &mut ChaCha8Rng, _: usize, _: &SumPolicy) -> Outcome {
    let x0 = uniform(rng, -1.0, 0.0);
    let x1 = x0 + uniform(rng, 0.3, 1.5);
    let x2 = x1 + uniform(rng, 0.3, 1.5);
    let p = DAParams {
        x: vec![x0, x1, x2],
        s: (0..3).map(|_| uniform(rng, 0.6, 3.0)).collect(),
    };
    let mut params = Params::default();
    for (i, (&x, &s)) in p.x.iter().zip(&p.s).enumerate() {
        params.real(&format!("x{i}"), x).real(&format!("s{i}"), s);
    }
    settle(
        &mut params,
        (|| {
            let quad = quad_oracle(&QuadKind::DixonAnderson(p.clone()), QUAD_TOL)?;
            Ok(Eval::new(re(da_product(&p)?), re(quad), 0))
        })(),
    )
}

const Q_LIMIT_PAIRS: [(f64, f64); 3] = [(1.0, 2.0), (1.5, 0.7), (2.0, 2.0)];
const Q_LIMIT_STEPS: [f64; 3] = [0.9, 0.99, 0.999];

/// `q_beta` approaches `beta_integral` monotonically along `q = 0.9, 0.99,
/// 0.999`; the record carries the final gap.
fn q_beta_limit(_: &mut ChaCha8Rng, trial: usize, policy: &SumPolicy) -> Outcome {
    let (alpha, beta) = Q_LIMIT_PAIRS[trial % Q_LIMIT_PAIRS.len()];
    let mut params = Params::default();
    params.real("alpha", alpha).real("beta", beta);
    settle(
        &mut params,
        (|| {
            let exact = beta_integral(alpha, beta)?;
            let mut gaps = Vec::new();
            let mut last = re(0.0);
            for &qv in &Q_LIMIT_STEPS {
                let q = QBase::new(qv)?;
                last = q_beta(re(alpha), re(beta), q, policy)?;
                gaps.push((last.re - exact).abs() / exact);
            }
            let mut e = Eval::new(last, re(exact), 0);
            e.rel_err = gaps.last().copied();
            e.ok = gaps.windows(2).all(|w| w[1] < w[0]);
            Ok(e)
        })(),
    )
}

// ---------------------------------------------------------------------------
// Asymptotics
// ---------------------------------------------------------------------------

const LEADING_SHIFT: f64 = 40.0;
const LIMIT_STEPS: i64 = 10;

/// `I(alpha + 40; 1)` against its `nu = 0` term at `(beta, q) = (1.3, 0.5)`.
fn askey_leading(rng: &mut ChaCha8Rng, _: usize, policy: &SumPolicy) -> Outcome {
    let q = QBase::new(0.5).expect("fixed base");
    let p = AskeyParams {
        alpha: re(uniform(rng, 0.2, 1.5) + LEADING_SHIFT),
        beta: re(1.3),
        xi: re(1.0),
        q,
    };
    settle(
        &mut askey_params(&p),
        (|| {
            let s = askey_i_sum(&p, policy)?;
            Ok(Eval::new(s.value, askey_leading_term(p.beta, q, policy)?, s.terms_used))
        })(),
    )
}

/// `J(a_1)` against its `nu = 0` term after ten steps of the limit regime.
/// The gap behaves like `q^{N + 1 - sum alpha}`, so `q` is kept small.
fn bc1_limit(rng: &mut ChaCha8Rng, _: usize, policy: &SumPolicy) -> Outcome {
    let p = or_skip!(bc1_draw(rng, 0.1, 0.25, 0.0, true, policy));
    let a = bc1_limit_parameters(&p.a, LIMIT_STEPS, p.q);
    let p = BC1Params { a, xi: a[0], q: p.q };
    settle(
        &mut bc1_params(&p),
        (|| {
            let s = bc1_j_sum(&p, policy)?;
            Ok(Eval::new(s.value, bc1_leading_term(&p, policy)?, s.terms_used))
        })(),
    )
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

const ASKEY_REGION: &str = "q in [0.1, 0.8]; alpha in [0.2, 1.5]; alpha + beta in [-1, 0.8]; \
complex xi with |xi| in [0.5, 1.5]; xi, q^beta xi, q^(alpha+beta) xi off the theta zeros by 0.01";
const SHIFTED_REGION: &str = "as askey-I but alpha + beta in [-1.2, -0.1] so that alpha + 1 and \
the bracket of z also converge";
const BC1_REGION: &str = "q in [0.1, 0.8]; real a_i in [0.5, 3.5] with sum alpha <= 0.8; complex xi \
with |xi| in [0.5, 1.5]; a_i xi, xi / a_i, xi^2 off the lattice by 0.01; q/(a_i a_j), q/(a_1 a_2 a_3 a_4) \
factors >= 0.01; sum |terms| <= 1e3 |J|";
const J6PHI5_REGION: &str = "as bc1-J with xi = a_1";

macro_rules! part {
    ($stream:expr, $suite:expr, $id:expr, $run:expr, $trials:expr, $tol:expr, $statement:expr, $region:expr) => {
        Part {
            identity: $id,
            suite: $suite,
            statement: $statement,
            region: $region,
            trials: $trials,
            tol: $tol,
            stream: $stream,
            run: $run,
        }
    };
}

pub(super) static PARTS: &[Part] = &[
    part!(
        1,
        "ramanujan-1psi1",
        "ramanujan-1psi1",
        ramanujan,
        1000,
        1e-9,
        "Ramanujan's 1psi1 sum equals its infinite product",
        "q in [0.1, 0.8]; complex a with |a| in [0.3, 3], b with |b| in [0.05, 2]; |b/a| + 0.05 <= |x| <= 0.95; \
every numerator and denominator factor >= 0.01; sum |terms| <= 1e3 |product|"
    ),
    part!(
        2,
        "askey-I",
        "askey-I",
        askey_i,
        200,
        1e-9,
        "Askey's bilateral Jackson integral I(xi) equals C xi^alpha theta(q^(alpha+beta) xi) / theta(q^beta xi)",
        ASKEY_REGION
    ),
    part!(
        3,
        "askey-I",
        "askey-I[xi=1]",
        askey_xi1,
        100,
        1e-12,
        "I(1) equals the q-beta integral",
        "q in [0.1, 0.8]; alpha in [0.3, 2]; beta in [0.2, 2]"
    ),
    part!(
        4,
        "q-beta-recurrence",
        "q-beta-recurrence",
        recurrence,
        100,
        1e-9,
        "I(alpha; xi) = (1 - q^(alpha+beta)) / (1 - q^alpha) I(alpha + 1; xi)",
        SHIFTED_REGION
    ),
    part!(
        5,
        "nabla",
        "nabla[phi=1]",
        nabla_one,
        100,
        1e-9,
        "the Jackson integral of nabla phi vanishes, phi = 1",
        SHIFTED_REGION
    ),
    part!(
        6,
        "nabla",
        "nabla[phi=z]",
        nabla_z,
        100,
        1e-9,
        "the Jackson integral of nabla phi vanishes, phi = z",
        SHIFTED_REGION
    ),
    part!(
        7,
        "nabla",
        "nabla[phi=1-z]",
        nabla_one_minus_z,
        100,
        1e-9,
        "the Jackson integral of nabla phi vanishes, phi = 1 - z",
        SHIFTED_REGION
    ),
    part!(
        8,
        "bailey-6psi6",
        "bailey-6psi6",
        bailey,
        200,
        1e-8,
        "Bailey's very-well-poised 6psi6 sum equals its product",
        "q in [0.1, 0.8]; complex a with |a| in [0.05, 1], b, c, d, e with modulus in [0.3, 1.5]; \
x = a^2 q/(bcde) with |x| <= 0.95 and |x| - |x|^2 >= 0.05; every series and product factor >= 0.01; \
sum |terms| <= 1e3 |product|"
    ),
    part!(
        9,
        "bc1-J",
        "bc1-J",
        bc1_j,
        100,
        1e-9,
        "J(xi) equals C~ xi theta(xi^2) / prod xi^alpha_m theta(a_m xi)",
        BC1_REGION
    ),
    part!(
        10,
        "bc1-shift",
        "bc1-shift[i=1]",
        bc1_shift_1,
        100,
        1e-9,
        "T_(a_1) J(xi) = -K_1 J(xi)",
        "as bc1-J with sum alpha <= -0.2, also well conditioned after the shift; \
|1 - a_i^2|, |1 - a_1 a_2 a_3 a_4| >= 0.01"
    ),
    part!(
        11,
        "bc1-shift",
        "bc1-shift[i=2]",
        bc1_shift_2,
        100,
        1e-9,
        "T_(a_2) J(xi) = -K_2 J(xi)",
        "as bc1-shift[i=1]"
    ),
    part!(
        12,
        "bc1-shift",
        "bc1-shift[i=3]",
        bc1_shift_3,
        100,
        1e-9,
        "T_(a_3) J(xi) = -K_3 J(xi)",
        "as bc1-shift[i=1]"
    ),
    part!(
        13,
        "bc1-shift",
        "bc1-shift[i=4]",
        bc1_shift_4,
        100,
        1e-9,
        "T_(a_4) J(xi) = -K_4 J(xi)",
        "as bc1-shift[i=1]"
    ),
    part!(
        14,
        "j6phi5",
        "j6phi5",
        j6phi5_sum,
        100,
        1e-9,
        "J(a_1) equals Jackson's 6phi5 product",
        J6PHI5_REGION
    ),
    part!(
        15,
        "j6phi5",
        "j6phi5[theta-form]",
        j6phi5_theta,
        100,
        1e-9,
        "the theta-quotient form of J(xi) at xi = a_1 equals Jackson's 6phi5 product",
        J6PHI5_REGION
    ),
    part!(
        16,
        "aomoto",
        "aomoto[n=2]",
        aomoto_2,
        10,
        1e-7,
        "the A-type sum with m = 1 equals Aomoto's product",
        "q in [0.3, 0.6]; alpha in [0.8, 1.5]; tau = 0.37; a_1 in [0.5, 2]; b_1 set so that \
alpha + log_q(a_1 b_1) - 1 + 2 tau (n - 1) lies in [-2, -0.8]; real xi_i in [0.5, 1.5]; all theta and \
Pochhammer factors >= 0.01"
    ),
    part!(
        17,
        "aomoto",
        "aomoto[n=3]",
        aomoto_3,
        10,
        1e-7,
        "the A-type sum with m = 1 equals Aomoto's product",
        "as aomoto[n=2]"
    ),
    part!(
        18,
        "milne-gustafson",
        "milne-gustafson[n=2]",
        milne_gustafson_2,
        10,
        1e-7,
        "the A-type sum with m = n, tau = 1/2 equals the Milne-Gustafson product",
        "q in [0.3, 0.6]; alpha in [0.3, 1.2]; real a_j in [0.5, 1.5]; b_j set so that \
alpha + sum_j log_q(a_j b_j) - 1 lies in [-2, -0.8]; real xi_i in [0.5, 1.5]; all theta and Pochhammer \
factors >= 0.01"
    ),
    part!(
        19,
        "milne-gustafson",
        "milne-gustafson[n=3]",
        milne_gustafson_3,
        10,
        1e-7,
        "the A-type sum with m = n, tau = 1/2 equals the Milne-Gustafson product",
        "as milne-gustafson[n=2]"
    ),
    part!(
        20,
        "reductions",
        "reduction[atype-askey]",
        reduce_atype,
        20,
        1e-8,
        "the A-type sum at n = m = 1, a_1 = 1, b_1 = q^beta is Askey's I(xi)",
        "as askey-I with \
min(alpha, 1 - alpha - beta) ln(1/q) >= 0.2"
    ),
    part!(
        21,
        "reductions",
        "reduction[mg-askey]",
        reduce_mg,
        20,
        1e-8,
        "the Milne-Gustafson product at n = 1, a_1 = 1, b_1 = q^beta is Askey's product",
        ASKEY_REGION
    ),
    part!(
        22,
        "reductions",
        "reduction[bctype-bc1]",
        reduce_bctype,
        20,
        1e-8,
        "the BC-type sum at n = 1, s = 1 is J(xi)",
        BC1_REGION
    ),
    part!(
        23,
        "reductions",
        "reduction[vwp6-jackson]",
        reduce_vwp6,
        20,
        1e-8,
        "the prefactor times J(xi) is the very-well-poised 6psi6 sum at (xi^2, a_1 xi, .., a_4 xi)",
        "as bc1-J with |1 - xi^2| >= 0.01 and every 6psi6 factor >= 0.01"
    ),
    part!(
        24,
        "classical",
        "selberg[n=1]",
        selberg_beta,
        100,
        1e-12,
        "the Selberg product at n = 1 is the Euler beta integral",
        "alpha, beta in [0.2, 5]; tau in [0.1, 2]"
    ),
    part!(
        25,
        "classical",
        "selberg[n=2,quadrature]",
        selberg_quad,
        5,
        1e-6,
        "the Selberg product at n = 2 matches double-exponential quadrature",
        "alpha, beta in [0.6, 3]; tau in [0.3, 1.5]"
    ),
    part!(
        26,
        "classical",
        "dixon-anderson[n=2,quadrature]",
        da_quad,
        5,
        1e-6,
        "the Dixon-Anderson product at n = 2 matches double-exponential quadrature",
        "x_0 in [-1, 0]; gaps x_(i+1) - x_i in [0.3, 1.5]; s_i in [0.6, 3]"
    ),
    part!(
        27,
        "classical",
        "selberg[n=2,unit]",
        selberg_sixth,
        1,
        1e-12,
        "the Selberg integral at n = 2, alpha = beta = tau = 1 is 1/6",
        "fixed"
    ),
    part!(
        28,
        "classical",
        "q-beta-limit",
        q_beta_limit,
        3,
        1e-2,
        "the q-beta integral approaches the Euler beta integral monotonically as q = 0.9, 0.99, 0.999",
        "(alpha, beta) in {(1, 2), (1.5, 0.7), (2, 2)}"
    ),
    part!(
        29,
        "asymptotics",
        "askey-leading[N=40]",
        askey_leading,
        10,
        1e-8,
        "I(alpha + N; 1) approaches its nu = 0 term (1 - q)(q)_inf / (q^beta)_inf",
        "(beta, q) = (1.3, 0.5); alpha in [0.2, 1.5]; N = 40"
    ),
    part!(
        30,
        "asymptotics",
        "bc1-limit[N=10]",
        bc1_limit,
        10,
        1e-6,
        "J(a_1) approaches its nu = 0 term under a_1 -> a_1 q^(2N), a_(2,3,4) -> a_(2,3,4) q^(-N)",
        "q in [0.1, 0.25]; real a_i in [0.5, 3.5] with sum alpha <= 0 before the limit; N = 10"
    ),
];
