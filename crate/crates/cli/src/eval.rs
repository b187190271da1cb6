//! `qpsi eval <target>`.

use clap::{Args, ValueEnum};
use qpsi_core::classical::{self, DAParams, QuadKind, SelbergParams};
use qpsi_core::jackson1d::{self as j, AskeyParams, BC1Params};
use qpsi_core::multidim::{self as md, ATypeParams, BCTypeParams};
use qpsi_core::qcore;
use qpsi_core::series::{self, PsiParams, VWP6Params};
use qpsi_core::{Complex64, QBase, SeriesValue, SumPolicy};
use serde_json::{json, Map, Value};

use crate::parse::complex;
use crate::{Failure, PolicyArgs};

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    #[value(name = "qpoch_inf")]
    QpochInf,
    #[value(name = "qpoch_fin")]
    QpochFin,
    #[value(name = "qpoch_multi")]
    QpochMulti,
    #[value(name = "theta")]
    Theta,
    #[value(name = "log_gamma")]
    LogGamma,
    #[value(name = "converges")]
    Converges,
    #[value(name = "rpsir_term")]
    RpsirTerm,
    #[value(name = "sum_rpsir")]
    SumRpsir,
    #[value(name = "product_1psi1")]
    Product1psi1,
    #[value(name = "vwp6_lhs")]
    Vwp6Lhs,
    #[value(name = "vwp6_rhs")]
    Vwp6Rhs,
    #[value(name = "askey_I_sum", alias = "askey_i_sum")]
    AskeyISum,
    #[value(name = "askey_I_product", alias = "askey_i_product")]
    AskeyIProduct,
    #[value(name = "askey_connection_coefficient")]
    AskeyConnection,
    #[value(name = "q_beta")]
    QBeta,
    #[value(name = "askey_leading_term")]
    AskeyLeadingTerm,
    #[value(name = "recurrence_residual_I", alias = "recurrence_residual_i")]
    RecurrenceResidual,
    #[value(name = "nabla_residual")]
    NablaResidual,
    #[value(name = "bc1_J_sum", alias = "bc1_j_sum")]
    Bc1JSum,
    #[value(name = "bc1_J_product", alias = "bc1_j_product")]
    Bc1JProduct,
    #[value(name = "bc1_leading_term")]
    Bc1LeadingTerm,
    #[value(name = "bc1_shift_residual")]
    Bc1ShiftResidual,
    #[value(name = "j6phi5_product")]
    J6phi5Product,
    #[value(name = "vwp6_via_jackson")]
    Vwp6ViaJackson,
    #[value(name = "atype_summand")]
    AtypeSummand,
    #[value(name = "atype_sum")]
    AtypeSum,
    #[value(name = "aomoto_product")]
    AomotoProduct,
    #[value(name = "mg_product")]
    MgProduct,
    #[value(name = "atype_alternating_sum")]
    AtypeAlternatingSum,
    #[value(name = "selberg_spec_xi")]
    SelbergSpecXi,
    #[value(name = "atype_m2_xi_family")]
    AtypeM2XiFamily,
    #[value(name = "bctype_summand")]
    BctypeSummand,
    #[value(name = "bctype_sum")]
    BctypeSum,
    #[value(name = "beta_integral")]
    BetaIntegral,
    #[value(name = "selberg_product")]
    SelbergProduct,
    #[value(name = "da_product")]
    DaProduct,
    #[value(name = "quad_selberg")]
    QuadSelberg,
    #[value(name = "quad_dixon_anderson")]
    QuadDixonAnderson,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phi {
    #[value(name = "1")]
    One,
    #[value(name = "z")]
    Z,
    #[value(name = "1-z")]
    OneMinusZ,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EvalFormat {
    #[default]
    Text,
    Json,
}

/// Complex arguments accept `1.5`, `0.8+0.5i` or `0.5i`.
#[derive(Args, Debug)]
pub struct EvalArgs {
    /// Operation to evaluate.
    #[arg(value_enum)]
    target: Target,
    /// Base, 0 < q < 1.
    #[arg(long)]
    q: Option<f64>,
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    alpha: Option<Complex64>,
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    beta: Option<Complex64>,
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    tau: Option<Complex64>,
    /// Numerator parameters (repeatable).
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    a: Vec<Complex64>,
    /// Denominator parameters (repeatable).
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    b: Vec<Complex64>,
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    c: Option<Complex64>,
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    d: Option<Complex64>,
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    e: Option<Complex64>,
    /// Series argument, or the points x_0 < .. < x_n (repeatable).
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    x: Vec<Complex64>,
    /// Lattice base point(s) (repeatable).
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    xi: Vec<Complex64>,
    /// Evaluation point(s) (repeatable).
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    z: Vec<Complex64>,
    /// Pochhammer argument(s) (repeatable).
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    u: Vec<Complex64>,
    /// Pochhammer length or series index.
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<i64>,
    /// Dimension.
    #[arg(long)]
    n: Option<usize>,
    /// Number of (a, b) pairs; checked against the --a count.
    #[arg(long)]
    m: Option<usize>,
    /// Dixon-Anderson exponents s_0..s_n (repeatable).
    #[arg(long, allow_hyphen_values = true)]
    s: Vec<f64>,
    /// Shift index (1-based) or block size.
    #[arg(long)]
    i: Option<usize>,
    /// Test function for nabla_residual.
    #[arg(long, value_enum)]
    phi: Option<Phi>,
    /// Truncation tolerance; same as --rel-tol.
    #[arg(long)]
    tol: Option<f64>,
    /// Significant digits to print (binary64 caps this at 17).
    #[arg(long)]
    digits: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    format: EvalFormat,
    #[command(flatten)]
    policy: PolicyArgs,
}

enum Output {
    Complex(Complex64),
    Real(f64),
    Series(SeriesValue),
    Convergence(series::ConvergenceReport),
    List(Vec<Complex64>),
}

impl From<Complex64> for Output {
    fn from(z: Complex64) -> Self {
        Output::Complex(z)
    }
}

impl From<f64> for Output {
    fn from(x: f64) -> Self {
        Output::Real(x)
    }
}

impl From<SeriesValue> for Output {
    fn from(s: SeriesValue) -> Self {
        Output::Series(s)
    }
}

fn missing(t: Target, flag: &str) -> Failure {
    Failure::Usage(format!("{} needs --{flag}", name(t)))
}

fn name(t: Target) -> String {
    t.to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default()
}

impl EvalArgs {
    fn need<T: Copy>(&self, v: Option<T>, flag: &str) -> Result<T, Failure> {
        v.ok_or_else(|| missing(self.target, flag))
    }

    fn q(&self) -> Result<QBase, Failure> {
        Ok(QBase::new(self.need(self.q, "q")?)?)
    }

    fn one(&self, v: &[Complex64], flag: &str) -> Result<Complex64, Failure> {
        match v {
            [] => Err(missing(self.target, flag)),
            [z] => Ok(*z),
            _ => Err(Failure::Usage(format!("{} takes a single --{flag}", name(self.target)))),
        }
    }

    fn list(&self, v: &[Complex64], flag: &str, len: Option<usize>) -> Result<Vec<Complex64>, Failure> {
        if v.is_empty() {
            return Err(missing(self.target, flag));
        }
        match len {
            Some(k) if v.len() != k => Err(Failure::Usage(format!(
                "{} takes {k} --{flag} values, got {}",
                name(self.target),
                v.len()
            ))),
            _ => Ok(v.to_vec()),
        }
    }

    fn real(&self, z: Option<Complex64>, flag: &str) -> Result<f64, Failure> {
        let z = self.need(z, flag)?;
        if z.im != 0.0 {
            return Err(Failure::Usage(format!("{} needs a real --{flag}", name(self.target))));
        }
        Ok(z.re)
    }

    fn reals(&self, v: &[Complex64], flag: &str) -> Result<Vec<f64>, Failure> {
        if v.is_empty() {
            return Err(missing(self.target, flag));
        }
        if v.iter().any(|z| z.im != 0.0) {
            return Err(Failure::Usage(format!(
                "{} needs real --{flag} values",
                name(self.target)
            )));
        }
        Ok(v.iter().map(|z| z.re).collect())
    }

    fn psi(&self) -> Result<PsiParams, Failure> {
        let a = self.list(&self.a, "a", None)?;
        let b = self.list(&self.b, "b", Some(a.len()))?;
        Ok(PsiParams::new(a, b, self.one(&self.x, "x")?, self.q()?)?)
    }

    fn vwp6(&self) -> Result<VWP6Params, Failure> {
        Ok(VWP6Params {
            a: self.one(&self.a, "a")?,
            b: self.one(&self.b, "b")?,
            c: self.need(self.c, "c")?,
            d: self.need(self.d, "d")?,
            e: self.need(self.e, "e")?,
            q: self.q()?,
        })
    }

    fn askey(&self) -> Result<AskeyParams, Failure> {
        Ok(AskeyParams {
            alpha: self.need(self.alpha, "alpha")?,
            beta: self.need(self.beta, "beta")?,
            xi: self.one(&self.xi, "xi")?,
            q: self.q()?,
        })
    }

    fn four_a(&self) -> Result<[Complex64; 4], Failure> {
        let a = self.list(&self.a, "a", Some(4))?;
        Ok([a[0], a[1], a[2], a[3]])
    }

    fn bc1(&self) -> Result<BC1Params, Failure> {
        Ok(BC1Params {
            a: self.four_a()?,
            xi: self.one(&self.xi, "xi")?,
            q: self.q()?,
        })
    }

    fn atype_with(&self, xi: Vec<Complex64>) -> Result<ATypeParams, Failure> {
        let a = self.list(&self.a, "a", self.m)?;
        let b = self.list(&self.b, "b", Some(a.len()))?;
        let p = ATypeParams::new(
            self.need(self.alpha, "alpha")?,
            self.need(self.tau, "tau")?,
            a,
            b,
            xi,
            self.q()?,
        )?;
        Ok(p)
    }

    fn atype(&self) -> Result<ATypeParams, Failure> {
        self.atype_with(self.list(&self.xi, "xi", self.n)?)
    }

    fn bctype(&self) -> Result<BCTypeParams, Failure> {
        let a = self.list(&self.a, "a", None)?;
        let xi = self.list(&self.xi, "xi", self.n)?;
        Ok(BCTypeParams::from_a(&a, self.need(self.tau, "tau")?, xi, self.q()?)?)
    }

    fn selberg(&self) -> Result<SelbergParams, Failure> {
        Ok(SelbergParams {
            n: self.need(self.n, "n")?,
            alpha: self.real(self.alpha, "alpha")?,
            beta: self.real(self.beta, "beta")?,
            tau: self.real(self.tau, "tau")?,
        })
    }

    fn da(&self) -> Result<DAParams, Failure> {
        if self.s.is_empty() {
            return Err(missing(self.target, "s"));
        }
        Ok(DAParams {
            x: self.reals(&self.x, "x")?,
            s: self.s.clone(),
        })
    }
}

fn evaluate(args: &EvalArgs, policy: &SumPolicy) -> Result<Output, Failure> {
    use Target::*;
    let pol = policy;
    let out: Output = match args.target {
        QpochInf => qcore::qpoch_inf(args.one(&args.u, "u")?, args.q()?, pol).into(),
        QpochFin => {
            let nu = args.need(args.nu, "nu")?;
            qcore::qpoch_fin(args.one(&args.u, "u")?, args.q()?, nu, pol)?.into()
        }
        QpochMulti => {
            let nu = args.need(args.nu, "nu")?;
            qcore::qpoch_multi(&args.list(&args.u, "u", None)?, args.q()?, nu, pol)?.into()
        }
        Theta => qcore::theta(args.one(&args.z, "z")?, args.q()?, pol)?.into(),
        LogGamma => {
            let x = args.reals(&args.x, "x")?;
            if x.len() != 1 {
                return Err(Failure::Usage("log_gamma takes a single --x".into()));
            }
            qcore::log_gamma_real(x[0])?.into()
        }
        Converges => Output::Convergence(series::converges(&args.psi()?)),
        RpsirTerm => {
            let nu = args.need(args.nu, "nu")?;
            series::rpsir_term(&args.psi()?, nu, pol)?.into()
        }
        SumRpsir => series::sum_rpsir(&args.psi()?, pol)?.into(),
        Product1psi1 => {
            let (a, b, x) = (
                args.one(&args.a, "a")?,
                args.one(&args.b, "b")?,
                args.one(&args.x, "x")?,
            );
            series::product_1psi1(a, b, x, args.q()?, pol)?.into()
        }
        Vwp6Lhs => series::vwp6_lhs(&args.vwp6()?, pol)?.into(),
        Vwp6Rhs => series::vwp6_rhs(&args.vwp6()?, pol)?.into(),
        AskeyISum => j::askey_i_sum(&args.askey()?, pol)?.into(),
        AskeyIProduct => j::askey_i_product(&args.askey()?, pol)?.into(),
        AskeyConnection => j::askey_connection_coefficient(&args.askey()?, pol)?.into(),
        QBeta => {
            let (al, be) = (args.need(args.alpha, "alpha")?, args.need(args.beta, "beta")?);
            j::q_beta(al, be, args.q()?, pol)?.into()
        }
        AskeyLeadingTerm => j::askey_leading_term(args.need(args.beta, "beta")?, args.q()?, pol)?.into(),
        RecurrenceResidual => j::recurrence_residual_i(&args.askey()?, pol)?.into(),
        NablaResidual => {
            let p = args.askey()?;
            let r = match args.need(args.phi, "phi")? {
                Phi::One => j::nabla_residual(&p, |_| Complex64::new(1.0, 0.0), pol),
                Phi::Z => j::nabla_residual(&p, |z| z, pol),
                Phi::OneMinusZ => j::nabla_residual(&p, |z| 1.0 - z, pol),
            };
            r?.into()
        }
        Bc1JSum => j::bc1_j_sum(&args.bc1()?, pol)?.into(),
        Bc1JProduct => j::bc1_j_product(&args.bc1()?, pol)?.into(),
        Bc1LeadingTerm => j::bc1_leading_term(&args.bc1()?, pol)?.into(),
        Bc1ShiftResidual => j::bc1_shift_residual(&args.bc1()?, args.need(args.i, "i")?, pol)?.into(),
        J6phi5Product => j::j6phi5_product(&args.four_a()?, args.q()?, pol)?.into(),
        Vwp6ViaJackson => j::vwp6_via_jackson(&args.bc1()?, pol)?.into(),
        AtypeSummand => {
            let p = args.atype()?;
            md::atype_summand(&p, &args.list(&args.z, "z", Some(p.n))?, pol)?.into()
        }
        AtypeSum => md::atype_sum(&args.atype()?, pol)?.into(),
        AomotoProduct => md::aomoto_product(&args.atype()?, pol)?.into(),
        MgProduct => md::mg_product(&args.atype()?, pol)?.into(),
        AtypeAlternatingSum => {
            let x = args.list(&args.x, "x", None)?;
            // the base point is replaced by each n-subset of x
            let p = args.atype_with(x[..x.len().saturating_sub(1).max(1)].to_vec())?;
            md::atype_alternating_sum(&p, &x, pol)?.into()
        }
        SelbergSpecXi => Output::List(md::selberg_spec_xi(
            args.need(args.n, "n")?,
            args.need(args.tau, "tau")?,
            args.q()?,
        )),
        AtypeM2XiFamily => {
            let x = args.list(&args.x, "x", Some(2))?;
            let (n, i, tau) = (
                args.need(args.n, "n")?,
                args.need(args.i, "i")?,
                args.need(args.tau, "tau")?,
            );
            Output::List(md::atype_m2_xi_family(n, i, tau, x[0], x[1], args.q()?)?)
        }
        BctypeSummand => {
            let p = args.bctype()?;
            md::bctype_summand(&p, &args.list(&args.z, "z", Some(p.n))?, pol)?.into()
        }
        BctypeSum => md::bctype_sum(&args.bctype()?, pol)?.into(),
        BetaIntegral => {
            classical::beta_integral(args.real(args.alpha, "alpha")?, args.real(args.beta, "beta")?)?.into()
        }
        SelbergProduct => classical::selberg_product(&args.selberg()?)?.into(),
        DaProduct => classical::da_product(&args.da()?)?.into(),
        QuadSelberg => classical::quad_oracle(&QuadKind::Selberg(args.selberg()?), quad_tol(args))?.into(),
        QuadDixonAnderson => classical::quad_oracle(&QuadKind::DixonAnderson(args.da()?), quad_tol(args))?.into(),
    };
    Ok(out)
}

/// The quadrature oracle has no use for a 1e-12 truncation tolerance.
fn quad_tol(args: &EvalArgs) -> f64 {
    args.tol.or(args.policy.rel_tol).unwrap_or(1e-8)
}

fn fmt_real(x: f64, digits: Option<usize>) -> String {
    match digits {
        Some(d) => format!("{x:.*e}", d.clamp(1, 17) - 1),
        None if x == 0.0 || !x.is_finite() || (1e-4..1e15).contains(&x.abs()) => format!("{x}"),
        None => format!("{x:e}"),
    }
}

fn fmt_complex(z: Complex64, digits: Option<usize>) -> String {
    if z.im == 0.0 {
        return fmt_real(z.re, digits);
    }
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{sign}{}i", fmt_real(z.re, digits), fmt_real(z.im.abs(), digits))
}

fn text(out: &Output, digits: Option<usize>) -> String {
    match out {
        Output::Complex(z) => fmt_complex(*z, digits),
        Output::Real(x) => fmt_real(*x, digits),
        Output::Series(s) => {
            let window: Vec<String> = s
                .truncation_window
                .iter()
                .map(|(lo, hi)| format!("[{lo}, {hi}]"))
                .collect();
            format!(
                "{}\nerr_estimate {}\nterms {}\nconverged {}\nwindow {}",
                fmt_complex(s.value, digits),
                fmt_real(s.err_estimate, Some(3)),
                s.terms_used,
                s.converged,
                window.join(" ")
            )
        }
        Output::Convergence(r) => format!(
            "{}\nlower_margin {}\nupper_margin {}",
            r.converges,
            fmt_real(r.lower_margin, digits),
            fmt_real(r.upper_margin, digits)
        ),
        Output::List(v) => v.iter().map(|z| fmt_complex(*z, digits)).collect::<Vec<_>>().join("\n"),
    }
}

fn json_complex(m: &mut Map<String, Value>, key: &str, z: Complex64) {
    m.insert(format!("{key}_re"), json!(z.re));
    m.insert(format!("{key}_im"), json!(z.im));
}

fn to_json(target: Target, out: &Output) -> Value {
    let mut m = Map::new();
    m.insert("target".into(), json!(name(target)));
    match out {
        Output::Complex(z) => json_complex(&mut m, "value", *z),
        Output::Real(x) => {
            m.insert("value".into(), json!(x));
        }
        Output::Series(s) => {
            json_complex(&mut m, "value", s.value);
            m.insert("err_estimate".into(), json!(s.err_estimate));
            m.insert("terms".into(), json!(s.terms_used));
            m.insert("converged".into(), json!(s.converged));
            m.insert("truncation_window".into(), json!(s.truncation_window));
        }
        Output::Convergence(r) => {
            m.insert("converges".into(), json!(r.converges));
            m.insert("lower_margin".into(), json!(r.lower_margin));
            m.insert("upper_margin".into(), json!(r.upper_margin));
        }
        Output::List(v) => {
            let items: Vec<Value> = v.iter().map(|z| json!({"re": z.re, "im": z.im})).collect();
            m.insert("values".into(), Value::Array(items));
        }
    }
    Value::Object(m)
}

pub fn run(args: &EvalArgs) -> Result<(), Failure> {
    let policy = args.policy.build(args.tol)?;
    let out = evaluate(args, &policy)?;
    let line = match args.format {
        EvalFormat::Text => text(&out, args.digits),
        EvalFormat::Json => to_json(args.target, &out).to_string(),
    };
    crate::emit(&line)
}
