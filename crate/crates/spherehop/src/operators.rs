//! The half-step operators I^λ_±, D^λ_±, their combinations 𝓘^λ_± and
//! 𝓓^λ_±, and the classical two-step antiderivative/derivative pair.
//!
//! Every operator exists in two equivalent implementations that the test
//! suite plays against each other: singular quadrature acting on zonal
//! functions, and exact multiplier maps acting on Gegenbauer expansions.
//! 𝓘 operators consume a series at parameter λ+1/2 and emit one at λ
//! (one dimension down); 𝓓 operators consume λ and emit λ+1/2 (one up).

use crate::error::{Error, Result};
use crate::gegenbauer::{self, GegenbauerSeries, Side};
use crate::quadrature::{self, FractionalRule, FRACTIONAL_ORDER};
use crate::special;
use crate::zonal::ZonalFunction;

/// Finite-difference step for the fallback outer derivative in the
/// quadrature D path.
const FD_STEP: f64 = 1e-5;

/// Which operator a chain entry applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    IPlus,
    IMinus,
    DPlus,
    DMinus,
    CIPlus,
    CIMinus,
    CDPlus,
    CDMinus,
    TwoStepI,
    TwoStepD,
}

impl OperatorKind {
    /// Basis parameter a spectral input series must carry for an
    /// operator at parameter λ.
    pub fn input_lambda(&self, lambda: f64) -> f64 {
        match self {
            OperatorKind::IPlus
            | OperatorKind::IMinus
            | OperatorKind::CIPlus
            | OperatorKind::CIMinus => lambda + 0.5,
            _ => lambda,
        }
    }

    /// Basis parameter of the spectral output.
    pub fn output_lambda(&self, lambda: f64) -> f64 {
        match self {
            OperatorKind::IPlus
            | OperatorKind::IMinus
            | OperatorKind::CIPlus
            | OperatorKind::CIMinus => lambda,
            OperatorKind::DPlus
            | OperatorKind::DMinus
            | OperatorKind::CDPlus
            | OperatorKind::CDMinus => lambda + 0.5,
            OperatorKind::TwoStepI => lambda - 1.0,
            OperatorKind::TwoStepD => lambda + 1.0,
        }
    }
}

impl std::fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            OperatorKind::IPlus => "Iplus",
            OperatorKind::IMinus => "Iminus",
            OperatorKind::DPlus => "Dplus",
            OperatorKind::DMinus => "Dminus",
            OperatorKind::CIPlus => "CIplus",
            OperatorKind::CIMinus => "CIminus",
            OperatorKind::CDPlus => "CDplus",
            OperatorKind::CDMinus => "CDminus",
            OperatorKind::TwoStepI => "I2",
            OperatorKind::TwoStepD => "D2",
        };
        f.write_str(s)
    }
}

/// Evaluation route for one chain entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EvalMode {
    #[default]
    Spectral,
    Quadrature,
}

/// One operator application: which operator, at which λ, by which route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorSpec {
    pub kind: OperatorKind,
    pub lambda: f64,
    pub mode: EvalMode,
}

impl OperatorSpec {
    pub fn spectral(kind: OperatorKind, lambda: f64) -> Self {
        OperatorSpec {
            kind,
            lambda,
            mode: EvalMode::Spectral,
        }
    }

    pub fn quadrature(kind: OperatorKind, lambda: f64) -> Self {
        OperatorSpec {
            kind,
            lambda,
            mode: EvalMode::Quadrature,
        }
    }
}

/// Input (and output) of an operator chain.
#[derive(Debug, Clone)]
pub enum OperatorInput {
    Series(GegenbauerSeries),
    Function(ZonalFunction),
}

/// √π Γ(λ)/Γ(λ+1/2): the constant in the 𝓘-action theorem.
pub fn ci_constant(lambda: f64) -> Result<f64> {
    Ok(
        (0.5 * std::f64::consts::PI.ln() + special::ln_gamma(lambda)?
            - special::ln_gamma(lambda + 0.5)?)
        .exp(),
    )
}

/// √π Γ(λ+1/2)/Γ(λ): the constant in the 𝓓-multiplier theorem.
pub fn cd_constant(lambda: f64) -> Result<f64> {
    Ok(
        (0.5 * std::f64::consts::PI.ln() + special::ln_gamma(lambda + 0.5)?
            - special::ln_gamma(lambda)?)
        .exp(),
    )
}

/// Multiplier carrying the degree-n input coefficient of 𝓘^λ_±:
/// plus keeps the degree, minus shifts it to n+1.
///
/// λ > 0 uses √π Γ(λ)/Γ(λ+1/2) · (n+2λ)/(n+λ+1/2) (plus) and
/// (n+1)/(n+λ+1/2) (minus); λ = 0 is the Chebyshev limit 2/(n+1/2)
/// for both sides.
pub fn ci_multiplier(side: Side, lambda: f64, n: usize) -> Result<f64> {
    if lambda < 0.0 {
        return Err(Error::Domain(format!(
            "ci_multiplier requires lambda >= 0, got {lambda}"
        )));
    }
    let nf = n as f64;
    if lambda == 0.0 {
        return Ok(2.0 / (nf + 0.5));
    }
    let k = ci_constant(lambda)?;
    Ok(match side {
        Side::Plus => k * (nf + 2.0 * lambda) / (nf + lambda + 0.5),
        Side::Minus => k * (nf + 1.0) / (nf + lambda + 0.5),
    })
}

/// Multiplier carrying the degree-n input coefficient of 𝓓^λ_±:
/// plus shifts the degree to n−1, minus keeps it (and annihilates n = 0).
///
/// λ > 0 uses √π Γ(λ+1/2)/Γ(λ) · 2(n+2λ)/(n+λ) (plus) and 2n/(n+λ)
/// (minus); λ = 0 is the Chebyshev-to-Legendre limit nπ for both sides.
pub fn cd_multiplier(side: Side, lambda: f64, n: usize) -> Result<f64> {
    if lambda < 0.0 {
        return Err(Error::Domain(format!(
            "cd_multiplier requires lambda >= 0, got {lambda}"
        )));
    }
    let nf = n as f64;
    if lambda == 0.0 {
        return Ok(nf * std::f64::consts::PI);
    }
    let m = cd_constant(lambda)?;
    Ok(match side {
        Side::Plus => m * 2.0 * (nf + 2.0 * lambda) / (nf + lambda),
        Side::Minus => m * 2.0 * nf / (nf + lambda),
    })
}

fn expect_basis(s: &GegenbauerSeries, lambda: f64) -> Result<()> {
    if !s.basis_matches(lambda) {
        return Err(Error::BasisMismatch {
            expected: lambda,
            found: s.lambda(),
        });
    }
    Ok(())
}

/// Spectral 𝓘^λ_±: consumes a series at λ+1/2, emits one at λ.
pub fn apply_ci_spectral(
    side: Side,
    lambda: f64,
    s: &GegenbauerSeries,
) -> Result<GegenbauerSeries> {
    if lambda < 0.0 {
        return Err(Error::Domain(format!(
            "apply_ci_spectral requires lambda >= 0, got {lambda}"
        )));
    }
    expect_basis(s, lambda + 0.5)?;
    let a = s.coefficients();
    let out = match side {
        Side::Plus => a
            .iter()
            .enumerate()
            .map(|(n, &c)| Ok(ci_multiplier(Side::Plus, lambda, n)? * c))
            .collect::<Result<Vec<f64>>>()?,
        Side::Minus => {
            let mut out = vec![0.0; a.len() + 1];
            for (n, &c) in a.iter().enumerate() {
                out[n + 1] = ci_multiplier(Side::Minus, lambda, n)? * c;
            }
            out
        }
    };
    GegenbauerSeries::new(lambda, out)
}

/// Spectral 𝓓^λ_±: consumes a series at λ, emits one at λ+1/2.
pub fn apply_cd_spectral(
    side: Side,
    lambda: f64,
    s: &GegenbauerSeries,
) -> Result<GegenbauerSeries> {
    if lambda < 0.0 {
        return Err(Error::Domain(format!(
            "apply_cd_spectral requires lambda >= 0, got {lambda}"
        )));
    }
    expect_basis(s, lambda)?;
    let a = s.coefficients();
    let out = match side {
        Side::Plus => {
            if a.len() == 1 {
                vec![0.0]
            } else {
                (1..a.len())
                    .map(|n| Ok(cd_multiplier(Side::Plus, lambda, n)? * a[n]))
                    .collect::<Result<Vec<f64>>>()?
            }
        }
        Side::Minus => a
            .iter()
            .enumerate()
            .map(|(n, &c)| Ok(cd_multiplier(Side::Minus, lambda, n)? * c))
            .collect::<Result<Vec<f64>>>()?,
    };
    GegenbauerSeries::new(lambda + 0.5, out)
}

fn linear_combination(
    lambda: f64,
    s1: &GegenbauerSeries,
    c1: f64,
    s2: &GegenbauerSeries,
    c2: f64,
) -> Result<GegenbauerSeries> {
    let len = s1.coefficients().len().max(s2.coefficients().len());
    let mut out = vec![0.0; len];
    for (n, v) in out.iter_mut().enumerate() {
        let a = s1.coefficients().get(n).copied().unwrap_or(0.0);
        let b = s2.coefficients().get(n).copied().unwrap_or(0.0);
        *v = c1 * a + c2 * b;
    }
    GegenbauerSeries::new(lambda, out)
}

/// Spectral single-sided I^λ_± = (𝓘^λ_+ ± 𝓘^λ_−)/2 on a series at λ+1/2.
pub fn apply_i_spectral(side: Side, lambda: f64, s: &GegenbauerSeries) -> Result<GegenbauerSeries> {
    let plus = apply_ci_spectral(Side::Plus, lambda, s)?;
    let minus = apply_ci_spectral(Side::Minus, lambda, s)?;
    let sign = if side == Side::Plus { 0.5 } else { -0.5 };
    linear_combination(lambda, &plus, 0.5, &minus, sign)
}

/// Spectral single-sided D^λ_± = (𝓓^λ_+ ± 𝓓^λ_−)/2 on a series at λ.
pub fn apply_d_spectral(side: Side, lambda: f64, s: &GegenbauerSeries) -> Result<GegenbauerSeries> {
    let plus = apply_cd_spectral(Side::Plus, lambda, s)?;
    let minus = apply_cd_spectral(Side::Minus, lambda, s)?;
    let sign = if side == Side::Plus { 0.5 } else { -0.5 };
    linear_combination(lambda + 0.5, &plus, 0.5, &minus, sign)
}

/// Quadrature I^λ_±: wraps f into the evaluable image x ↦ I^λ_± f(x).
/// The rule behind the singular weight is built once and shared by all
/// evaluations of the image.
pub fn apply_i_quadrature(side: Side, lambda: f64, f: &ZonalFunction) -> Result<ZonalFunction> {
    if !(lambda > -0.5) {
        return Err(Error::Domain(format!(
            "apply_i_quadrature requires lambda > -1/2, got {lambda}"
        )));
    }
    let rule = FractionalRule::new(lambda, FRACTIONAL_ORDER)?;
    let f = f.clone();
    Ok(ZonalFunction::from_fn(move |x| {
        quadrature::halfweight_with_rule(&rule, &f, x, side)
    }))
}

/// Quadrature 𝓘^λ_± = I^λ_+ ± I^λ_−.
pub fn apply_ci_quadrature(side: Side, lambda: f64, f: &ZonalFunction) -> Result<ZonalFunction> {
    let plus = apply_i_quadrature(Side::Plus, lambda, f)?;
    let minus = apply_i_quadrature(Side::Minus, lambda, f)?;
    let sign = if side == Side::Plus { 1.0 } else { -1.0 };
    Ok(ZonalFunction::from_fn(move |x| {
        plus.eval(x) + sign * minus.eval(x)
    }))
}

/// Smooth inner profile of the D operators after the change of variables
/// τ = (x+1)s − 1 (plus) or τ = 1 − (1−x)s (minus): the weighted mean of
/// f over the rule, as a function of x. D^λ_± f = (1±x) d/dx of this.
fn d_inner_profile(rule: &FractionalRule, f: &ZonalFunction, side: Side, x: f64) -> f64 {
    match side {
        Side::Plus => rule.integrate(|s| f.eval((x + 1.0) * s - 1.0)),
        Side::Minus => rule.integrate(|s| f.eval(1.0 - (1.0 - x) * s)),
    }
}

fn d_inner_derivative(rule: &FractionalRule, f: &ZonalFunction, side: Side, x: f64) -> f64 {
    if f.has_derivative() {
        // differentiation under the integral sign; the substituted
        // integrand is smooth in x for absolutely continuous f
        match side {
            Side::Plus => rule.integrate(|s| {
                s * f
                    .derivative((x + 1.0) * s - 1.0)
                    .expect("derivative checked")
            }),
            Side::Minus => rule.integrate(|s| {
                s * f
                    .derivative(1.0 - (1.0 - x) * s)
                    .expect("derivative checked")
            }),
        }
    } else {
        // second-order finite differences, one-sided at the endpoints
        let h = FD_STEP;
        let g = |t: f64| d_inner_profile(rule, f, side, t);
        if x + h > 1.0 {
            (3.0 * g(x) - 4.0 * g(x - h) + g(x - 2.0 * h)) / (2.0 * h)
        } else if x - h < -1.0 {
            (-3.0 * g(x) + 4.0 * g(x + h) - g(x + 2.0 * h)) / (2.0 * h)
        } else {
            (g(x + h) - g(x - h)) / (2.0 * h)
        }
    }
}

/// Quadrature D^λ_±: the outer derivative is taken analytically when f
/// carries a derivative (termwise for series and models), otherwise by
/// central finite differences on the smooth inner profile.
pub fn apply_d_quadrature(side: Side, lambda: f64, f: &ZonalFunction) -> Result<ZonalFunction> {
    if lambda < 0.0 {
        return Err(Error::Domain(format!(
            "apply_d_quadrature requires lambda >= 0, got {lambda}"
        )));
    }
    let rule = FractionalRule::new(lambda - 0.5, FRACTIONAL_ORDER)?;
    let f = f.clone();
    Ok(ZonalFunction::from_fn(move |x| {
        let factor = match side {
            Side::Plus => 1.0 + x,
            Side::Minus => 1.0 - x,
        };
        factor * d_inner_derivative(&rule, &f, side, x)
    }))
}

/// Quadrature 𝓓^λ_± = D^λ_+ ± D^λ_−.
pub fn apply_cd_quadrature(side: Side, lambda: f64, f: &ZonalFunction) -> Result<ZonalFunction> {
    let plus = apply_d_quadrature(Side::Plus, lambda, f)?;
    let minus = apply_d_quadrature(Side::Minus, lambda, f)?;
    let sign = if side == Side::Plus { 1.0 } else { -1.0 };
    Ok(ZonalFunction::from_fn(move |x| {
        plus.eval(x) + sign * minus.eval(x)
    }))
}

/// Two-step derivative 𝐃 f = f′, mapping a series at λ to one at λ+1
/// through d/dx C_n^λ = 2λ C_{n−1}^{λ+1}.
pub fn two_step_derivative(s: &GegenbauerSeries) -> Result<GegenbauerSeries> {
    if !(s.lambda() > 0.0) {
        return Err(Error::Domain(format!(
            "two_step_derivative requires lambda > 0, got {}",
            s.lambda()
        )));
    }
    s.derivative_series()
}

/// Two-step antiderivative (𝐈 f)(x) = ∫_{−1}^x f, mapping a series at
/// λ ≥ 1 to one at λ−1 by inverting the derivative ladder; the free
/// constant is fixed by (𝐈 f)(−1) = 0.
pub fn two_step_integral(s: &GegenbauerSeries) -> Result<GegenbauerSeries> {
    let lambda = s.lambda();
    if !(lambda >= 1.0) {
        return Err(Error::Domain(format!(
            "two_step_integral requires lambda >= 1, got {lambda}"
        )));
    }
    let target = lambda - 1.0;
    let a = s.coefficients();
    let mut out = vec![0.0; a.len() + 1];
    for (n, &c) in a.iter().enumerate() {
        out[n + 1] = if target == 0.0 {
            // T-basis ladder: d/dx T_{n+1} = (n+1) U_n
            c / (n as f64 + 1.0)
        } else {
            c / (2.0 * target)
        };
    }
    let partial = GegenbauerSeries::new(target, out.clone())?;
    out[0] = -partial.eval(-1.0)?;
    GegenbauerSeries::new(target, out)
}

fn apply_spectral_step(spec: &OperatorSpec, s: &GegenbauerSeries) -> Result<GegenbauerSeries> {
    match spec.kind {
        OperatorKind::IPlus => apply_i_spectral(Side::Plus, spec.lambda, s),
        OperatorKind::IMinus => apply_i_spectral(Side::Minus, spec.lambda, s),
        OperatorKind::DPlus => apply_d_spectral(Side::Plus, spec.lambda, s),
        OperatorKind::DMinus => apply_d_spectral(Side::Minus, spec.lambda, s),
        OperatorKind::CIPlus => apply_ci_spectral(Side::Plus, spec.lambda, s),
        OperatorKind::CIMinus => apply_ci_spectral(Side::Minus, spec.lambda, s),
        OperatorKind::CDPlus => apply_cd_spectral(Side::Plus, spec.lambda, s),
        OperatorKind::CDMinus => apply_cd_spectral(Side::Minus, spec.lambda, s),
        OperatorKind::TwoStepI => {
            expect_basis(s, spec.lambda)?;
            two_step_integral(s)
        }
        OperatorKind::TwoStepD => {
            expect_basis(s, spec.lambda)?;
            two_step_derivative(s)
        }
    }
}

fn apply_quadrature_step(spec: &OperatorSpec, f: &ZonalFunction) -> Result<ZonalFunction> {
    match spec.kind {
        OperatorKind::IPlus => apply_i_quadrature(Side::Plus, spec.lambda, f),
        OperatorKind::IMinus => apply_i_quadrature(Side::Minus, spec.lambda, f),
        OperatorKind::DPlus => apply_d_quadrature(Side::Plus, spec.lambda, f),
        OperatorKind::DMinus => apply_d_quadrature(Side::Minus, spec.lambda, f),
        OperatorKind::CIPlus => apply_ci_quadrature(Side::Plus, spec.lambda, f),
        OperatorKind::CIMinus => apply_ci_quadrature(Side::Minus, spec.lambda, f),
        OperatorKind::CDPlus => apply_cd_quadrature(Side::Plus, spec.lambda, f),
        OperatorKind::CDMinus => apply_cd_quadrature(Side::Minus, spec.lambda, f),
        OperatorKind::TwoStepI => {
            let rule = quadrature::gauss_legendre(FRACTIONAL_ORDER)?;
            let f2 = f.clone();
            let fd = f.clone();
            Ok(ZonalFunction::from_fn_with_derivative(
                move |x| {
                    let half = 0.5 * (x + 1.0);
                    half * rule.integrate(|v| f2.eval(-1.0 + half * (v + 1.0)))
                },
                move |x| fd.eval(x),
            ))
        }
        OperatorKind::TwoStepD => {
            let f2 = f.clone();
            Ok(ZonalFunction::from_fn(move |x| {
                if let Some(d) = f2.derivative(x) {
                    d
                } else {
                    let h = FD_STEP;
                    if x + h > 1.0 {
                        (3.0 * f2.eval(x) - 4.0 * f2.eval(x - h) + f2.eval(x - 2.0 * h)) / (2.0 * h)
                    } else if x - h < -1.0 {
                        (-3.0 * f2.eval(x) + 4.0 * f2.eval(x + h) - f2.eval(x + 2.0 * h))
                            / (2.0 * h)
                    } else {
                        (f2.eval(x + h) - f2.eval(x - h)) / (2.0 * h)
                    }
                }
            }))
        }
    }
}

/// Left-to-right application of an operator chain. Spectral steps track
/// the λ bookkeeping automatically and fail with the offending link
/// index on any incompatibility; quadrature steps accept any evaluable
/// input (series are wrapped on the fly).
pub fn compose(specs: &[OperatorSpec], input: OperatorInput) -> Result<OperatorInput> {
    let mut state = input;
    for (index, spec) in specs.iter().enumerate() {
        state = match (spec.mode, state) {
            (EvalMode::Spectral, OperatorInput::Series(s)) => {
                let next = apply_spectral_step(spec, &s).map_err(|e| Error::ChainIncompatible {
                    index,
                    reason: e.to_string(),
                })?;
                OperatorInput::Series(next)
            }
            (EvalMode::Spectral, OperatorInput::Function(_)) => {
                return Err(Error::ChainIncompatible {
                    index,
                    reason: format!(
                        "spectral step {} requires a series input, found a plain function",
                        spec.kind
                    ),
                });
            }
            (EvalMode::Quadrature, OperatorInput::Series(s)) => {
                let f = ZonalFunction::from_series(&s);
                let next =
                    apply_quadrature_step(spec, &f).map_err(|e| Error::ChainIncompatible {
                        index,
                        reason: e.to_string(),
                    })?;
                OperatorInput::Function(next)
            }
            (EvalMode::Quadrature, OperatorInput::Function(f)) => {
                let next =
                    apply_quadrature_step(spec, &f).map_err(|e| Error::ChainIncompatible {
                        index,
                        reason: e.to_string(),
                    })?;
                OperatorInput::Function(next)
            }
        };
    }
    Ok(state)
}

fn pochhammer_over_factorial(a: f64, n: usize) -> f64 {
    let mut p = 1.0;
    for k in 0..n {
        p *= (a + k as f64) / (k as f64 + 1.0);
    }
    p
}

/// ₂F₁(−n, n+a+b+1; a+1; (1−x)/2) evaluated as n!/(a+1)_n · P_n^{(a,b)}(x).
///
/// The direct terminating sum cancels catastrophically for large n (its
/// terms reach ~10⁹ while the value stays O(1)); the Jacobi three-term
/// recurrence evaluates the same polynomial stably.
fn terminating_2f1_via_jacobi(n: usize, second_param: f64, c: f64, x: f64) -> f64 {
    let a = c - 1.0;
    let b = second_param - n as f64 - a - 1.0;
    let mut ratio = 1.0;
    for k in 1..=n {
        ratio *= k as f64 / (c + k as f64 - 1.0);
    }
    ratio * gegenbauer::jacobi_value(a, b, n, x)
}

/// Closed form of I^λ_± C_n^{λ+1/2}(x): hypergeometric polynomials
///
///   I^λ_+ : c_{n,λ} (λ+1/2)/(λ+n+1/2) (1+x) ₂F₁(−n, n+2λ+1; λ+1/2; (1−x)/2),
///   I^λ_− : c_{n,λ} (1−x) ₂F₁(−n, n+2λ+1; λ+3/2; (1−x)/2),
///
/// with c_{n,λ} = √π (2λ+1)_n/n! · Γ(λ+1)/Γ(λ+3/2).
pub fn i_action_closed_form(side: Side, lambda: f64, n: usize, x: f64) -> Result<f64> {
    if lambda < 0.0 {
        return Err(Error::Domain(format!(
            "i_action_closed_form requires lambda >= 0, got {lambda}"
        )));
    }
    let c = std::f64::consts::PI.sqrt()
        * pochhammer_over_factorial(2.0 * lambda + 1.0, n)
        * (special::ln_gamma(lambda + 1.0)? - special::ln_gamma(lambda + 1.5)?).exp();
    let nf = n as f64;
    Ok(match side {
        Side::Plus => {
            c * (lambda + 0.5) / (lambda + nf + 0.5)
                * (1.0 + x)
                * terminating_2f1_via_jacobi(n, nf + 2.0 * lambda + 1.0, lambda + 0.5, x)
        }
        Side::Minus => {
            c * (1.0 - x) * terminating_2f1_via_jacobi(n, nf + 2.0 * lambda + 1.0, lambda + 1.5, x)
        }
    })
}

/// Closed form of D^λ_± C_n^λ(x):
///
///   D^λ_+ : c_{n,λ} n(n+2λ)/(n+λ) · (1+x)/2 · ₂F₁(−n+1, n+2λ+1; λ+1; (1−x)/2),
///   D^λ_− : c_{n,λ} n(n+2λ)/(λ+1) · (1−x)/2 · ₂F₁(−n+1, n+2λ+1; λ+2; (1−x)/2),
///
/// with c_{n,λ} = √π (2λ)_n/n! · Γ(λ+1/2)/Γ(λ+1). Degree 0 is
/// annihilated by the n(n+2λ) prefactor.
pub fn d_action_closed_form(side: Side, lambda: f64, n: usize, x: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::Domain(format!(
            "d_action_closed_form requires lambda > 0, got {lambda}"
        )));
    }
    if n == 0 {
        return Ok(0.0);
    }
    let c = std::f64::consts::PI.sqrt()
        * pochhammer_over_factorial(2.0 * lambda, n)
        * (special::ln_gamma(lambda + 0.5)? - special::ln_gamma(lambda + 1.0)?).exp();
    let nf = n as f64;
    Ok(match side {
        Side::Plus => {
            c * nf * (nf + 2.0 * lambda) / (nf + lambda)
                * 0.5
                * (1.0 + x)
                * terminating_2f1_via_jacobi(n - 1, nf + 2.0 * lambda + 1.0, lambda + 1.0, x)
        }
        Side::Minus => {
            c * nf * (nf + 2.0 * lambda) / (lambda + 1.0)
                * 0.5
                * (1.0 - x)
                * terminating_2f1_via_jacobi(n - 1, nf + 2.0 * lambda + 1.0, lambda + 2.0, x)
        }
    })
}

/// Closed form of the Bateman-type fractional integral
/// (1/Γ(λ)) ∫ (1∓t)^λ (±(t−x))^{−1/2} C_n^{λ+1/2}(t) dt over the side's
/// half interval:
///
///   minus: √π/(2Γ(λ+1/2)(n+λ+1/2)) (1−x)^{λ−1/2} [(n+2λ)C_n^λ − (n+1)C_{n+1}^λ],
///   plus:  √π/(2Γ(λ+1/2)(n+λ+1/2)) (1+x)^{λ−1/2} [(n+2λ)C_n^λ + (n+1)C_{n+1}^λ].
pub fn bateman_integral(lambda: f64, n: usize, x: f64, side: Side) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::Domain(format!(
            "bateman_integral requires lambda > 0, got {lambda}"
        )));
    }
    let nf = n as f64;
    let scale =
        std::f64::consts::PI.sqrt() / (2.0 * special::gamma(lambda + 0.5)? * (nf + lambda + 0.5));
    let cn = gegenbauer::gegenbauer_eval(lambda, n, x)?;
    let cn1 = gegenbauer::gegenbauer_eval(lambda, n + 1, x)?;
    Ok(match side {
        Side::Minus => {
            scale * (1.0 - x).powf(lambda - 0.5) * ((nf + 2.0 * lambda) * cn - (nf + 1.0) * cn1)
        }
        Side::Plus => {
            scale * (1.0 + x).powf(lambda - 0.5) * ((nf + 2.0 * lambda) * cn + (nf + 1.0) * cn1)
        }
    })
}

/// Closed form of the lowered-parameter corollary integral
/// (1/Γ(λ)) ∫ (1∓t)^{λ−1} (±(t−x))^{−1/2} C_{n+1}^{λ−1/2}(t) dt:
///
///   minus: √π/(Γ(λ−1/2)(n+λ+1/2)) (1−x)^{λ−1/2} [C_{n+1}^λ + C_n^λ],
///   plus:  √π/(Γ(λ−1/2)(n+λ+1/2)) (1+x)^{λ−1/2} [C_{n+1}^λ − C_n^λ].
pub fn corollary_integral(lambda: f64, n: usize, x: f64, side: Side) -> Result<f64> {
    if !(lambda >= 1.0) {
        return Err(Error::Domain(format!(
            "corollary_integral requires lambda >= 1, got {lambda}"
        )));
    }
    let nf = n as f64;
    let scale = std::f64::consts::PI.sqrt() / (special::gamma(lambda - 0.5)? * (nf + lambda + 0.5));
    let cn = gegenbauer::gegenbauer_eval(lambda, n, x)?;
    let cn1 = gegenbauer::gegenbauer_eval(lambda, n + 1, x)?;
    Ok(match side {
        Side::Minus => scale * (1.0 - x).powf(lambda - 0.5) * (cn1 + cn),
        Side::Plus => scale * (1.0 + x).powf(lambda - 0.5) * (cn1 - cn),
    })
}
