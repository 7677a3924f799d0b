//! Gegenbauer (ultraspherical) polynomials and finite expansions.
//!
//! The parameter λ is tied to the sphere dimension through λ = (d−2)/2.
//! λ = 0 is represented directly in the Chebyshev T basis rather than as
//! a limit of C_n^λ, so a series at λ = 0 holds Chebyshev coefficients.

use crate::error::{Error, Result};
use crate::special;
use serde::{Deserialize, Serialize};

/// Hard cap on expansion degree.
pub const MAX_DEGREE: usize = 512;

/// Relative threshold below which trailing coefficients are trimmed.
const TRIM_RELATIVE: f64 = 1e-15;

/// Which classical basis a given λ selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    /// λ = 0: Chebyshev polynomials of the first kind T_n.
    ChebyshevFirst,
    /// λ = 1/2: Legendre polynomials P_n (alias of the general path).
    Legendre,
    /// λ = 1: Chebyshev polynomials of the second kind U_n (alias).
    ChebyshevSecond,
    /// General C_n^λ with λ > 0.
    Gegenbauer,
}

impl BasisKind {
    pub fn of(lambda: f64) -> BasisKind {
        if lambda == 0.0 {
            BasisKind::ChebyshevFirst
        } else if lambda == 0.5 {
            BasisKind::Legendre
        } else if lambda == 1.0 {
            BasisKind::ChebyshevSecond
        } else {
            BasisKind::Gegenbauer
        }
    }
}

/// Chebyshev kind selector for [`chebyshev_eval`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChebyshevKind {
    First,
    Second,
}

fn check_unit_interval(x: f64) -> Result<()> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("argument x = {x} outside [-1, 1]")));
    }
    Ok(())
}

/// Three-term recurrence value of C_n^λ(x). No domain checks; the
/// recurrence itself is valid for any real x and λ > 0.
pub(crate) fn gegenbauer_value(lambda: f64, n: usize, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut curr = 2.0 * lambda * x;
    for k in 1..n {
        let kf = k as f64;
        let next = (2.0 * (kf + lambda) * x * curr - (kf + 2.0 * lambda - 1.0) * prev) / (kf + 1.0);
        prev = curr;
        curr = next;
    }
    curr
}

pub(crate) fn chebyshev_t_value(n: usize, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut curr = x;
    for _ in 1..n {
        let next = 2.0 * x * curr - prev;
        prev = curr;
        curr = next;
    }
    curr
}

pub(crate) fn chebyshev_u_value(n: usize, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut curr = 2.0 * x;
    for _ in 1..n {
        let next = 2.0 * x * curr - prev;
        prev = curr;
        curr = next;
    }
    curr
}

/// Jacobi polynomial P_n^{(a,b)}(x) via the three-term recurrence.
/// Requires a, b > −1 so no recurrence denominator can vanish.
pub(crate) fn jacobi_value(a: f64, b: f64, n: usize, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut curr = 0.5 * (a + b + 2.0) * x + 0.5 * (a - b);
    for k in 2..=n {
        let kf = k as f64;
        let s = 2.0 * kf + a + b;
        let c1 = 2.0 * kf * (kf + a + b) * (s - 2.0);
        let c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        let c3 = 2.0 * (kf + a - 1.0) * (kf + b - 1.0) * s;
        let next = (c2 * curr - c3 * prev) / c1;
        prev = curr;
        curr = next;
    }
    curr
}

/// C_n^λ(x) via the three-term recurrence, for λ > 0 and |x| ≤ 1.
pub fn gegenbauer_eval(lambda: f64, n: usize, x: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::Domain(format!(
            "gegenbauer_eval requires lambda > 0, got {lambda}; use the Chebyshev path for lambda = 0"
        )));
    }
    check_unit_interval(x)?;
    Ok(gegenbauer_value(lambda, n, x))
}

/// T_n(x) or U_n(x) via the stabilized recurrence.
pub fn chebyshev_eval(kind: ChebyshevKind, n: usize, x: f64) -> Result<f64> {
    check_unit_interval(x)?;
    Ok(match kind {
        ChebyshevKind::First => chebyshev_t_value(n, x),
        ChebyshevKind::Second => chebyshev_u_value(n, x),
    })
}

/// Derivative of the basis polynomial: d/dx C_n^λ = 2λ C_{n−1}^{λ+1},
/// and d/dx T_n = n U_{n−1} for the λ = 0 convention.
pub(crate) fn basis_derivative_value(lambda: f64, n: usize, x: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    if lambda == 0.0 {
        n as f64 * chebyshev_u_value(n - 1, x)
    } else {
        2.0 * lambda * gegenbauer_value(lambda + 1.0, n - 1, x)
    }
}

/// Squared-norm constant h_n^λ = ∫ C_n^λ(x)² (1−x²)^{λ−1/2} dx.
///
/// For λ = 0 returns the Chebyshev T norms (π for n = 0, π/2 otherwise).
pub fn norm_h(lambda: f64, n: usize) -> Result<f64> {
    if lambda < 0.0 {
        return Err(Error::Domain(format!(
            "norm_h requires lambda >= 0, got {lambda}"
        )));
    }
    if lambda == 0.0 {
        return Ok(if n == 0 {
            std::f64::consts::PI
        } else {
            std::f64::consts::PI / 2.0
        });
    }
    // h_n^λ = π Γ(2λ+n) / (2^{2λ−1} n! (λ+n) Γ²(λ)), in log space
    let nf = n as f64;
    let ln = std::f64::consts::PI.ln() + special::ln_gamma(2.0 * lambda + nf)?
        - (2.0 * lambda - 1.0) * std::f64::consts::LN_2
        - special::ln_gamma(nf + 1.0)?
        - (lambda + nf).ln()
        - 2.0 * special::ln_gamma(lambda)?;
    Ok(ln.exp())
}

/// Both sides of the reflection formula C_n^λ(−x) = (−1)^n C_n^λ(x).
pub fn reflection_check(lambda: f64, n: usize, x: f64) -> Result<(f64, f64)> {
    check_unit_interval(x)?;
    if !(lambda > 0.0) {
        return Err(Error::Domain(format!(
            "reflection_check requires lambda > 0, got {lambda}"
        )));
    }
    let lhs = gegenbauer_value(lambda, n, -x);
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let rhs = sign * gegenbauer_value(lambda, n, x);
    Ok((lhs, rhs))
}

/// Side selector shared by the derivative expansions and the half-step
/// operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

/// Residual of the derivative expansion of (1±x) C_n^λ(x):
///
/// d/dx{(1+x) C_n^λ} = (n+1) C_n^λ + 2 Σ_{k<n} (k+λ) C_k^λ,
/// d/dx{(1−x) C_n^λ} = −(n+1) C_n^λ + 2 Σ_{k<n} (−1)^{k+n+1} (k+λ) C_k^λ.
///
/// The left side is evaluated analytically through the derivative ladder.
pub fn derivative_identity_residual(lambda: f64, n: usize, x: f64, which: Side) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::Domain(format!(
            "derivative_identity_residual requires lambda > 0, got {lambda}"
        )));
    }
    check_unit_interval(x)?;
    let cn = gegenbauer_value(lambda, n, x);
    let dcn = basis_derivative_value(lambda, n, x);
    let (lhs, rhs) = match which {
        Side::Plus => {
            let mut rhs = (n as f64 + 1.0) * cn;
            for k in 0..n {
                rhs += 2.0 * (k as f64 + lambda) * gegenbauer_value(lambda, k, x);
            }
            (cn + (1.0 + x) * dcn, rhs)
        }
        Side::Minus => {
            let mut rhs = -(n as f64 + 1.0) * cn;
            for k in 0..n {
                let sign = if (k + n + 1) % 2 == 0 { 1.0 } else { -1.0 };
                rhs += 2.0 * sign * (k as f64 + lambda) * gegenbauer_value(lambda, k, x);
            }
            (-cn + (1.0 - x) * dcn, rhs)
        }
    };
    Ok(lhs - rhs)
}

/// Residual of the parameter-lowering identity
/// (n+2λ−1) C_{n+1}^{λ−1} − (n+2) C_{n+2}^{λ−1}
///   = (2λ−2)(1−x)[C_{n+1}^λ + C_n^λ], valid for λ > 1.
pub fn gegenbauer_identity_residual(lambda: f64, n: usize, x: f64) -> Result<f64> {
    if !(lambda > 1.0) {
        return Err(Error::Domain(format!(
            "gegenbauer_identity_residual requires lambda > 1, got {lambda}; the limit case is chebyshev_identity_residual"
        )));
    }
    check_unit_interval(x)?;
    let nf = n as f64;
    let lhs = (nf + 2.0 * lambda - 1.0) * gegenbauer_value(lambda - 1.0, n + 1, x)
        - (nf + 2.0) * gegenbauer_value(lambda - 1.0, n + 2, x);
    let rhs = (2.0 * lambda - 2.0)
        * (1.0 - x)
        * (gegenbauer_value(lambda, n + 1, x) + gegenbauer_value(lambda, n, x));
    Ok((lhs - rhs).abs())
}

/// Residual of T_{n+1} − T_{n+2} = (1−x)[U_{n+1} + U_n], the λ → 1 limit
/// of the identity above.
pub fn chebyshev_identity_residual(n: usize, x: f64) -> Result<f64> {
    check_unit_interval(x)?;
    let lhs = chebyshev_t_value(n + 1, x) - chebyshev_t_value(n + 2, x);
    let rhs = (1.0 - x) * (chebyshev_u_value(n + 1, x) + chebyshev_u_value(n, x));
    Ok((lhs - rhs).abs())
}

/// Residual of the weighted-derivative identity
/// d/dx{(1+x)^{λ+1}(1−x)^λ C_n^{λ+1/2}} = (1+x)(1−x²)^{λ−1} Q_{n+1},
/// where Q_{n+1} = (1−x)C_n^{λ+1/2} − (n+1)(2λ+n)/(2λ−1) C_{n+1}^{λ−1/2}.
///
/// The left side is a central finite difference with step `h`, so the
/// residual carries the O(h²) truncation error of the stencil.
pub fn q_lemma_residual(lambda: f64, n: usize, x: f64, h: f64) -> Result<f64> {
    if !(lambda > 0.5) {
        return Err(Error::Domain(format!(
            "q_lemma_residual requires lambda > 1/2, got {lambda}"
        )));
    }
    if x.abs() + h > 1.0 {
        return Err(Error::Domain(format!(
            "q_lemma_residual stencil leaves [-1, 1] at x = {x}, h = {h}"
        )));
    }
    let weighted = |t: f64| {
        (1.0 + t).powf(lambda + 1.0) * (1.0 - t).powf(lambda) * gegenbauer_value(lambda + 0.5, n, t)
    };
    let lhs = (weighted(x + h) - weighted(x - h)) / (2.0 * h);
    let nf = n as f64;
    let q = (1.0 - x) * gegenbauer_value(lambda + 0.5, n, x)
        - (nf + 1.0) * (2.0 * lambda + nf) / (2.0 * lambda - 1.0)
            * gegenbauer_value(lambda - 0.5, n + 1, x);
    let rhs = (1.0 + x) * (1.0 - x * x).powf(lambda - 1.0) * q;
    Ok((lhs - rhs).abs())
}

/// A finite expansion f ~ Σ a_n B_n where B_n = C_n^λ for λ > 0 and
/// B_n = T_n for λ = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct GegenbauerSeries {
    lambda: f64,
    coefficients: Vec<f64>,
}

impl GegenbauerSeries {
    /// Builds a series, trimming trailing coefficients below
    /// 1e−15 · max|a_n| to the canonical form.
    pub fn new(lambda: f64, coefficients: Vec<f64>) -> Result<Self> {
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(Error::InvalidSeries(format!(
                "lambda must be finite and nonnegative, got {lambda}"
            )));
        }
        if coefficients.is_empty() {
            return Err(Error::InvalidSeries("coefficient vector is empty".into()));
        }
        if coefficients.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidSeries("non-finite coefficient".into()));
        }
        if coefficients.len() > MAX_DEGREE + 1 {
            return Err(Error::InvalidSeries(format!(
                "degree {} exceeds the cap {}",
                coefficients.len() - 1,
                MAX_DEGREE
            )));
        }
        let mut coefficients = coefficients;
        let max = coefficients.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        let threshold = TRIM_RELATIVE * max;
        while coefficients.len() > 1 && coefficients.last().unwrap().abs() <= threshold {
            coefficients.pop();
        }
        Ok(GegenbauerSeries {
            lambda,
            coefficients,
        })
    }

    /// Basis vector e_n: the single polynomial B_n at parameter λ.
    pub fn unit(lambda: f64, n: usize) -> Result<Self> {
        let mut coefficients = vec![0.0; n + 1];
        coefficients[n] = 1.0;
        GegenbauerSeries::new(lambda, coefficients)
    }

    /// The zero series at parameter λ.
    pub fn zero(lambda: f64) -> Result<Self> {
        GegenbauerSeries::new(lambda, vec![0.0])
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn l1_norm(&self) -> f64 {
        self.coefficients.iter().map(|c| c.abs()).sum()
    }

    /// True when the basis parameter matches `lambda` within 1e−12.
    pub fn basis_matches(&self, lambda: f64) -> bool {
        (self.lambda - lambda).abs() <= 1e-12
    }

    /// Clenshaw evaluation of the expansion at x ∈ [−1, 1].
    pub fn eval(&self, x: f64) -> Result<f64> {
        check_unit_interval(x)?;
        Ok(self.eval_unchecked(x))
    }

    /// Clenshaw evaluation without the domain check. The backward
    /// recurrence is well defined for any real x; callers that step a
    /// finite-difference stencil slightly past ±1 rely on this.
    pub(crate) fn eval_unchecked(&self, x: f64) -> f64 {
        let a = &self.coefficients;
        let n = a.len();
        if n == 1 {
            return a[0];
        }
        if self.lambda == 0.0 {
            // Chebyshev Clenshaw
            let mut b1 = 0.0;
            let mut b2 = 0.0;
            for k in (1..n).rev() {
                let b = 2.0 * x * b1 - b2 + a[k];
                b2 = b1;
                b1 = b;
            }
            return x * b1 - b2 + a[0];
        }
        // General Gegenbauer Clenshaw: C_{k+1} = alpha_k C_k + beta_k C_{k-1}
        // with alpha_k = 2(k+λ)x/(k+1), beta_k = −(k+2λ−1)/(k+1).
        let lambda = self.lambda;
        let alpha = |k: f64| 2.0 * (k + lambda) * x / (k + 1.0);
        let beta = |k: f64| -(k + 2.0 * lambda - 1.0) / (k + 1.0);
        let mut b1 = 0.0;
        let mut b2 = 0.0;
        for k in (1..n).rev() {
            let kf = k as f64;
            let b = a[k] + alpha(kf) * b1 + beta(kf + 1.0) * b2;
            b2 = b1;
            b1 = b;
        }
        a[0] + beta(1.0) * b2 + 2.0 * lambda * x * b1
    }

    /// Termwise derivative through the ladder d/dx C_n^λ = 2λ C_{n−1}^{λ+1}
    /// (or d/dx T_n = n U_{n−1}); the result lives at parameter λ+1.
    pub fn derivative_series(&self) -> Result<GegenbauerSeries> {
        let target = self.lambda + 1.0;
        if self.coefficients.len() == 1 {
            return GegenbauerSeries::zero(target);
        }
        let shifted: Vec<f64> = self.coefficients[1..]
            .iter()
            .enumerate()
            .map(|(m, &a)| {
                let n = m + 1;
                if self.lambda == 0.0 {
                    n as f64 * a
                } else {
                    2.0 * self.lambda * a
                }
            })
            .collect();
        GegenbauerSeries::new(target, shifted)
    }
}

/// Evaluate a series at x; free-function form of [`GegenbauerSeries::eval`].
pub fn series_eval(s: &GegenbauerSeries, x: f64) -> Result<f64> {
    s.eval(x)
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    lambda: f64,
    basis: String,
    coefficients: Vec<f64>,
}

impl Serialize for GegenbauerSeries {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let basis = if self.lambda == 0.0 {
            "chebyshev"
        } else {
            "gegenbauer"
        };
        SeriesJson {
            lambda: self.lambda,
            basis: basis.to_string(),
            coefficients: self.coefficients.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GegenbauerSeries {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let raw = SeriesJson::deserialize(deserializer)?;
        match raw.basis.as_str() {
            "chebyshev" if raw.lambda != 0.0 => {
                return Err(serde::de::Error::custom(
                    "basis \"chebyshev\" requires lambda = 0",
                ))
            }
            "gegenbauer" if raw.lambda == 0.0 => {
                return Err(serde::de::Error::custom(
                    "basis \"gegenbauer\" requires lambda > 0",
                ))
            }
            "chebyshev" | "gegenbauer" => {}
            other => {
                return Err(serde::de::Error::custom(format!(
                    "unknown basis {other:?}, expected \"gegenbauer\" or \"chebyshev\""
                )))
            }
        }
        GegenbauerSeries::new(raw.lambda, raw.coefficients)
            .map_err(|e| serde::de::Error::custom(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn low_degree_monomial_oracles() {
        // C_0 ≡ 1
        for lambda in [0.3, 1.0, 2.5] {
            assert_eq!(gegenbauer_eval(lambda, 0, 0.37).unwrap(), 1.0);
        }
        // U_3(x) = 8x³ − 4x at x = 0.5: 8(0.125) − 2 = −1
        assert_relative_eq!(
            gegenbauer_eval(1.0, 3, 0.5).unwrap(),
            -1.0,
            max_relative = 1e-14
        );
        // P_2(x) = (3x² − 1)/2 at x = 0.3
        assert_relative_eq!(
            gegenbauer_eval(0.5, 2, 0.3).unwrap(),
            -0.365,
            max_relative = 1e-14
        );
        // T_3(x) = 4x³ − 3x at x = 0.2
        assert_relative_eq!(
            chebyshev_eval(ChebyshevKind::First, 3, 0.2).unwrap(),
            -0.568,
            max_relative = 1e-13
        );
        // U_2(x) = 4x² − 1 at x = 0.2
        assert_relative_eq!(
            chebyshev_eval(ChebyshevKind::Second, 2, 0.2).unwrap(),
            -0.84,
            max_relative = 1e-13
        );
        // T_n(1) = 1
        assert_eq!(chebyshev_eval(ChebyshevKind::First, 5, 1.0).unwrap(), 1.0);
    }

    #[test]
    fn domain_errors() {
        assert!(gegenbauer_eval(0.0, 2, 0.5).is_err());
        assert!(gegenbauer_eval(1.0, 2, 1.5).is_err());
        assert!(chebyshev_eval(ChebyshevKind::First, 2, -1.01).is_err());
    }

    #[test]
    fn aliases_match_general_path() {
        assert_eq!(BasisKind::of(0.0), BasisKind::ChebyshevFirst);
        assert_eq!(BasisKind::of(0.5), BasisKind::Legendre);
        assert_eq!(BasisKind::of(1.0), BasisKind::ChebyshevSecond);
        assert_eq!(BasisKind::of(1.7), BasisKind::Gegenbauer);
        for n in 0..20 {
            for &x in &[-0.9, -0.4, 0.0, 0.3, 0.77, 1.0] {
                assert_relative_eq!(
                    gegenbauer_value(1.0, n, x),
                    chebyshev_u_value(n, x),
                    max_relative = 1e-12,
                    epsilon = 1e-13
                );
                // Legendre three-term oracle
                let p = {
                    let mut p0 = 1.0;
                    let mut p1 = x;
                    if n == 0 {
                        p0
                    } else {
                        for k in 1..n {
                            let kf = k as f64;
                            let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
                            p0 = p1;
                            p1 = p2;
                        }
                        p1
                    }
                };
                assert_relative_eq!(
                    gegenbauer_value(0.5, n, x),
                    p,
                    max_relative = 1e-12,
                    epsilon = 1e-13
                );
            }
        }
    }

    #[test]
    fn series_eval_matches_direct_sum() {
        let s = GegenbauerSeries::new(1.5, vec![0.3, -0.7, 0.0, 1.1, 0.25]).unwrap();
        for &x in &[-1.0, -0.62, 0.0, 0.41, 0.99, 1.0] {
            let direct: f64 = s
                .coefficients()
                .iter()
                .enumerate()
                .map(|(n, a)| a * gegenbauer_value(1.5, n, x))
                .sum();
            assert_relative_eq!(
                s.eval(x).unwrap(),
                direct,
                max_relative = 1e-12,
                epsilon = 1e-13
            );
        }
        // constant series
        let c = GegenbauerSeries::new(1.5, vec![2.0]).unwrap();
        assert_eq!(c.eval(0.123).unwrap(), 2.0);
        // single basis polynomial
        let e2 = GegenbauerSeries::unit(0.5, 2).unwrap();
        assert_relative_eq!(e2.eval(0.3).unwrap(), -0.365, max_relative = 1e-13);
        // Chebyshev linear case: T_0 + T_1 at 0.5
        let t = GegenbauerSeries::new(0.0, vec![1.0, 1.0]).unwrap();
        assert_relative_eq!(t.eval(0.5).unwrap(), 1.5, max_relative = 1e-14);
    }

    #[test]
    fn trimming_and_validation() {
        let s = GegenbauerSeries::new(1.0, vec![1.0, 2.0, 0.0, 0.0]).unwrap();
        assert_eq!(s.coefficients(), &[1.0, 2.0]);
        let z = GegenbauerSeries::new(1.0, vec![0.0, 0.0]).unwrap();
        assert_eq!(z.coefficients(), &[0.0]);
        assert!(GegenbauerSeries::new(-0.5, vec![1.0]).is_err());
        assert!(GegenbauerSeries::new(1.0, vec![]).is_err());
        assert!(GegenbauerSeries::new(1.0, vec![f64::NAN]).is_err());
        assert!(GegenbauerSeries::new(1.0, vec![0.0; MAX_DEGREE + 2]).is_err());
    }

    #[test]
    fn norm_h_legendre_oracle() {
        // h_0^{1/2} = ∫ P_0² dx = 2, h_n^{1/2} = 2/(2n+1)
        assert_relative_eq!(norm_h(0.5, 0).unwrap(), 2.0, max_relative = 1e-13);
        for n in 1..30 {
            assert_relative_eq!(
                norm_h(0.5, n).unwrap(),
                2.0 / (2.0 * n as f64 + 1.0),
                max_relative = 1e-12
            );
        }
        // ∫ U_1² √(1−x²) dx = π/2
        assert_relative_eq!(
            norm_h(1.0, 1).unwrap(),
            std::f64::consts::PI / 2.0,
            max_relative = 1e-13
        );
        // Chebyshev path
        assert_eq!(norm_h(0.0, 0).unwrap(), std::f64::consts::PI);
        assert_eq!(norm_h(0.0, 7).unwrap(), std::f64::consts::PI / 2.0);
    }

    #[test]
    fn reflection_examples() {
        let (l, r) = reflection_check(1.5, 6, 0.7).unwrap();
        assert_relative_eq!(l, r, max_relative = 1e-12);
        let (l, r) = reflection_check(2.0, 0, 0.9).unwrap();
        assert_eq!((l, r), (1.0, 1.0));
        let (l, r) = reflection_check(2.0, 1, 0.4).unwrap();
        assert_relative_eq!(l, -1.6, max_relative = 1e-14);
        assert_relative_eq!(r, -1.6, max_relative = 1e-14);
    }

    #[test]
    fn derivative_identity_low_orders() {
        // n = 0: d/dx{(1+x)} = 1 = (0+1)·1 + empty sum
        assert_eq!(
            derivative_identity_residual(1.3, 0, 0.4, Side::Plus).unwrap(),
            0.0
        );
        let r = derivative_identity_residual(1.0, 2, 0.25, Side::Plus).unwrap();
        assert!(r.abs() <= 1e-12, "residual {r}");
        let r = derivative_identity_residual(0.5, 3, -0.6, Side::Minus).unwrap();
        assert!(r.abs() <= 1e-12, "residual {r}");
    }

    #[test]
    fn gegenbauer_identity_cases() {
        assert!(gegenbauer_identity_residual(2.0, 0, 0.0).unwrap() <= 1e-13);
        assert!(gegenbauer_identity_residual(1.5, 3, 0.8).unwrap() <= 1e-11);
        assert!(gegenbauer_identity_residual(3.0, 1, -1.0).unwrap() <= 1e-11);
        assert!(gegenbauer_identity_residual(1.0, 2, 0.5).is_err());
    }

    #[test]
    fn chebyshev_identity_cases() {
        assert!(chebyshev_identity_residual(3, 1.0).unwrap() <= 1e-14);
        // n=0, x=0.5: T_1−T_2 = 0.5−(−0.5) = 1; (1−x)(U_1+U_0) = 0.5·(1+1) = 1
        assert!(chebyshev_identity_residual(0, 0.5).unwrap() <= 1e-14);
        assert!(chebyshev_identity_residual(4, -0.3).unwrap() <= 1e-12);
    }

    #[test]
    fn derivative_series_ladder() {
        // d/dx of C_3^{1.5}-series equals 2λ C_2^{2.5} termwise
        let s = GegenbauerSeries::unit(1.5, 3).unwrap();
        let d = s.derivative_series().unwrap();
        assert_eq!(d.lambda(), 2.5);
        assert_eq!(d.coefficients(), &[0.0, 0.0, 3.0]);
        // T basis: d/dx T_2 = 2 U_1
        let t = GegenbauerSeries::unit(0.0, 2).unwrap();
        let dt = t.derivative_series().unwrap();
        assert_eq!(dt.lambda(), 1.0);
        assert_eq!(dt.coefficients(), &[0.0, 2.0]);
        // constants differentiate to the zero series
        let c = GegenbauerSeries::new(0.7, vec![5.0]).unwrap();
        assert_eq!(c.derivative_series().unwrap().coefficients(), &[0.0]);
    }

    #[test]
    fn lambda_limit_convention() {
        // (1/λ) C_n^λ(x) → (2/n) T_n(x) as λ → 0⁺
        let lambda = 1e-6;
        for n in 1..=10 {
            for &x in &[-0.8, -0.2, 0.33, 0.91] {
                let scaled = gegenbauer_value(lambda, n, x) / lambda;
                let limit = 2.0 / n as f64 * chebyshev_t_value(n, x);
                assert!(
                    (scaled - limit).abs() <= 1e-4 * (1.0 + limit.abs()),
                    "n={n}, x={x}: {scaled} vs {limit}"
                );
            }
        }
    }

    #[test]
    fn json_round_trip_and_validation() {
        let s = GegenbauerSeries::new(1.5, vec![1.0, 0.5, -0.25]).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert!(text.contains("\"basis\":\"gegenbauer\""));
        let back: GegenbauerSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);

        let t = GegenbauerSeries::new(0.0, vec![1.0, 1.0]).unwrap();
        let text = serde_json::to_string(&t).unwrap();
        assert!(text.contains("\"basis\":\"chebyshev\""));

        let bad = r#"{"lambda": 1.0, "basis": "chebyshev", "coefficients": [1.0]}"#;
        assert!(serde_json::from_str::<GegenbauerSeries>(bad).is_err());
        let bad = r#"{"lambda": 0.0, "basis": "gegenbauer", "coefficients": [1.0]}"#;
        assert!(serde_json::from_str::<GegenbauerSeries>(bad).is_err());
        let bad = r#"{"lambda": 1.0, "basis": "fourier", "coefficients": [1.0]}"#;
        assert!(serde_json::from_str::<GegenbauerSeries>(bad).is_err());
    }
}
