//! Covariance model families, positive-definiteness verification, and
//! the dimension ladder walk.
//!
//! Verification is two-pronged: the Schoenberg coefficient test (all
//! expansion coefficients nonnegative) and a Gram matrix eigenvalue test
//! on sampled sphere points. The strict-PD parity test is a truncation
//! window heuristic: the underlying criterion quantifies over infinitely
//! many indices, which no finite expansion can witness.

use crate::error::{Error, Result};
use crate::gegenbauer::GegenbauerSeries;
use crate::operators::{apply_cd_spectral, apply_ci_spectral};
use crate::quadrature::project;
use crate::special;
use crate::zonal::ZonalFunction;
use crate::Side;
use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Restriction of the Cauchy family to the sphere:
/// φ_β(τ) = (3 − 2τ)^{−β/2}, strictly positive and increasing on [−1, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CauchySphereModel {
    beta: f64,
}

impl CauchySphereModel {
    pub fn new(beta: f64) -> Result<Self> {
        if !(beta > 0.0) {
            return Err(Error::Domain(format!(
                "Cauchy model requires beta > 0, got {beta}"
            )));
        }
        Ok(CauchySphereModel { beta })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn eval(&self, tau: f64) -> f64 {
        cauchy_eval(self.beta, tau)
    }

    pub fn zonal(&self) -> ZonalFunction {
        let beta = self.beta;
        ZonalFunction::from_fn_with_derivative(
            move |tau| cauchy_eval(beta, tau),
            move |tau| beta * (3.0 - 2.0 * tau).powf(-0.5 * beta - 1.0),
        )
    }
}

/// φ_β(τ) = (3 − 2τ)^{−β/2}.
pub fn cauchy_eval(beta: f64, tau: f64) -> f64 {
    (3.0 - 2.0 * tau).powf(-0.5 * beta)
}

/// The family g_{m,γ}(x) = (x+1)^m (3−2x)^{−γ} closed under the
/// half-step integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GmGammaModel {
    m: u32,
    gamma_exp: f64,
}

impl GmGammaModel {
    pub fn new(m: u32, gamma_exp: f64) -> Result<Self> {
        if !(gamma_exp > 0.0) {
            return Err(Error::Domain(format!(
                "g_m_gamma model requires gamma > 0, got {gamma_exp}"
            )));
        }
        Ok(GmGammaModel { m, gamma_exp })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn gamma_exp(&self) -> f64 {
        self.gamma_exp
    }

    pub fn eval(&self, x: f64) -> f64 {
        gm_eval(self.m, self.gamma_exp, x)
    }

    pub fn zonal(&self) -> ZonalFunction {
        let m = self.m;
        let g = self.gamma_exp;
        ZonalFunction::from_fn_with_derivative(
            move |x| gm_eval(m, g, x),
            move |x| {
                let poly = (x + 1.0).powi(m as i32);
                let poly_d = if m == 0 {
                    0.0
                } else {
                    m as f64 * (x + 1.0).powi(m as i32 - 1)
                };
                poly_d * (3.0 - 2.0 * x).powf(-g) + poly * 2.0 * g * (3.0 - 2.0 * x).powf(-g - 1.0)
            },
        )
    }
}

/// g_{m,γ}(x) = (x+1)^m (3−2x)^{−γ}.
pub fn gm_eval(m: u32, gamma_exp: f64, x: f64) -> f64 {
    (x + 1.0).powi(m as i32) * (3.0 - 2.0 * x).powf(-gamma_exp)
}

/// Closed form of I_+^λ φ_{2λ+3}:
/// √(π/5) Γ(λ+1)/Γ(λ+3/2) (x+1)(3−2x)^{−(λ+1)}.
pub fn cauchy_closed_form_image(lambda: f64, x: f64) -> Result<f64> {
    if lambda < 0.0 {
        return Err(Error::Domain(format!(
            "cauchy_closed_form_image requires lambda >= 0, got {lambda}"
        )));
    }
    let scale = (std::f64::consts::PI / 5.0).sqrt()
        * (special::ln_gamma(lambda + 1.0)? - special::ln_gamma(lambda + 1.5)?).exp();
    Ok(scale * (x + 1.0) * (3.0 - 2.0 * x).powf(-(lambda + 1.0)))
}

/// Closed form of I_+^{γ−m−3/2} g_{m,γ}:
/// √(π/5) Γ(γ−1/2)/Γ(γ) (x+1)^{m+1} (3−2x)^{−(γ−1/2)}.
///
/// Requires γ − m − 3/2 > −1/2 so the operator's weight stays integrable.
pub fn gm_image_closed_form(m: u32, gamma_exp: f64, x: f64) -> Result<f64> {
    let op_lambda = gamma_exp - m as f64 - 1.5;
    if !(op_lambda > -0.5) {
        return Err(Error::Domain(format!(
            "gm_image_closed_form requires gamma - m - 3/2 > -1/2, got {op_lambda}"
        )));
    }
    let scale = (std::f64::consts::PI / 5.0).sqrt()
        * (special::ln_gamma(gamma_exp - 0.5)? - special::ln_gamma(gamma_exp)?).exp();
    Ok(scale * (x + 1.0).powi(m as i32 + 1) * (3.0 - 2.0 * x).powf(-(gamma_exp - 0.5)))
}

/// Outcome of a PD verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    PdConsistent,
    StrictPdConsistent,
    Inconsistent,
}

/// Coefficient-sign fragment of a report.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientCheck {
    pub min_coefficient: f64,
    pub negative_indices: Vec<usize>,
    pub has_positive_even: bool,
    pub has_positive_odd: bool,
}

/// Flags coefficients below −tol·max|a_n| and reports whether positive
/// mass exists on both parities within the truncation window.
pub fn check_pd_coefficients(s: &GegenbauerSeries, tol: f64) -> CoefficientCheck {
    let a = s.coefficients();
    let max_abs = a.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let threshold = tol * max_abs;
    let mut negative_indices = Vec::new();
    let mut min_coefficient = f64::INFINITY;
    let mut has_positive_even = false;
    let mut has_positive_odd = false;
    for (n, &c) in a.iter().enumerate() {
        min_coefficient = min_coefficient.min(c);
        if c < -threshold {
            negative_indices.push(n);
        }
        if c > threshold {
            if n % 2 == 0 {
                has_positive_even = true;
            } else {
                has_positive_odd = true;
            }
        }
    }
    CoefficientCheck {
        min_coefficient,
        negative_indices,
        has_positive_even,
        has_positive_odd,
    }
}

/// Distinct unit vectors on S^{d−1}.
#[derive(Debug, Clone, PartialEq)]
pub struct SpherePointSet {
    dimension: usize,
    points: Vec<Vec<f64>>,
}

impl SpherePointSet {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn dot(&self, i: usize, j: usize) -> f64 {
        self.points[i]
            .iter()
            .zip(&self.points[j])
            .map(|(a, b)| a * b)
            .sum()
    }
}

const MIN_GEODESIC_SEPARATION: f64 = 1e-6;
const SAMPLE_RETRIES: usize = 200;

/// Draws n points from the rotation-invariant distribution on S^{d−1}
/// by normalizing independent standard normals; deterministic under a
/// fixed seed, with rejection-resampling to enforce pairwise
/// distinctness.
pub fn sample_sphere(dimension: usize, count: usize, seed: u64) -> Result<SpherePointSet> {
    if dimension < 2 {
        return Err(Error::Domain(format!(
            "sphere dimension must be at least 2, got {dimension}"
        )));
    }
    if count < 2 {
        return Err(Error::Domain(format!(
            "point count must be at least 2, got {count}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<Vec<f64>> = Vec::with_capacity(count);
    let draw = |rng: &mut ChaCha8Rng| -> Option<Vec<f64>> {
        let v: Vec<f64> = (0..dimension)
            .map(|_| rng.sample::<f64, _>(StandardNormal))
            .collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return None;
        }
        Some(v.into_iter().map(|x| x / norm).collect())
    };
    'outer: for _ in 0..count {
        for _ in 0..SAMPLE_RETRIES {
            let Some(candidate) = draw(&mut rng) else {
                continue;
            };
            let distinct = points.iter().all(|p| {
                let dot: f64 = p.iter().zip(&candidate).map(|(a, b)| a * b).sum();
                dot.clamp(-1.0, 1.0).acos() > MIN_GEODESIC_SEPARATION
            });
            if distinct {
                points.push(candidate);
                continue 'outer;
            }
        }
        return Err(Error::Sampling(format!(
            "could not place {count} pairwise-distinct points on S^{} after {SAMPLE_RETRIES} retries",
            dimension - 1
        )));
    }
    Ok(SpherePointSet { dimension, points })
}

/// Gram matrix fragment of a report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GramCheck {
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
    pub consistent: bool,
}

/// Builds G_ij = f(x_i · x_j) and reports its extreme eigenvalues;
/// consistent iff the smallest is ≥ −tol·largest.
pub fn gram_check(f: &ZonalFunction, points: &SpherePointSet, tol: f64) -> Result<GramCheck> {
    let n = points.len();
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    let dot = points.dot(i, j).clamp(-1.0, 1.0);
                    f.eval(dot)
                })
                .collect()
        })
        .collect();
    for (i, row) in rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFiniteKernel {
                    i,
                    j,
                    argument: points.dot(i, j),
                });
            }
        }
    }
    let mut g = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            // symmetrize against rounding in the dot products
            g[(i, j)] = 0.5 * (rows[i][j] + rows[j][i]);
        }
    }
    let eigenvalues = g.symmetric_eigenvalues();
    let mut min_eigenvalue = f64::INFINITY;
    let mut max_eigenvalue = f64::NEG_INFINITY;
    for &e in eigenvalues.iter() {
        if !e.is_finite() {
            return Err(Error::Eigen("non-finite Gram eigenvalue".into()));
        }
        min_eigenvalue = min_eigenvalue.min(e);
        max_eigenvalue = max_eigenvalue.max(e);
    }
    Ok(GramCheck {
        min_eigenvalue,
        max_eigenvalue,
        consistent: min_eigenvalue >= -tol * max_eigenvalue.max(0.0),
    })
}

/// Full verification report for one expansion at one sphere dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PdReport {
    pub lambda: f64,
    pub truncation_degree: usize,
    pub min_coefficient: f64,
    pub negative_coefficient_indices: Vec<usize>,
    pub has_positive_even_tail: bool,
    pub has_positive_odd_tail: bool,
    pub gram_min_eigenvalue: f64,
    pub gram_max_eigenvalue: f64,
    pub point_count: usize,
    pub sphere_dimension: usize,
    pub verdict: Verdict,
}

/// Tolerances and sampling parameters for PD verification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PdCheckConfig {
    pub points: usize,
    pub seed: u64,
    pub coefficient_tol: f64,
    pub gram_tol: f64,
}

impl Default for PdCheckConfig {
    fn default() -> Self {
        PdCheckConfig {
            points: 50,
            seed: 42,
            coefficient_tol: 1e-10,
            gram_tol: 1e-8,
        }
    }
}

/// Assembles the coefficient and Gram fragments into a verdict. The
/// kernel evaluated on the point set defaults to the series itself when
/// `kernel` is None. The strict verdict needs positive mass on both
/// parities and d ≥ 3: on the circle the parity criterion is necessary
/// but not sufficient, so d = 2 caps at pd-consistent.
pub fn pd_report(
    series: &GegenbauerSeries,
    kernel: Option<&ZonalFunction>,
    dimension: usize,
    cfg: &PdCheckConfig,
) -> Result<PdReport> {
    let coeff = check_pd_coefficients(series, cfg.coefficient_tol);
    let points = sample_sphere(dimension, cfg.points, cfg.seed)?;
    let series_fn;
    let f = match kernel {
        Some(f) => f,
        None => {
            series_fn = ZonalFunction::from_series(series);
            &series_fn
        }
    };
    let gram = gram_check(f, &points, cfg.gram_tol)?;
    let verdict = if !coeff.negative_indices.is_empty() || !gram.consistent {
        Verdict::Inconsistent
    } else if coeff.has_positive_even && coeff.has_positive_odd && dimension >= 3 {
        Verdict::StrictPdConsistent
    } else {
        Verdict::PdConsistent
    };
    Ok(PdReport {
        lambda: series.lambda(),
        truncation_degree: series.degree(),
        min_coefficient: coeff.min_coefficient,
        negative_coefficient_indices: coeff.negative_indices,
        has_positive_even_tail: coeff.has_positive_even,
        has_positive_odd_tail: coeff.has_positive_odd,
        gram_min_eigenvalue: gram.min_eigenvalue,
        gram_max_eigenvalue: gram.max_eigenvalue,
        point_count: points.len(),
        sphere_dimension: dimension,
        verdict,
    })
}

/// One dimension rung of a ladder walk.
#[derive(Debug, Clone)]
pub struct LadderRung {
    pub dimension: usize,
    pub series: GegenbauerSeries,
    pub report: PdReport,
}

/// Projects a model at the starting dimension's parameter and walks the
/// ladder one dimension at a time: descending steps apply the spectral
/// 𝓘^λ_+ with λ = (d−3)/2, ascending steps the spectral 𝓓^λ_− with
/// λ = (d−2)/2. Both act degree-diagonally, so a down-up round trip
/// multiplies each coefficient by the composed theorem scalars. Every
/// rung carries a PdReport for its dimension.
pub fn ladder_walk(
    model: &ZonalFunction,
    start_dim: usize,
    end_dim: usize,
    degree: usize,
    cfg: &PdCheckConfig,
) -> Result<Vec<LadderRung>> {
    if start_dim < 2 || end_dim < 2 {
        return Err(Error::Domain(format!(
            "ladder dimensions must be at least 2, got {start_dim} -> {end_dim}"
        )));
    }
    let lambda_of = |d: usize| (d as f64 - 2.0) / 2.0;
    let mut series = project(model, lambda_of(start_dim), degree)?;
    let mut rungs = Vec::new();
    let mut d = start_dim;
    rungs.push(LadderRung {
        dimension: d,
        report: pd_report(&series, None, d, cfg)?,
        series: series.clone(),
    });
    while d != end_dim {
        if d > end_dim {
            // descending d -> d−1 consumes the basis (d−2)/2 = λ+1/2
            let op_lambda = (d as f64 - 3.0) / 2.0;
            series = apply_ci_spectral(Side::Plus, op_lambda, &series)?;
            d -= 1;
        } else {
            let op_lambda = lambda_of(d);
            series = apply_cd_spectral(Side::Minus, op_lambda, &series)?;
            d += 1;
        }
        rungs.push(LadderRung {
            dimension: d,
            report: pd_report(&series, None, d, cfg)?,
            series: series.clone(),
        });
    }
    Ok(rungs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::ci_multiplier;
    use crate::quadrature::halfweight_fractional_integral;
    use approx::assert_relative_eq;

    #[test]
    fn model_point_values() {
        assert_eq!(cauchy_eval(3.7, 1.0), 1.0);
        assert_relative_eq!(cauchy_eval(2.0, -1.0), 0.2, max_relative = 1e-15);
        assert_eq!(gm_eval(1, 1.0, -1.0), 0.0);
        // increasing in τ
        let m = CauchySphereModel::new(4.0).unwrap();
        assert!(m.eval(-0.5) < m.eval(0.0));
        assert!(m.eval(0.0) < m.eval(0.9));
        assert!(CauchySphereModel::new(0.0).is_err());
        assert!(GmGammaModel::new(2, -1.0).is_err());
    }

    #[test]
    fn model_derivatives_match_finite_differences() {
        let h = 1e-6;
        let c = CauchySphereModel::new(5.0).unwrap().zonal();
        let g = GmGammaModel::new(2, 3.0).unwrap().zonal();
        for f in [&c, &g] {
            for &x in &[-0.8, -0.1, 0.5, 0.9] {
                let fd = (f.eval(x + h) - f.eval(x - h)) / (2.0 * h);
                let an = f.derivative(x).unwrap();
                assert_relative_eq!(an, fd, max_relative = 1e-8);
            }
        }
    }

    #[test]
    #[allow(clippy::excessive_precision)] // frozen 20-digit reference
    fn cauchy_image_spot_values() {
        assert_eq!(cauchy_closed_form_image(1.0, -1.0).unwrap(), 0.0);
        // λ = 1/2, x = 1: π/√5
        assert_relative_eq!(
            cauchy_closed_form_image(0.5, 1.0).unwrap(),
            1.4049629462081452786,
            max_relative = 1e-12
        );
    }

    #[test]
    fn cauchy_image_matches_quadrature() {
        for &lambda in &[0.5, 1.0, 2.0] {
            let model = CauchySphereModel::new(2.0 * lambda + 3.0).unwrap().zonal();
            for i in 0..21 {
                let x = -1.0 + 2.0 * i as f64 / 20.0;
                let got = halfweight_fractional_integral(&model, x, Side::Plus, lambda).unwrap();
                let expected = cauchy_closed_form_image(lambda, x).unwrap();
                assert!(
                    (got - expected).abs() <= 1e-10 * (1.0 + expected.abs()),
                    "lambda={lambda}, x={x}: {got} vs {expected}"
                );
            }
        }
    }

    #[test]
    fn gm_image_matches_quadrature() {
        // the last pair drives the operator order negative (λ = −0.3),
        // inside the open integrability window (−1/2, 0)
        for &(m, gamma_exp) in &[(1u32, 3.0f64), (0, 2.0), (2, 4.5), (0, 1.2)] {
            let model = GmGammaModel::new(m, gamma_exp).unwrap().zonal();
            let op_lambda = gamma_exp - m as f64 - 1.5;
            for &x in &[-1.0, -0.4, 0.0, 0.55, 1.0] {
                let got = halfweight_fractional_integral(&model, x, Side::Plus, op_lambda).unwrap();
                let expected = gm_image_closed_form(m, gamma_exp, x).unwrap();
                assert!(
                    (got - expected).abs() <= 1e-9 * (1.0 + expected.abs()),
                    "m={m}, gamma={gamma_exp}, x={x}: {got} vs {expected}"
                );
            }
        }
        assert_eq!(gm_image_closed_form(1, 3.0, -1.0).unwrap(), 0.0);
        assert!(gm_image_closed_form(3, 2.0, 0.0).is_err());
    }

    #[test]
    fn gm_double_application_display() {
        // I_+^{λ−3/2}(I_+^λ φ_{2λ+3}) = (π/5) Γ(λ+1/2)/Γ(λ+3/2) (x+1)²(3−2x)^{−(λ+1/2)}
        let lambda = 2.0;
        let first = CauchySphereModel::new(2.0 * lambda + 3.0).unwrap().zonal();
        let image = crate::operators::apply_i_quadrature(Side::Plus, lambda, &first).unwrap();
        let second =
            crate::operators::apply_i_quadrature(Side::Plus, lambda - 1.5, &image).unwrap();
        let scale = std::f64::consts::PI / 5.0
            * (special::ln_gamma(lambda + 0.5).unwrap() - special::ln_gamma(lambda + 1.5).unwrap())
                .exp();
        for &x in &[-0.9, -0.3, 0.2, 0.8] {
            let got = second.eval(x);
            let expected = scale * (x + 1.0).powi(2) * (3.0 - 2.0 * x).powf(-(lambda + 0.5));
            assert!(
                (got - expected).abs() <= 1e-8 * (1.0 + expected.abs()),
                "x={x}: {got} vs {expected}"
            );
        }
    }

    #[test]
    fn coefficient_check_cases() {
        let ok = GegenbauerSeries::new(1.0, vec![1.0, 0.5, 0.25]).unwrap();
        let c = check_pd_coefficients(&ok, 1e-10);
        assert!(c.negative_indices.is_empty());
        assert!(c.has_positive_even && c.has_positive_odd);

        let bad = GegenbauerSeries::new(1.0, vec![1.0, -0.5]).unwrap();
        let c = check_pd_coefficients(&bad, 1e-10);
        assert_eq!(c.negative_indices, vec![1]);
        assert_eq!(c.min_coefficient, -0.5);

        let even_only = GegenbauerSeries::new(1.0, vec![1.0, 0.0, 0.25]).unwrap();
        let c = check_pd_coefficients(&even_only, 1e-10);
        assert!(c.has_positive_even && !c.has_positive_odd);
    }

    #[test]
    fn projected_cauchy_is_strictly_pd_consistent() {
        let model = CauchySphereModel::new(5.0).unwrap().zonal();
        let series = project(&model, 1.0, 20).unwrap();
        let c = check_pd_coefficients(&series, 1e-10);
        assert!(
            c.negative_indices.is_empty(),
            "negative: {:?}",
            c.negative_indices
        );
        assert!(c.has_positive_even && c.has_positive_odd);
        let report = pd_report(&series, None, 4, &PdCheckConfig::default()).unwrap();
        assert_eq!(report.verdict, Verdict::StrictPdConsistent);
    }

    #[test]
    fn sampling_determinism_and_norms() {
        let a = sample_sphere(3, 200, 7).unwrap();
        let b = sample_sphere(3, 200, 7).unwrap();
        assert_eq!(a, b);
        for p in a.points() {
            let norm: f64 = p.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() <= 1e-12);
        }
        // rotation-invariance smoke: mean pairwise inner product near zero
        let mut sum = 0.0;
        let mut count = 0usize;
        for i in 0..a.len() {
            for j in (i + 1)..a.len() {
                sum += a.dot(i, j);
                count += 1;
            }
        }
        assert!((sum / count as f64).abs() <= 0.05);
        assert!(sample_sphere(1, 10, 0).is_err());
        assert!(sample_sphere(3, 1, 0).is_err());
    }

    #[test]
    fn gram_rank_one_case() {
        let pts = sample_sphere(3, 20, 11).unwrap();
        let one = ZonalFunction::constant(1.0);
        let g = gram_check(&one, &pts, 1e-8).unwrap();
        assert_relative_eq!(g.max_eigenvalue, 20.0, max_relative = 1e-10);
        assert!(g.min_eigenvalue.abs() <= 1e-10 * g.max_eigenvalue);
        assert!(g.consistent);
    }

    #[test]
    fn gram_linear_kernel_is_psd() {
        // f(x) = x = C_1^{1/2}: a single nonnegative coefficient
        let pts = sample_sphere(3, 40, 3).unwrap();
        let f = ZonalFunction::from_fn(|x| x);
        let g = gram_check(&f, &pts, 1e-10).unwrap();
        assert!(g.min_eigenvalue >= -1e-10 * g.max_eigenvalue);
    }

    #[test]
    fn gram_detects_schoenberg_violation() {
        // T_2 − 1/2 has a_0 = −1/2 < 0 on the circle basis
        let s = GegenbauerSeries::new(0.0, vec![-0.5, 0.0, 1.0]).unwrap();
        let f = ZonalFunction::from_series(&s);
        let pts = sample_sphere(2, 30, 5).unwrap();
        let g = gram_check(&f, &pts, 1e-8).unwrap();
        assert!(
            g.min_eigenvalue < -1e-4 * g.max_eigenvalue,
            "min {} vs max {}",
            g.min_eigenvalue,
            g.max_eigenvalue
        );
        assert!(!g.consistent);
    }

    #[test]
    fn gram_names_nonfinite_pair() {
        let f = ZonalFunction::from_fn(|x| 1.0 / (x - 1.0));
        let pts = sample_sphere(3, 5, 1).unwrap();
        match gram_check(&f, &pts, 1e-8) {
            Err(Error::NonFiniteKernel { i, j, .. }) => assert_eq!(i, j),
            other => panic!("expected NonFiniteKernel, got {other:?}"),
        }
    }

    #[test]
    fn ladder_descend_reproduces_theorem_scalar() {
        // d = 4 → 3 on C_2^1: coefficient picks up the 𝓘-action scalar at
        // λ = 1/2, n = 2
        let e2 = GegenbauerSeries::unit(1.0, 2).unwrap();
        let model = ZonalFunction::from_series(&e2);
        let cfg = PdCheckConfig {
            points: 20,
            ..Default::default()
        };
        let rungs = ladder_walk(&model, 4, 3, 6, &cfg).unwrap();
        assert_eq!(rungs.len(), 2);
        assert_eq!(rungs[1].dimension, 3);
        assert_eq!(rungs[1].series.lambda(), 0.5);
        let expected = ci_multiplier(Side::Plus, 0.5, 2).unwrap();
        let got = rungs[1]
            .series
            .coefficients()
            .get(2)
            .copied()
            .unwrap_or(0.0);
        assert_relative_eq!(got, expected, max_relative = 1e-10);
    }

    #[test]
    fn ladder_reaches_the_circle() {
        // d = 3 → 2 lands on the Chebyshev basis; the d = 2 verdict is
        // capped at pd-consistent even with both parities positive
        let model = CauchySphereModel::new(4.0).unwrap().zonal();
        let cfg = PdCheckConfig {
            points: 20,
            ..Default::default()
        };
        let rungs = ladder_walk(&model, 3, 2, 12, &cfg).unwrap();
        assert_eq!(rungs.len(), 2);
        assert_eq!(rungs[1].dimension, 2);
        assert_eq!(rungs[1].series.lambda(), 0.0);
        assert!(rungs[1].report.has_positive_even_tail);
        assert!(rungs[1].report.has_positive_odd_tail);
        assert_eq!(rungs[1].report.verdict, Verdict::PdConsistent);
    }

    #[test]
    fn ladder_single_entry_walk() {
        let model = CauchySphereModel::new(4.0).unwrap().zonal();
        let cfg = PdCheckConfig {
            points: 10,
            ..Default::default()
        };
        let rungs = ladder_walk(&model, 3, 3, 8, &cfg).unwrap();
        assert_eq!(rungs.len(), 1);
        assert_eq!(rungs[0].dimension, 3);
    }

    #[test]
    fn ladder_round_trip_scalar_product() {
        // d = 3 → 4 → 3 on e_n: composite scalar
        // π·2n(n+2λ)/((n+λ+1/2)(n+λ)) at λ = 1/2
        let lambda = 0.5;
        for n in 1..=6usize {
            let e_n = GegenbauerSeries::unit(lambda, n).unwrap();
            let model = ZonalFunction::from_series(&e_n);
            let cfg = PdCheckConfig {
                points: 10,
                ..Default::default()
            };
            let rungs = ladder_walk(&model, 3, 4, 10, &cfg).unwrap();
            let back = ladder_walk(
                &ZonalFunction::from_series(&rungs[1].series),
                4,
                3,
                10,
                &cfg,
            )
            .unwrap();
            let nf = n as f64;
            let expected = std::f64::consts::PI * 2.0 * nf * (nf + 2.0 * lambda)
                / ((nf + lambda + 0.5) * (nf + lambda));
            let got = back[1].series.coefficients().get(n).copied().unwrap_or(0.0);
            assert!(
                (got - expected).abs() <= 1e-8 * (1.0 + expected.abs()),
                "n={n}: {got} vs {expected}"
            );
        }
    }

    #[test]
    fn report_serialization_field_names() {
        let s = GegenbauerSeries::new(0.5, vec![1.0, 0.3]).unwrap();
        let report = pd_report(
            &s,
            None,
            3,
            &PdCheckConfig {
                points: 10,
                ..Default::default()
            },
        )
        .unwrap();
        let json = serde_json::to_value(&report).unwrap();
        for key in [
            "lambda",
            "truncationDegree",
            "minCoefficient",
            "negativeCoefficientIndices",
            "hasPositiveEvenTail",
            "hasPositiveOddTail",
            "gramMinEigenvalue",
            "gramMaxEigenvalue",
            "pointCount",
            "sphereDimension",
            "verdict",
        ] {
            assert!(json.get(key).is_some(), "missing key {key}");
        }
        assert_eq!(json["verdict"], "strict-pd-consistent");
    }

    #[test]
    fn d2_verdict_capped_at_pd_consistent() {
        // both parities positive, but d = 2 never reports strict
        let s = GegenbauerSeries::new(0.0, vec![1.0, 0.5, 0.25]).unwrap();
        let report = pd_report(
            &s,
            None,
            2,
            &PdCheckConfig {
                points: 15,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(report.verdict, Verdict::PdConsistent);
    }
}
