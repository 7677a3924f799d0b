//! Gauss–Jacobi quadrature, series projection, and the square-root
//! fractional integrals that back the half-step operators.

use crate::error::{Error, Result};
use crate::gegenbauer::{self, GegenbauerSeries, Side, MAX_DEGREE};
use crate::special;
use crate::zonal::ZonalFunction;
use nalgebra::DMatrix;
use rayon::prelude::*;

/// Nodes and weights for the weight (1−x)^α (1+x)^β on (−1, 1).
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    alpha: f64,
    beta: f64,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Σ w_i f(x_i), accumulated in ascending node order so results do
    /// not depend on the degree of parallelism anywhere above.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(0.0, |acc, (&x, &w)| acc + w * f(x))
    }
}

/// Golub–Welsch construction of the Gauss–Jacobi rule: nodes are the
/// eigenvalues of the symmetrized three-term recursion matrix, weights
/// come from first eigenvector components scaled by the total mass
/// 2^{α+β+1} B(α+1, β+1).
pub fn gauss_jacobi(order: usize, alpha: f64, beta: f64) -> Result<QuadratureRule> {
    if order == 0 {
        return Err(Error::Domain("quadrature order must be at least 1".into()));
    }
    if !(alpha > -1.0 && beta > -1.0) || !alpha.is_finite() || !beta.is_finite() {
        return Err(Error::Domain(format!(
            "Jacobi exponents must exceed -1, got alpha = {alpha}, beta = {beta}"
        )));
    }
    let mass = 2f64.powf(alpha + beta + 1.0) * special::beta(alpha + 1.0, beta + 1.0)?;
    if order == 1 {
        return Ok(QuadratureRule {
            nodes: vec![(beta - alpha) / (alpha + beta + 2.0)],
            weights: vec![mass],
            alpha,
            beta,
        });
    }

    let mut m = DMatrix::<f64>::zeros(order, order);
    m[(0, 0)] = (beta - alpha) / (alpha + beta + 2.0);
    for k in 1..order {
        let kf = k as f64;
        let denom = 2.0 * kf + alpha + beta;
        let diag = if alpha == beta {
            0.0
        } else {
            (beta * beta - alpha * alpha) / (denom * (denom + 2.0))
        };
        // k = 1 needs the cancelled form: the generic expression is 0/0
        // when alpha + beta = -1.
        let off = if k == 1 {
            (4.0 * (1.0 + alpha) * (1.0 + beta)
                / ((alpha + beta + 2.0).powi(2) * (alpha + beta + 3.0)))
                .sqrt()
        } else {
            2.0 / denom
                * (kf * (kf + alpha) * (kf + beta) * (kf + alpha + beta)
                    / ((denom + 1.0) * (denom - 1.0)))
                    .sqrt()
        };
        m[(k, k)] = diag;
        m[(k - 1, k)] = off;
        m[(k, k - 1)] = off;
    }

    let eigen = m.symmetric_eigen();
    let mut pairs: Vec<(f64, f64)> = eigen
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(i, &node)| {
            let v0 = eigen.eigenvectors[(0, i)];
            (node, mass * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite eigenvalues"));

    let (mut nodes, mut weights): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();

    // Symmetric weights give symmetric rules; enforce the pairing the
    // eigensolver only delivers to roundoff.
    if alpha == beta {
        let n = nodes.len();
        for i in 0..n / 2 {
            let j = n - 1 - i;
            let half = 0.5 * (nodes[i] - nodes[j]);
            nodes[i] = half;
            nodes[j] = -half;
            let w = 0.5 * (weights[i] + weights[j]);
            weights[i] = w;
            weights[j] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
    }

    for i in 0..nodes.len() {
        if !nodes[i].is_finite() || nodes[i].abs() >= 1.0 || !(weights[i] > 0.0) {
            return Err(Error::Eigen(format!(
                "Golub-Welsch produced an invalid node/weight pair ({}, {}) at index {i}",
                nodes[i], weights[i]
            )));
        }
        if i > 0 && nodes[i] <= nodes[i - 1] {
            return Err(Error::Eigen(format!(
                "Golub-Welsch nodes not strictly increasing at index {i}"
            )));
        }
    }

    Ok(QuadratureRule {
        nodes,
        weights,
        alpha,
        beta,
    })
}

/// Gauss–Legendre rule (α = β = 0).
pub fn gauss_legendre(order: usize) -> Result<QuadratureRule> {
    gauss_jacobi(order, 0.0, 0.0)
}

/// Chebyshev–Gauss rule for the weight (1−x²)^{−1/2}: closed-form
/// nodes cos((2i−1)π/2m) and uniform weights π/m.
pub fn chebyshev_gauss(order: usize) -> Result<QuadratureRule> {
    if order == 0 {
        return Err(Error::Domain("quadrature order must be at least 1".into()));
    }
    let m = order as f64;
    let nodes: Vec<f64> = (0..order)
        .map(|i| {
            // ascending order
            let k = order - i;
            ((2.0 * k as f64 - 1.0) * std::f64::consts::PI / (2.0 * m)).cos()
        })
        .collect();
    let weights = vec![std::f64::consts::PI / m; order];
    Ok(QuadratureRule {
        nodes,
        weights,
        alpha: -0.5,
        beta: -0.5,
    })
}

/// Fourier–Gegenbauer projection: coefficients
/// a_n = (1/h_n^λ) ∫ f(t) C_n^λ(t) (1−t²)^{λ−1/2} dt for n ≤ max_degree,
/// with the quadrature order defaulting to max_degree + 16.
pub fn project(f: &ZonalFunction, lambda: f64, max_degree: usize) -> Result<GegenbauerSeries> {
    project_with_order(f, lambda, max_degree, max_degree + 16)
}

/// Projection with an explicit quadrature order; callers double the
/// order for operator images with mild endpoint kinks.
pub fn project_with_order(
    f: &ZonalFunction,
    lambda: f64,
    max_degree: usize,
    order: usize,
) -> Result<GegenbauerSeries> {
    if lambda < 0.0 {
        return Err(Error::Domain(format!(
            "projection requires lambda >= 0, got {lambda}"
        )));
    }
    if max_degree > MAX_DEGREE {
        return Err(Error::Domain(format!(
            "projection degree {max_degree} exceeds the cap {MAX_DEGREE}"
        )));
    }
    let order = order.max(max_degree + 1);
    let rule = if lambda == 0.0 {
        chebyshev_gauss(order)?
    } else {
        gauss_jacobi(order, lambda - 0.5, lambda - 0.5)?
    };

    let values: Vec<f64> = rule.nodes().iter().map(|&x| f.eval(x)).collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain(
            "projection input produced a non-finite value on the quadrature grid".into(),
        ));
    }

    // One recurrence pass per node fills the basis values up to max_degree.
    let basis: Vec<Vec<f64>> = rule
        .nodes()
        .par_iter()
        .map(|&x| basis_column(lambda, max_degree, x))
        .collect();

    let coefficients: Vec<f64> = (0..=max_degree)
        .into_par_iter()
        .map(|n| {
            let mut acc = 0.0;
            for i in 0..rule.order() {
                acc += rule.weights()[i] * values[i] * basis[i][n];
            }
            acc / gegenbauer::norm_h(lambda, n).expect("lambda validated above")
        })
        .collect();

    GegenbauerSeries::new(lambda, coefficients)
}

fn basis_column(lambda: f64, max_degree: usize, x: f64) -> Vec<f64> {
    let mut col = Vec::with_capacity(max_degree + 1);
    col.push(1.0);
    if max_degree == 0 {
        return col;
    }
    if lambda == 0.0 {
        col.push(x);
        for _ in 2..=max_degree {
            let next = 2.0 * x * col[col.len() - 1] - col[col.len() - 2];
            col.push(next);
        }
    } else {
        col.push(2.0 * lambda * x);
        for n in 2..=max_degree {
            let nf = n as f64;
            let next = (2.0 * (nf + lambda - 1.0) * x * col[n - 1]
                - (nf + 2.0 * lambda - 2.0) * col[n - 2])
                / nf;
            col.push(next);
        }
    }
    col
}

/// Default order of the rule behind the fractional integrals.
pub const FRACTIONAL_ORDER: usize = 64;

/// Rule for ∫₀¹ (1−s)^{−1/2} s^ν g(s) ds with smooth g: a Gauss–Jacobi
/// rule on (−1, 1) carrying the whole singular weight, so the change of
/// variables τ = (x+1)s − 1 (or its mirror) makes every fractional
/// integral here an exact polynomial rule.
#[derive(Debug, Clone)]
pub struct FractionalRule {
    points: Vec<f64>,
    weights: Vec<f64>,
}

impl FractionalRule {
    pub fn new(nu: f64, order: usize) -> Result<FractionalRule> {
        let rule = gauss_jacobi(order, -0.5, nu)?;
        let scale = 2f64.powf(-nu - 0.5);
        Ok(FractionalRule {
            points: rule.nodes().iter().map(|&v| 0.5 * (v + 1.0)).collect(),
            weights: rule.weights().iter().map(|&w| scale * w).collect(),
        })
    }

    /// ∫₀¹ (1−s)^{−1/2} s^ν g(s) ds.
    pub fn integrate(&self, g: impl Fn(f64) -> f64) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .fold(0.0, |acc, (&s, &w)| acc + w * g(s))
    }

    /// Unit-interval abscissae s_i.
    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// Weights including the singular-weight mass.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// Inner fractional integral with exponent ν on the one-sided weight:
/// plus side ∫_{−1}^x (x−τ)^{−1/2} (1+τ)^ν f(τ) dτ, minus side the
/// mirrored ∫_x^1 (τ−x)^{−1/2} (1−τ)^ν f(τ) dτ.
pub fn fractional_inner_integral(
    f: &ZonalFunction,
    x: f64,
    side: Side,
    nu: f64,
    order: usize,
) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("argument x = {x} outside [-1, 1]")));
    }
    let rule = FractionalRule::new(nu, order)?;
    Ok(inner_with_rule(&rule, f, x, side, nu))
}

pub(crate) fn inner_with_rule(
    rule: &FractionalRule,
    f: &ZonalFunction,
    x: f64,
    side: Side,
    nu: f64,
) -> f64 {
    match side {
        Side::Plus => (x + 1.0).powf(nu + 0.5) * rule.integrate(|s| f.eval((x + 1.0) * s - 1.0)),
        Side::Minus => (1.0 - x).powf(nu + 0.5) * rule.integrate(|s| f.eval(1.0 - (1.0 - x) * s)),
    }
}

/// The half-step fractional integral I^λ_± f(x): the inner integral with
/// exponent λ times the prefactor (1±x)^{−λ+1/2}. The prefactor cancels
/// against the inner (1±x)^{λ+1/2}, leaving (1±x) times a smooth sum, so
/// the vanishing endpoint limits (x = −1 on the plus side, x = +1 on the
/// minus side) come out exactly zero.
pub fn halfweight_fractional_integral(
    f: &ZonalFunction,
    x: f64,
    side: Side,
    lambda: f64,
) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("argument x = {x} outside [-1, 1]")));
    }
    if !(lambda > -0.5) {
        return Err(Error::Domain(format!(
            "halfweight integral requires lambda > -1/2 for an integrable weight, got {lambda}"
        )));
    }
    let rule = FractionalRule::new(lambda, FRACTIONAL_ORDER)?;
    Ok(halfweight_with_rule(&rule, f, x, side))
}

pub(crate) fn halfweight_with_rule(
    rule: &FractionalRule,
    f: &ZonalFunction,
    x: f64,
    side: Side,
) -> f64 {
    match side {
        Side::Plus => (1.0 + x) * rule.integrate(|s| f.eval((x + 1.0) * s - 1.0)),
        Side::Minus => (1.0 - x) * rule.integrate(|s| f.eval(1.0 - (1.0 - x) * s)),
    }
}
