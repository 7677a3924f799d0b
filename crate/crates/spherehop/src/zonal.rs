//! Evaluable zonal kernels f(cos θ) on [−1, 1].

use crate::gegenbauer::GegenbauerSeries;
use std::fmt;
use std::sync::Arc;

type EvalFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A zonal function: anything evaluable on [−1, 1], optionally carrying
/// an analytic derivative. Values are immutable after construction and
/// safe to evaluate from any number of threads.
///
/// Variants in practice: closed-form covariance models, truncated
/// series, and operator images wrapping a quadrature rule.
#[derive(Clone)]
pub struct ZonalFunction {
    eval: EvalFn,
    derivative: Option<EvalFn>,
}

impl fmt::Debug for ZonalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ZonalFunction")
            .field("has_derivative", &self.derivative.is_some())
            .finish()
    }
}

impl ZonalFunction {
    /// Wraps a plain evaluation closure.
    pub fn from_fn(eval: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        ZonalFunction {
            eval: Arc::new(eval),
            derivative: None,
        }
    }

    /// Wraps an evaluation closure together with its analytic derivative.
    pub fn from_fn_with_derivative(
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
        derivative: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        ZonalFunction {
            eval: Arc::new(eval),
            derivative: Some(Arc::new(derivative)),
        }
    }

    /// A truncated expansion as a zonal function; the derivative comes
    /// from the termwise ladder and is always available.
    pub fn from_series(series: &GegenbauerSeries) -> Self {
        let s = series.clone();
        let d = series
            .derivative_series()
            .expect("derivative of a valid series is valid");
        ZonalFunction {
            eval: Arc::new(move |x| s.eval_unchecked(x)),
            derivative: Some(Arc::new(move |x| d.eval_unchecked(x))),
        }
    }

    pub fn constant(value: f64) -> Self {
        ZonalFunction {
            eval: Arc::new(move |_| value),
            derivative: Some(Arc::new(|_| 0.0)),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    pub fn has_derivative(&self) -> bool {
        self.derivative.is_some()
    }

    /// Analytic derivative value, if one was attached.
    pub fn derivative(&self, x: f64) -> Option<f64> {
        self.derivative.as_ref().map(|d| d(x))
    }
}
