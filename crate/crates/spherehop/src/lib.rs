//! Dimension-hopping operators for zonal positive definite functions on
//! spheres: fractional half-step integrals and derivatives realized both
//! as singular quadrature on functions and as exact spectral multiplier
//! maps on Gegenbauer expansions, with positive-definiteness checks and
//! the closed-form covariance model families they act on.
//!
//! A kernel positive definite on S³ (basis parameter λ = 1), pushed one
//! dimension down and verified:
//!
//! ```
//! use spherehop::models::{pd_report, CauchySphereModel, PdCheckConfig, Verdict};
//! use spherehop::operators::apply_ci_spectral;
//! use spherehop::quadrature::project;
//! use spherehop::Side;
//!
//! let model = CauchySphereModel::new(4.0)?.zonal();
//! let on_s3 = project(&model, 1.0, 16)?;            // expansion at λ = 1
//! let on_s2 = apply_ci_spectral(Side::Plus, 0.5, &on_s3)?; // λ = 1/2
//! let report = pd_report(&on_s2, None, 3, &PdCheckConfig::default())?;
//! assert_ne!(report.verdict, Verdict::Inconsistent);
//! # Ok::<(), spherehop::Error>(())
//! ```

// `!(x > 0.0)` in the domain guards rejects NaN along with the out-of-range
// values; the comparison the lint suggests would let NaN through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::manual_is_multiple_of)]

pub mod error;
pub mod gegenbauer;
pub mod models;
pub mod operators;
pub mod quadrature;
pub mod special;
pub mod verify;
pub mod zonal;

pub use error::{Error, Result};
pub use gegenbauer::{BasisKind, GegenbauerSeries, Side};
pub use models::{PdCheckConfig, PdReport, SpherePointSet, Verdict};
pub use operators::{EvalMode, OperatorInput, OperatorKind, OperatorSpec};
pub use quadrature::QuadratureRule;
pub use zonal::ZonalFunction;
