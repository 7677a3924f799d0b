//! Property-based invariants over randomized parameters.

use proptest::prelude::*;
use spherehop::gegenbauer::{reflection_check, GegenbauerSeries};
use spherehop::models::{gram_check, sample_sphere};
use spherehop::operators::{cd_multiplier, ci_multiplier};
use spherehop::quadrature::project;
use spherehop::special::{beta, hyp2f1_terminating, pochhammer};
use spherehop::zonal::ZonalFunction;
use spherehop::Side;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn beta_is_symmetric(p in 0.01f64..10.0, q in 0.01f64..10.0) {
        let a = beta(p, q).unwrap();
        let b = beta(q, p).unwrap();
        prop_assert!((a - b).abs() <= 1e-13 * a.abs());
    }

    #[test]
    fn pochhammer_recurrence(a in -5.0f64..5.0, k in 0u32..20) {
        let lhs = pochhammer(a, k + 1);
        let rhs = pochhammer(a, k) * (a + k as f64);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()));
    }

    #[test]
    fn hypergeometric_power_identity(
        n in 0u32..15,
        b in prop::sample::select(vec![0.5f64, 1.0, 1.5, 2.5, 4.0]),
        z in -0.95f64..0.95,
    ) {
        let lhs = hyp2f1_terminating(n, b, b, z).unwrap();
        let rhs = (1.0 - z).powi(n as i32);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()));
    }

    #[test]
    fn gegenbauer_reflection(
        lambda in prop::sample::select(vec![0.5f64, 1.0, 1.5, 2.5]),
        n in 0usize..30,
        x in -1.0f64..1.0,
    ) {
        let (lhs, rhs) = reflection_check(lambda, n, x).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-11 * (1.0 + rhs.abs()));
    }

    #[test]
    fn multipliers_never_negative(
        lambda in prop::sample::select(vec![0.0f64, 0.5, 1.0, 2.5, 8.0]),
        n in 0usize..2000,
    ) {
        for side in [Side::Plus, Side::Minus] {
            prop_assert!(ci_multiplier(side, lambda, n).unwrap() >= 0.0);
            prop_assert!(cd_multiplier(side, lambda, n).unwrap() >= 0.0);
        }
    }

    #[test]
    fn projection_round_trip(
        lambda in prop::sample::select(vec![0.0f64, 0.5, 1.0, 2.5]),
        coeffs in prop::collection::vec(-1.0f64..1.0, 1..16),
    ) {
        let s = GegenbauerSeries::new(lambda, coeffs).unwrap();
        let f = ZonalFunction::from_series(&s);
        let p = project(&f, lambda, s.degree()).unwrap();
        for n in 0..=s.degree() {
            let original = s.coefficients().get(n).copied().unwrap_or(0.0);
            let recovered = p.coefficients().get(n).copied().unwrap_or(0.0);
            prop_assert!((original - recovered).abs() <= 1e-10);
        }
    }

    #[test]
    fn nonnegative_series_pass_the_gram_test(
        dimension in 3usize..=5,
        seed in 0u64..1000,
        coeffs in prop::collection::vec(0.0f64..1.0, 1..21),
    ) {
        let lambda = (dimension as f64 - 2.0) / 2.0;
        let s = GegenbauerSeries::new(lambda, coeffs).unwrap();
        let f = ZonalFunction::from_series(&s);
        let pts = sample_sphere(dimension, 25, seed).unwrap();
        let gram = gram_check(&f, &pts, 1e-8).unwrap();
        prop_assert!(
            gram.min_eigenvalue >= -1e-8 * gram.max_eigenvalue.max(0.0),
            "min {} max {}", gram.min_eigenvalue, gram.max_eigenvalue
        );
    }

    #[test]
    fn series_json_round_trip(
        lambda in prop::sample::select(vec![0.0f64, 0.5, 1.0, 1.75]),
        coeffs in prop::collection::vec(-10.0f64..10.0, 1..12),
    ) {
        let s = GegenbauerSeries::new(lambda, coeffs).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        let back: GegenbauerSeries = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, s);
    }
}
