use casimir_core::casimir::{force, force_bessel_series, massless_force, DimensionlessGap};
use casimir_core::quadrature::{integrate_finite, integrate_semi_infinite, Tolerance};
use casimir_core::{ParticleMass, PlateSeparation};
use proptest::prelude::*;

fn sep(a: f64) -> PlateSeparation {
    PlateSeparation::new(a).unwrap()
}

fn mass(m: f64) -> ParticleMass {
    ParticleMass::new(m).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn quadrature_is_linear(alpha in -3.0f64..3.0, beta in -3.0f64..3.0, w in 0.5f64..4.0) {
        let tol = Tolerance::default();
        let f = |x: f64| (-w * x).exp() * x.sqrt();
        let g = |x: f64| (-x).exp() * (w * x).cos();
        let lhs = integrate_semi_infinite(|x| alpha * f(x) + beta * g(x), 0.0, tol).unwrap();
        let fi = integrate_semi_infinite(f, 0.0, tol).unwrap();
        let gi = integrate_semi_infinite(g, 0.0, tol).unwrap();
        let rhs = alpha * fi.value + beta * gi.value;
        let slack = lhs.error_estimate + alpha.abs() * fi.error_estimate + beta.abs() * gi.error_estimate;
        prop_assert!((lhs.value - rhs).abs() <= slack.max(1e-12));
    }

    #[test]
    fn quadrature_is_additive(lo in -2.0f64..0.0, width in 0.5f64..5.0, split in 0.05f64..0.95) {
        let tol = Tolerance::default();
        let f = |x: f64| (x * 1.7).sin() * (-0.1 * x * x).exp() + 1.5;
        let hi = lo + width;
        let mid = lo + split * width;
        let whole = integrate_finite(f, lo, hi, tol).unwrap();
        let left = integrate_finite(f, lo, mid, tol).unwrap();
        let right = integrate_finite(f, mid, hi, tol).unwrap();
        let slack = whole.error_estimate + left.error_estimate + right.error_estimate;
        prop_assert!((whole.value - left.value - right.value).abs() <= slack.max(1e-12 * whole.value.abs()));
    }

    #[test]
    fn similarity_law(am in 0.01f64..8.0, a in 0.2f64..5.0) {
        let tol = Tolerance::default();
        let f1 = force(sep(1.0), mass(am), tol).unwrap().magnitude();
        let f2 = force(sep(a), mass(am / a), tol).unwrap().magnitude();
        prop_assert!(((f2 * a.powi(4) - f1) / f1).abs() < 1e-9);
    }

    #[test]
    fn heavier_is_weaker(a in 0.05f64..5.0, m in 0.01f64..10.0, dm in 0.01f64..2.0) {
        let tol = Tolerance::default();
        let light = force(sep(a), mass(m), tol).unwrap().magnitude();
        let heavy = force(sep(a), mass(m + dm), tol).unwrap().magnitude();
        prop_assert!(heavy < light);
        prop_assert!(light < massless_force(sep(a)).magnitude());
    }

    #[test]
    fn farther_is_weaker(a in 0.05f64..5.0, m in 0.0f64..5.0, da in 0.01f64..1.0) {
        let tol = Tolerance::default();
        let near = force(sep(a), mass(m), tol).unwrap().magnitude();
        let far = force(sep(a + da), mass(m), tol).unwrap().magnitude();
        prop_assert!(far < near);
    }

    #[test]
    fn series_tracks_integral(x0 in 0.01f64..20.0, a in 0.1f64..10.0) {
        let m = mass(x0 / (2.0 * a));
        let i = force(sep(a), m, Tolerance::default()).unwrap().force.value();
        let s = force_bessel_series(sep(a), m).unwrap().force.value();
        prop_assert!(((i - s) / s).abs() <= 1e-8);
    }
}

#[test]
fn gap_from_transverse_momentum() {
    let g = DimensionlessGap::with_transverse(sep(0.5), mass(3.0), 4.0);
    assert_eq!(g.value(), 5.0);
    assert_eq!(DimensionlessGap::reduced(sep(0.5), mass(3.0)).value(), 3.0);
}
