//! Adaptive Gauss–Kronrod (10/21-point) integration on finite and
//! semi-infinite intervals.
//!
//! Subdivision is globally adaptive: the segment with the largest error
//! estimate is bisected until the summed estimate meets the tolerance. Ties
//! are broken by creation order so results are bit-stable for a given
//! integrand. Nodes never touch the interval endpoints, so integrable endpoint
//! singularities are handled by subdivision alone.

#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::error::{Error as CrateError, Result as CrateResult};

/// Maximum number of live segments before giving up.
const MAX_SEGMENTS: usize = 4000;

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_980_081_160,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Gauss weights paired with the odd-indexed Kronrod nodes.
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Relative and absolute accuracy request. Convergence is declared when the
/// error estimate is at most `max(abs, rel·|value|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    rel: f64,
    abs: f64,
}

impl Tolerance {
    pub const DEFAULT_REL: f64 = 1e-10;
    pub const DEFAULT_ABS: f64 = 1e-30;

    pub fn new(rel: f64, abs: f64) -> CrateResult<Self> {
        if !(rel > 0.0 && rel < 1.0) {
            return Err(CrateError::domain(format!(
                "relative tolerance must lie in (0, 1), got {rel}"
            )));
        }
        if !(abs > 0.0 && abs.is_finite()) {
            return Err(CrateError::domain(format!(
                "absolute tolerance must be positive, got {abs}"
            )));
        }
        Ok(Self { rel, abs })
    }

    /// Relative tolerance with the default absolute floor.
    pub fn relative(rel: f64) -> CrateResult<Self> {
        Self::new(rel, Self::DEFAULT_ABS)
    }

    #[inline]
    pub fn rel(&self) -> f64 {
        self.rel
    }

    #[inline]
    pub fn abs(&self) -> f64 {
        self.abs
    }

    /// Same tolerance divided by `factor`, clamped so it stays meaningful in
    /// double precision. Used for inner integrals of nested evaluations.
    pub fn tightened(&self, factor: f64) -> Self {
        Self {
            rel: (self.rel / factor).max(4.0 * f64::EPSILON),
            abs: (self.abs / factor).max(f64::MIN_POSITIVE),
        }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs.max(self.rel * value.abs())
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rel: Self::DEFAULT_REL,
            abs: Self::DEFAULT_ABS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadratureError {
    #[error("invalid integration interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("integrand returned a non-finite value at x = {at}")]
    NonFinite { at: f64 },

    #[error(
        "quadrature did not converge: best estimate {} with error {}",
        best.value,
        best.error_estimate
    )]
    NonConvergence { best: QuadratureResult },
}

pub type Result<T> = std::result::Result<T, QuadratureError>;

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
    order: usize,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    // Max-heap on error; earlier segments win ties.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.order.cmp(&self.order))
    }
}

/// QUADPACK-style error rescaling of |K21 − G10|.
fn rescale_error(raw: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut err = raw.abs();
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    err
}

fn gauss_kronrod_21<F>(f: &F, lo: f64, hi: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);

    let eval = |x: f64| -> Result<f64> {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(QuadratureError::NonFinite { at: x })
        }
    };

    let f_center = eval(center)?;
    let mut res_k = WGK[10] * f_center;
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    let mut left = [0.0; 10];
    let mut right = [0.0; 10];

    for j in 0..10 {
        let dx = half * XGK[j];
        let fl = eval(center - dx)?;
        let fr = eval(center + dx)?;
        left[j] = fl;
        right[j] = fr;
        res_k += WGK[j] * (fl + fr);
        res_abs += WGK[j] * (fl.abs() + fr.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (fl + fr);
        }
    }

    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (f_center - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((left[j] - mean).abs() + (right[j] - mean).abs());
    }

    let scale = half.abs();
    let value = res_k * half;
    let error = rescale_error((res_k - res_g) * half, res_abs * scale, res_asc * scale);
    Ok((value, error))
}

/// Integrates `f` over the finite interval `[lo, hi]`.
pub fn integrate_finite<F>(f: F, lo: f64, hi: f64, tol: Tolerance) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(QuadratureError::InvalidInterval { lo, hi });
    }

    let (value, error) = gauss_kronrod_21(&f, lo, hi)?;
    let mut evaluations = 21;
    let mut order = 0;
    let mut heap = BinaryHeap::new();
    // Segments too narrow to bisect further in floating point.
    let mut frozen: Vec<Segment> = Vec::new();
    heap.push(Segment {
        lo,
        hi,
        value,
        error,
        order,
    });
    let mut total = value;
    let mut total_err = error;

    loop {
        if total_err <= tol.target(total) {
            // Recompute the sums exactly before accepting.
            let (v, e) = sums(heap.iter().chain(frozen.iter()));
            total = v;
            total_err = e;
            if total_err <= tol.target(total) {
                break;
            }
        }
        if heap.len() + frozen.len() >= MAX_SEGMENTS {
            let (v, e) = sums(heap.iter().chain(frozen.iter()));
            return Err(QuadratureError::NonConvergence {
                best: QuadratureResult {
                    value: v,
                    error_estimate: e,
                    evaluations,
                },
            });
        }
        let Some(worst) = heap.pop() else {
            break;
        };
        let mid = 0.5 * (worst.lo + worst.hi);
        if !(worst.lo < mid && mid < worst.hi) {
            frozen.push(worst);
            continue;
        }

        let (v1, e1) = gauss_kronrod_21(&f, worst.lo, mid)?;
        let (v2, e2) = gauss_kronrod_21(&f, mid, worst.hi)?;
        evaluations += 42;

        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;

        order += 1;
        heap.push(Segment {
            lo: worst.lo,
            hi: mid,
            value: v1,
            error: e1,
            order,
        });
        order += 1;
        heap.push(Segment {
            lo: mid,
            hi: worst.hi,
            value: v2,
            error: e2,
            order,
        });
    }

    let (value, error_estimate) = sums(heap.iter().chain(frozen.iter()));
    let result = QuadratureResult {
        value,
        error_estimate,
        evaluations,
    };
    if error_estimate <= tol.target(value) {
        Ok(result)
    } else {
        Err(QuadratureError::NonConvergence { best: result })
    }
}

/// Sums segment values in ascending position so the result does not depend
/// on heap layout.
fn sums<'a>(segments: impl Iterator<Item = &'a Segment>) -> (f64, f64) {
    let mut all: Vec<&Segment> = segments.collect();
    all.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    all.iter()
        .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error))
}

/// Integrates `f` over `[lo, ∞)` using the map `x = lo + t/(1 − t)`.
pub fn integrate_semi_infinite<F>(f: F, lo: f64, tol: Tolerance) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    integrate_semi_infinite_scaled(f, lo, 1.0, tol)
}

/// Integrates `f` over `[lo, ∞)` using `x = lo + scale·t/(1 − t)`. `scale`
/// should be comparable to the decay length of the integrand.
pub fn integrate_semi_infinite_scaled<F>(
    f: F,
    lo: f64,
    scale: f64,
    tol: Tolerance,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    if !lo.is_finite() || !(scale > 0.0 && scale.is_finite()) {
        return Err(QuadratureError::InvalidInterval {
            lo,
            hi: f64::INFINITY,
        });
    }
    let mapped = |t: f64| {
        let s = 1.0 - t;
        let x = lo + scale * t / s;
        let fx = f(x);
        if fx == 0.0 {
            0.0
        } else {
            fx * scale / (s * s)
        }
    };
    integrate_finite(mapped, 0.0, 1.0, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn kronrod_weights_sum_to_two() {
        let k: f64 = WGK[10] + 2.0 * WGK[..10].iter().sum::<f64>();
        let g: f64 = 2.0 * WG.iter().sum::<f64>();
        assert!((k - 2.0).abs() < 1e-15);
        assert!((g - 2.0).abs() < 1e-15);
    }

    #[test]
    fn polynomials_are_exact_on_one_panel() {
        // K21 is exact through degree 31.
        let (v, _) = gauss_kronrod_21(&|x: f64| x.powi(30), -1.0, 1.0).unwrap();
        assert!(rel(v, 2.0 / 31.0) < 1e-14);
    }

    #[test]
    fn inverse_sqrt_singularity() {
        let r = integrate_finite(|x| 1.0 / x.sqrt(), 0.0, 1.0, Tolerance::default()).unwrap();
        assert!(rel(r.value, 2.0) < 1e-10, "{r:?}");
        assert!((r.value - 2.0).abs() <= r.error_estimate.max(1e-12));
    }

    #[test]
    fn sine_over_half_period() {
        let r = integrate_finite(f64::sin, 0.0, PI, Tolerance::default()).unwrap();
        assert!(rel(r.value, 2.0) < 1e-12);
        assert!(r.evaluations >= 21);
    }

    #[test]
    fn bose_integral_first_moment() {
        let r = integrate_semi_infinite(|y| y / y.exp_m1(), 0.0, Tolerance::default()).unwrap();
        assert!(rel(r.value, PI * PI / 6.0) < 1e-10);
    }

    #[test]
    fn exponential_tail() {
        let r = integrate_semi_infinite(|x| (-x).exp(), 0.0, Tolerance::default()).unwrap();
        assert!(rel(r.value, 1.0) < 1e-12);
    }

    #[test]
    fn bose_integral_third_moment() {
        let r = integrate_semi_infinite(
            |x| {
                if x > 700.0 {
                    0.0
                } else {
                    x.powi(3) / x.exp_m1()
                }
            },
            0.0,
            Tolerance::default(),
        )
        .unwrap();
        assert!(rel(r.value, PI.powi(4) / 15.0) < 1e-10);
    }

    #[test]
    fn damped_exponential() {
        let c = 1f64.cosh();
        let r = integrate_semi_infinite(|x| (-x * c).exp(), 0.0, Tolerance::default()).unwrap();
        assert!(rel(r.value, 1.0 / c) < 1e-12);
    }

    #[test]
    fn lorentzian_with_scaled_map() {
        let r =
            integrate_semi_infinite_scaled(|x| 1.0 / (1.0 + x * x), 0.0, 1.0, Tolerance::default())
                .unwrap();
        assert!(rel(r.value, FRAC_PI_2) < 1e-10);
    }

    #[test]
    fn nan_is_reported() {
        let err = integrate_finite(|_| f64::NAN, 0.0, 1.0, Tolerance::default()).unwrap_err();
        assert!(matches!(err, QuadratureError::NonFinite { .. }));
    }

    #[test]
    fn bad_interval() {
        let err = integrate_finite(|x| x, 1.0, 0.0, Tolerance::default()).unwrap_err();
        assert!(matches!(err, QuadratureError::InvalidInterval { .. }));
        assert!(integrate_finite(|x| x, 0.0, f64::INFINITY, Tolerance::default()).is_err());
    }

    #[test]
    fn non_integrable_singularity_fails_to_converge() {
        // Bisection either exhausts the budget or drives 1/x to overflow.
        let err = integrate_finite(|x| 1.0 / x, 0.0, 1.0, Tolerance::default()).unwrap_err();
        match err {
            QuadratureError::NonConvergence { best } => assert!(best.value > 10.0),
            QuadratureError::NonFinite { at } => assert!(at < 1e-300),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn tolerance_validation() {
        assert!(Tolerance::new(0.0, 1e-30).is_err());
        assert!(Tolerance::new(1.0, 1e-30).is_err());
        assert!(Tolerance::new(1e-8, 0.0).is_err());
        assert!(Tolerance::new(1e-8, 1e-12).is_ok());
        let t = Tolerance::default().tightened(1e10);
        assert!(t.rel() >= 4.0 * f64::EPSILON);
    }

    #[test]
    fn deterministic() {
        let f = |x: f64| (x * 3.0).sin().abs().sqrt() * (-x).exp();
        let a = integrate_semi_infinite(f, 0.0, Tolerance::default()).unwrap();
        let b = integrate_semi_infinite(f, 0.0, Tolerance::default()).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.evaluations, b.evaluations);
    }
}
