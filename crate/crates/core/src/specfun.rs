//! Modified Bessel functions of the second kind, orders 0, 1 and 2.
//!
//! K₀ and K₁ come from their ascending series (with the logarithmic term) for
//! x ≤ 2 and from Steed's continued fraction for larger x, which yields the
//! scaled values eˣK₀, eˣK₁ directly. K₂ follows from the recurrence
//! K₂ = K₀ + (2/x)K₁.

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402;
const SERIES_LIMIT: f64 = 2.0;
const MAX_ITER: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BesselOrder {
    Zero,
    One,
    Two,
}

impl BesselOrder {
    pub fn as_u32(self) -> u32 {
        match self {
            BesselOrder::Zero => 0,
            BesselOrder::One => 1,
            BesselOrder::Two => 2,
        }
    }
}

impl TryFrom<u32> for BesselOrder {
    type Error = Error;

    fn try_from(order: u32) -> Result<Self> {
        match order {
            0 => Ok(BesselOrder::Zero),
            1 => Ok(BesselOrder::One),
            2 => Ok(BesselOrder::Two),
            n => Err(Error::domain(format!(
                "only Bessel K orders 0, 1, 2 are supported, got {n}"
            ))),
        }
    }
}

fn check_argument(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "Bessel K requires a positive finite argument, got {x}"
        )))
    }
}

/// K_order(x).
pub fn bessel_k(order: BesselOrder, x: f64) -> Result<f64> {
    check_argument(x)?;
    if x <= SERIES_LIMIT {
        let (k0, k1) = k01_series(x);
        return Ok(select(order, x, k0, k1));
    }
    let scaled = select_scaled(order, x);
    // ln-space recombination keeps precision into the subnormal range.
    Ok((scaled.ln() - x).exp())
}

/// eˣ·K_order(x).
pub fn bessel_k_scaled(order: BesselOrder, x: f64) -> Result<f64> {
    check_argument(x)?;
    if x <= SERIES_LIMIT {
        let (k0, k1) = k01_series(x);
        return Ok(select(order, x, k0, k1) * x.exp());
    }
    Ok(select_scaled(order, x))
}

fn select(order: BesselOrder, x: f64, k0: f64, k1: f64) -> f64 {
    match order {
        BesselOrder::Zero => k0,
        BesselOrder::One => k1,
        BesselOrder::Two => k0 + 2.0 * k1 / x,
    }
}

fn select_scaled(order: BesselOrder, x: f64) -> f64 {
    let (k0, k1) = k01_scaled_cf(x);
    select(order, x, k0, k1)
}

/// Ascending series for K₀ and K₁, x ≤ 2.
fn k01_series(x: f64) -> (f64, f64) {
    let y = 0.25 * x * x;
    let log_half = (0.5 * x).ln();

    // term0 = y^k / (k!)², term1 = y^k / (k!(k+1)!), psi = ψ(k+1).
    let mut term0 = 1.0;
    let mut term1 = 1.0;
    let mut psi = -EULER_GAMMA;
    let mut i0 = 0.0;
    let mut k0_sum = 0.0;
    let mut i1_sum = 0.0;
    let mut k1_sum = 0.0;

    for k in 0..MAX_ITER {
        let kf = k as f64;
        let psi_next = psi + 1.0 / (kf + 1.0);
        i0 += term0;
        k0_sum += psi * term0;
        i1_sum += term1;
        k1_sum += (psi + psi_next) * term1;
        if term0 < 1e-18 * i0 && term1 < 1e-18 * i1_sum {
            break;
        }
        term0 *= y / ((kf + 1.0) * (kf + 1.0));
        term1 *= y / ((kf + 1.0) * (kf + 2.0));
        psi = psi_next;
    }

    let k0 = -log_half * i0 + k0_sum;
    let i1 = 0.5 * x * i1_sum;
    let k1 = 1.0 / x + log_half * i1 - 0.25 * x * k1_sum;
    (k0, k1)
}

/// Steed's continued fraction (Temme's normalization) for eˣK₀, eˣK₁, x > 2.
fn k01_scaled_cf(x: f64) -> (f64, f64) {
    let a1 = 0.25;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;

    for i in 2..MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 0.5 * f64::EPSILON {
            break;
        }
    }

    h *= a1;
    let k0 = (std::f64::consts::PI / (2.0 * x)).sqrt() / s;
    let k1 = k0 * (x + 0.5 - h) / x;
    (k0, k1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use BesselOrder::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn reference_values_at_one() {
        // Frozen from quadrature of ∫₀^∞ e^{-x cosh t} cosh(νt) dt (see tests/specfun_oracle.rs).
        assert!(rel(bessel_k(Zero, 1.0).unwrap(), 0.421_024_438_240_708_3) < 1e-13);
        assert!(rel(bessel_k(One, 1.0).unwrap(), 0.601_907_230_197_234_6) < 1e-13);
        assert!(rel(bessel_k_scaled(Zero, 1.0).unwrap(), 1.144_463_079_806_895_4) < 1e-13);
    }

    #[test]
    fn matches_across_the_branch_point() {
        for order in [Zero, One, Two] {
            let below = k01_series(2.0);
            let below = select(order, 2.0, below.0, below.1) * 2f64.exp();
            let above = select_scaled(order, 2.0);
            assert!(rel(below, above) < 1e-13, "{order:?}: {below} vs {above}");
        }
    }

    #[test]
    fn recurrence_for_order_two() {
        for x in [0.5, 1.0, 5.0, 20.0] {
            let k0 = bessel_k(Zero, x).unwrap();
            let k1 = bessel_k(One, x).unwrap();
            let k2 = bessel_k(Two, x).unwrap();
            assert!(rel(k2, k0 + 2.0 * k1 / x) < 1e-14);
        }
    }

    #[test]
    fn scaled_and_unscaled_agree() {
        let lhs = bessel_k_scaled(One, 3.0).unwrap() * (-3f64).exp();
        assert!(rel(lhs, bessel_k(One, 3.0).unwrap()) < 1e-12);
    }

    #[test]
    fn large_argument_asymptote() {
        // The first correction is (4ν² − 1)/(8x), so order 2 needs x ≳ 190.
        for (order, start) in [(Zero, 50.0), (One, 50.0), (Two, 200.0)] {
            for x in [start, 500.0, 1e4] {
                let v =
                    bessel_k_scaled(order, x).unwrap() * (2.0 * x / std::f64::consts::PI).sqrt();
                assert!((v - 1.0).abs() < 0.01, "{order:?} {x} {v}");
            }
        }
    }

    #[test]
    fn unscaled_reaches_subnormal_range() {
        let v = bessel_k(Zero, 720.0).unwrap();
        assert!(v > 0.0 && v < 1e-300);
        assert_eq!(bessel_k(One, 1000.0).unwrap(), 0.0);
        assert!(bessel_k_scaled(One, 1000.0).unwrap().is_finite());
    }

    #[test]
    fn domain_errors() {
        assert!(bessel_k(Zero, 0.0).is_err());
        assert!(bessel_k(One, -1.0).is_err());
        assert!(bessel_k_scaled(Two, f64::NAN).is_err());
        assert!(BesselOrder::try_from(3).is_err());
        assert_eq!(BesselOrder::try_from(2).unwrap(), Two);
    }

    #[test]
    fn strictly_decreasing() {
        let mut prev = [f64::INFINITY; 3];
        for i in 0..200 {
            let x = 1e-3 * 10f64.powf(i as f64 * 5.5 / 199.0);
            for (j, order) in [Zero, One, Two].into_iter().enumerate() {
                let v = bessel_k(order, x).unwrap();
                assert!(v < prev[j]);
                prev[j] = v;
            }
        }
    }
}
