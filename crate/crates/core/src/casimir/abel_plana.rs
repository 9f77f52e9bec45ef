//! Numerical check of the Abel–Plana summation formula,
//!
//! ```text
//! Σ_{n≥0} f(n) = ∫₀^∞ f(t) dt + f(0)/2 + i∫₀^∞ [f(it) − f(−it)]/(e^{2πt} − 1) dt,
//! ```
//!
//! on test functions whose sums and integrals are known independently. For
//! functions with simple poles on the imaginary axis the contour must be
//! indented around them, which adds πi·[Res₊ − Res₋]/(e^{2πβ} − 1) per pole
//! pair at ±iβ.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_semi_infinite_scaled, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AbelPlanaFamily {
    /// f(t) = e^{−rate·t}
    Exponential { rate: f64 },
    /// f(t) = 1/(t² + width²)
    Lorentzian { width: f64 },
}

/// The individual pieces of the identity and how far it is from closing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbelPlanaTerms {
    pub sum: f64,
    pub integral: f64,
    pub boundary: f64,
    pub axis_correction: f64,
    pub pole_correction: f64,
    pub residual: f64,
}

impl AbelPlanaFamily {
    pub const BUILTIN: [AbelPlanaFamily; 3] = [
        AbelPlanaFamily::Exponential { rate: 1.0 },
        AbelPlanaFamily::Lorentzian { width: 1.0 },
        AbelPlanaFamily::Exponential { rate: 2.0 },
    ];

    fn validate(self) -> Result<Self> {
        let p = match self {
            AbelPlanaFamily::Exponential { rate } => rate,
            AbelPlanaFamily::Lorentzian { width } => width,
        };
        if p > 0.0 && p.is_finite() {
            Ok(self)
        } else {
            Err(Error::domain(format!(
                "unsupported Abel-Plana test function {self:?}"
            )))
        }
    }

    pub fn eval(self, t: f64) -> f64 {
        match self {
            AbelPlanaFamily::Exponential { rate } => (-rate * t).exp(),
            AbelPlanaFamily::Lorentzian { width } => 1.0 / (t * t + width * width),
        }
    }

    pub fn eval_complex(self, z: Complex64) -> Complex64 {
        match self {
            AbelPlanaFamily::Exponential { rate } => (-rate * z).exp(),
            AbelPlanaFamily::Lorentzian { width } => (z * z + width * width).inv(),
        }
    }

    /// Closed-form Σ_{n≥0} f(n).
    pub fn exact_sum(self) -> f64 {
        match self {
            AbelPlanaFamily::Exponential { rate } => 1.0 / -(-rate).exp_m1(),
            AbelPlanaFamily::Lorentzian { width } => {
                let b = width;
                0.5 / (b * b) + PI / (2.0 * b * (PI * b).tanh())
            }
        }
    }

    /// Decay length used to scale the semi-infinite map.
    fn scale(self) -> f64 {
        match self {
            AbelPlanaFamily::Exponential { rate } => 1.0 / rate,
            AbelPlanaFamily::Lorentzian { width } => width,
        }
    }

    fn is_even(self) -> bool {
        matches!(self, AbelPlanaFamily::Lorentzian { .. })
    }

    /// Simple poles on the positive imaginary axis as (β, Res at iβ, Res at −iβ).
    fn axis_poles(self) -> Vec<(f64, Complex64, Complex64)> {
        match self {
            AbelPlanaFamily::Exponential { .. } => Vec::new(),
            AbelPlanaFamily::Lorentzian { width } => {
                let upper = Complex64::new(0.0, 2.0 * width).inv();
                vec![(width, upper, -upper)]
            }
        }
    }
}

pub fn abel_plana_terms(family: AbelPlanaFamily, tol: Tolerance) -> Result<AbelPlanaTerms> {
    let family = family.validate()?;

    let integral =
        integrate_semi_infinite_scaled(|t| family.eval(t), 0.0, family.scale(), tol)?.value;
    let boundary = 0.5 * family.eval(0.0);

    // For even f the imaginary-axis difference vanishes identically.
    let axis_correction = if family.is_even() {
        0.0
    } else {
        integrate_semi_infinite_scaled(
            |t| {
                let bose = 1.0 / (2.0 * PI * t).exp_m1();
                if bose == 0.0 {
                    return 0.0;
                }
                let up = family.eval_complex(Complex64::new(0.0, t));
                let down = family.eval_complex(Complex64::new(0.0, -t));
                (Complex64::i() * (up - down)).re * bose
            },
            0.0,
            1.0,
            tol,
        )?
        .value
    };

    let pole_correction: f64 = family
        .axis_poles()
        .into_iter()
        .map(|(beta, res_up, res_down)| {
            (Complex64::new(0.0, PI) * (res_up - res_down)).re / (2.0 * PI * beta).exp_m1()
        })
        .sum();

    let sum = family.exact_sum();
    let residual = (sum - integral - boundary - axis_correction - pole_correction).abs();
    Ok(AbelPlanaTerms {
        sum,
        integral,
        boundary,
        axis_correction,
        pole_correction,
        residual,
    })
}

/// |Σ f(n) − ∫f − f(0)/2 − corrections| for a built-in test function.
pub fn abel_plana_residual(family: AbelPlanaFamily, tol: Tolerance) -> Result<f64> {
    Ok(abel_plana_terms(family, tol)?.residual)
}
