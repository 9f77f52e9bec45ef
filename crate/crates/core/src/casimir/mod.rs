//! Casimir force and renormalized energy per unit area for a scalar field of
//! mass m between plates a distance a apart.
//!
//! With μ = 2a·√(m² + k⊥²) the force per area is
//!
//! ```text
//! F(a, m) = −1/(4π²a²) ∫₀^∞ k⊥ dk⊥ J(μ),
//! J(μ)    = ∫_μ^∞ dy [ μ²/((eʸ−1)√(y²−μ²)) + √(y²−μ²)/(eʸ−1) ].
//! ```
//!
//! Substituting y = μ·cosh t removes the inverse square root, and u = μ turns
//! the transverse integral into F = −G(2am)/(16π²a⁴) with
//! G(x₀) = ∫_{x₀}^∞ u·J(u) du. G(0) = π⁴/15 recovers the massless result
//! −π²/(240a⁴). The mode sum runs over n ∈ ℤ, so the massless limit is the
//! two-polarization photon value.
//!
//! Expanding 1/(eʸ−1) = Σ e^{−ny} gives a Bessel-K resummation which is
//! implemented separately as an independent check.
//!
//! Everything exponentially small in x₀ = 2am is evaluated with the e^{−x₀}
//! factor pulled out, so relative accuracy holds until the result itself
//! underflows; beyond x₀ = 700 the force is reported as exact zero with
//! [`ForceStatus::Underflow`].

mod abel_plana;
mod modes;

use std::cell::RefCell;
use std::f64::consts::PI;
use std::fmt;

pub use abel_plana::{abel_plana_residual, abel_plana_terms, AbelPlanaFamily, AbelPlanaTerms};
pub use modes::ModeSpectrum;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_semi_infinite, integrate_semi_infinite_scaled, Tolerance};
use crate::specfun::{bessel_k_scaled, BesselOrder};
use crate::units::{EnergyPerArea, ForcePerArea, ParticleMass, PlateSeparation};

/// ζ(2) = π²/6, the μ → 0 limit of J and H.
const ZETA_2: f64 = PI * PI / 6.0;

/// Gaps above this make the result underflow double precision.
pub const UNDERFLOW_GAP: f64 = 700.0;

/// Below this gap the Bessel series defers to the massless closed form.
pub const SERIES_MASSLESS_GAP: f64 = 1e-4;

const SERIES_MAX_TERMS: usize = 100_000;

/// Below this μ, J(μ) and H(μ) equal π²/6 to within O(μ² ln μ).
const SMALL_GAP: f64 = 1e-8;

/// Dimensionless gap μ = 2a·√(m² + k⊥²); at k⊥ = 0 it is x₀ = 2am.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DimensionlessGap(f64);

impl DimensionlessGap {
    pub fn new(mu: f64) -> Result<Self> {
        if mu.is_finite() && mu >= 0.0 {
            Ok(Self(mu))
        } else {
            Err(Error::domain(format!(
                "gap μ must be non-negative, got {mu}"
            )))
        }
    }

    /// x₀ = 2am, the gap at zero transverse momentum.
    pub fn reduced(a: PlateSeparation, m: ParticleMass) -> Self {
        Self(2.0 * a.value() * m.value())
    }

    /// μ = 2a·√(m² + k⊥²).
    pub fn with_transverse(a: PlateSeparation, m: ParticleMass, k_perp: f64) -> Self {
        Self(2.0 * a.value() * m.value().hypot(k_perp))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ForceMethod {
    /// Singularity-free 1-D reduction of the double integral.
    ReducedIntegral,
    /// Literal nested evaluation with the (y² − μ²)^{−1/2} endpoint.
    DirectLiteral,
    /// Bessel-K resummation.
    BesselSeries,
    MasslessClosedForm,
}

impl ForceMethod {
    pub fn name(self) -> &'static str {
        match self {
            ForceMethod::ReducedIntegral => "reduced-integral",
            ForceMethod::DirectLiteral => "direct",
            ForceMethod::BesselSeries => "bessel-series",
            ForceMethod::MasslessClosedForm => "massless-closed-form",
        }
    }
}

impl fmt::Display for ForceMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForceStatus {
    Converged,
    /// 2am exceeded [`UNDERFLOW_GAP`]; the force is reported as exactly zero.
    Underflow,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceResult {
    pub force: ForcePerArea,
    pub method: ForceMethod,
    pub error_estimate: f64,
    pub status: ForceStatus,
}

impl ForceResult {
    fn converged(value: f64, method: ForceMethod, error_estimate: f64) -> Self {
        Self {
            force: ForcePerArea::from_raw(value),
            method,
            error_estimate,
            status: ForceStatus::Converged,
        }
    }

    fn underflow(method: ForceMethod) -> Self {
        Self {
            force: ForcePerArea::default(),
            method,
            error_estimate: 0.0,
            status: ForceStatus::Underflow,
        }
    }

    pub fn magnitude(&self) -> f64 {
        self.force.magnitude()
    }
}

/// Runs a quadrature whose integrand itself may fail; the first inner error
/// is returned in place of the outer NaN it triggers.
fn nested<T>(
    run: impl FnOnce(&dyn Fn(Result<f64>) -> f64) -> std::result::Result<T, crate::QuadratureError>,
) -> Result<T> {
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let unwrap = |r: Result<f64>| match r {
        Ok(v) => v,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            f64::NAN
        }
    };
    let outcome = run(&unwrap);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    outcome.map_err(Error::from)
}

/// eᵘ·J(u) = ∫₀^∞ u²cosh²t · e^{−u(cosh t − 1)} / (1 − e^{−u cosh t}) dt.
fn inner_j_scaled(mu: f64, tol: Tolerance) -> Result<f64> {
    if mu < SMALL_GAP {
        return Ok(ZETA_2 * mu.exp());
    }
    let integrand = |t: f64| {
        let half = (0.5 * t).sinh();
        let excess = 2.0 * mu * half * half;
        if excess > 750.0 {
            return 0.0;
        }
        let c = t.cosh();
        mu * mu * c * c * (-excess).exp() / -(-mu * c).exp_m1()
    };
    Ok(integrate_semi_infinite(integrand, 0.0, tol)?.value)
}

/// eᵘ·H(u) = ∫₀^∞ u²sinh²t · e^{−u(cosh t − 1)} / (1 − e^{−u cosh t}) dt.
fn inner_h_scaled(u: f64, tol: Tolerance) -> Result<f64> {
    if u < SMALL_GAP {
        return Ok(ZETA_2 * u.exp());
    }
    let integrand = |t: f64| {
        let half = (0.5 * t).sinh();
        let excess = 2.0 * u * half * half;
        if excess > 750.0 {
            return 0.0;
        }
        let s = t.sinh();
        u * u * s * s * (-excess).exp() / -(-u * t.cosh()).exp_m1()
    };
    Ok(integrate_semi_infinite(integrand, 0.0, tol)?.value)
}

/// The inner integral J(μ) over y ∈ [μ, ∞), computed in the cosh-substituted
/// form. Positive and strictly decreasing in μ, with J(0) = π²/6.
pub fn inner_j(mu: DimensionlessGap, tol: Tolerance) -> Result<f64> {
    let mu = mu.value();
    if mu == 0.0 {
        return Ok(ZETA_2);
    }
    Ok(inner_j_scaled(mu, tol)? * (-mu).exp())
}

/// H(u) = ∫_u^∞ √(y² − u²)/(eʸ − 1) dy, the energy kernel.
pub fn inner_h(u: DimensionlessGap, tol: Tolerance) -> Result<f64> {
    let u = u.value();
    if u == 0.0 {
        return Ok(ZETA_2);
    }
    Ok(inner_h_scaled(u, tol)? * (-u).exp())
}

/// G(x₀) = ∫_{x₀}^∞ u·J(u) du, returned as (e^{x₀}·G, error of that value).
fn reduced_kernel_scaled(x0: f64, tol: Tolerance) -> Result<(f64, f64)> {
    let inner_tol = tol.tightened(10.0);
    let r = nested(|inner| {
        integrate_semi_infinite(
            |v| {
                let u = x0 + v;
                u * inner(inner_j_scaled(u, inner_tol)) * (-v).exp()
            },
            0.0,
            tol,
        )
    })?;
    Ok((r.value, r.error_estimate))
}

/// G(x₀) = ∫_{x₀}^∞ u·J(u) du. G(0) = π⁴/15.
pub fn reduced_kernel(x0: DimensionlessGap, tol: Tolerance) -> Result<f64> {
    let x0 = x0.value();
    let (scaled, _) = reduced_kernel_scaled(x0, tol)?;
    Ok(scaled * (-x0).exp())
}

fn quartic(a: f64) -> f64 {
    let a2 = a * a;
    a2 * a2
}

/// F(a, 0) = −π²/(240a⁴).
pub fn massless_force(a: PlateSeparation) -> ForceResult {
    ForceResult::converged(
        -PI * PI / (240.0 * quartic(a.value())),
        ForceMethod::MasslessClosedForm,
        0.0,
    )
}

/// Force per unit area via the reduced 1-D integral. Massless fields take
/// the closed form.
pub fn force(a: PlateSeparation, m: ParticleMass, tol: Tolerance) -> Result<ForceResult> {
    if m.is_massless() {
        return Ok(massless_force(a));
    }
    let x0 = DimensionlessGap::reduced(a, m).value();
    if x0 > UNDERFLOW_GAP {
        return Ok(ForceResult::underflow(ForceMethod::ReducedIntegral));
    }
    let (scaled, err) = reduced_kernel_scaled(x0, tol)?;
    let prefactor = (-x0).exp() / (16.0 * PI * PI * quartic(a.value()));
    Ok(ForceResult::converged(
        -scaled * prefactor,
        ForceMethod::ReducedIntegral,
        err * prefactor,
    ))
}

/// Literal nested evaluation of the double integral over k⊥ and y, keeping
/// the inverse-square-root endpoint. Slow; it exists to validate [`force`].
pub fn force_direct(a: PlateSeparation, m: ParticleMass, tol: Tolerance) -> Result<ForceResult> {
    let av = a.value();
    let mv = m.value();
    if 2.0 * av * mv > UNDERFLOW_GAP {
        return Ok(ForceResult::underflow(ForceMethod::DirectLiteral));
    }
    let x0 = 2.0 * av * mv;
    let inner_tol = tol.tightened(10.0);

    // e^μ·∫_μ^∞ dy [...] with y = μ + δ so that y² − μ² = δ(2μ + δ) stays
    // exact; e^{-y}/(1 − e^{-y}) carries the Bose factor.
    let inner = |mu: f64| -> Result<f64> {
        let integrand = |delta: f64| {
            let y = mu + delta;
            let bose = (-delta).exp() / -(-y).exp_m1();
            if bose == 0.0 {
                return 0.0;
            }
            let root = (delta * (2.0 * mu + delta)).sqrt();
            mu * mu * bose / root + root * bose
        };
        Ok(integrate_semi_infinite(integrand, 0.0, inner_tol)?.value)
    };

    // The outer integrand carries e^{-(μ - x₀)}; e^{-x₀} is applied last.
    let r = nested(|unwrap| {
        integrate_semi_infinite_scaled(
            |k| {
                let mu = 2.0 * av * mv.hypot(k);
                let damping = (x0 - mu).exp();
                if damping == 0.0 {
                    return 0.0;
                }
                k * unwrap(inner(mu)) * damping
            },
            0.0,
            1.0 / (2.0 * av),
            tol,
        )
    })?;
    let prefactor = (-x0).exp() / (4.0 * PI * PI * av * av);
    Ok(ForceResult::converged(
        -r.value * prefactor,
        ForceMethod::DirectLiteral,
        r.error_estimate * prefactor,
    ))
}

/// Bessel resummation:
/// |F| = m²/(4π²a²) · Σₙ [ (2ma/n)·K₁(2nma) + (3/n²)·K₂(2nma) ].
///
/// Falls back to the massless closed form when 2am < [`SERIES_MASSLESS_GAP`].
pub fn force_bessel_series(a: PlateSeparation, m: ParticleMass) -> Result<ForceResult> {
    let x0 = DimensionlessGap::reduced(a, m).value();
    if x0 < SERIES_MASSLESS_GAP {
        return Ok(massless_force(a));
    }
    if x0 > UNDERFLOW_GAP {
        return Ok(ForceResult::underflow(ForceMethod::BesselSeries));
    }

    // Terms carry e^{x₀} so the sum stays O(1) for large x₀.
    let mut sum = 0.0;
    let mut last = 0.0;
    for n in 1..=SERIES_MAX_TERMS {
        let nf = n as f64;
        let z = nf * x0;
        let k1 = bessel_k_scaled(BesselOrder::One, z)?;
        let k2 = bessel_k_scaled(BesselOrder::Two, z)?;
        let term = ((x0 / nf) * k1 + 3.0 * k2 / (nf * nf)) * (-(nf - 1.0) * x0).exp();
        sum += term;
        last = term;
        if term < 1e-16 * sum {
            break;
        }
    }

    let mv = m.value();
    let prefactor = mv * mv / (4.0 * PI * PI * a.value() * a.value()) * (-x0).exp();
    Ok(ForceResult::converged(
        -sum * prefactor,
        ForceMethod::BesselSeries,
        last * prefactor,
    ))
}

/// Energy per unit area from the Bessel resummation,
/// E/S = −m²/(4π²a) · Σₙ K₂(2nma)/n². Used as an independent check of
/// [`energy_renormalized`].
pub fn energy_bessel_series(a: PlateSeparation, m: ParticleMass) -> Result<EnergyPerArea> {
    let x0 = DimensionlessGap::reduced(a, m).value();
    if x0 < SERIES_MASSLESS_GAP {
        return Ok(EnergyPerArea::from_raw(
            -PI * PI / (720.0 * a.value() * a.value() * a.value()),
        ));
    }
    if x0 > UNDERFLOW_GAP {
        return Ok(EnergyPerArea::default());
    }
    let mut sum = 0.0;
    for n in 1..=SERIES_MAX_TERMS {
        let nf = n as f64;
        let term =
            bessel_k_scaled(BesselOrder::Two, nf * x0)? / (nf * nf) * (-(nf - 1.0) * x0).exp();
        sum += term;
        if term < 1e-16 * sum {
            break;
        }
    }
    let mv = m.value();
    Ok(EnergyPerArea::from_raw(
        -mv * mv / (4.0 * PI * PI * a.value()) * (-x0).exp() * sum,
    ))
}

/// Finite, separation-dependent part of the vacuum energy per unit area:
/// E/S = −1/(16π²a³) ∫_{2am}^∞ u·H(u) du.
///
/// The a-independent −ω₀ pieces of the bare mode sum diverge and are
/// dropped; they do not contribute to the force.
pub fn energy_renormalized(
    a: PlateSeparation,
    m: ParticleMass,
    tol: Tolerance,
) -> Result<EnergyPerArea> {
    let x0 = DimensionlessGap::reduced(a, m).value();
    if x0 > UNDERFLOW_GAP {
        return Ok(EnergyPerArea::default());
    }
    let inner_tol = tol.tightened(10.0);
    let r = nested(|inner| {
        integrate_semi_infinite(
            |v| {
                let u = x0 + v;
                u * inner(inner_h_scaled(u, inner_tol)) * (-v).exp()
            },
            0.0,
            tol,
        )
    })?;
    let prefactor = (-x0).exp() / (16.0 * PI * PI * a.value() * a.value() * a.value());
    Ok(EnergyPerArea::from_raw(-r.value * prefactor))
}

/// Dispatches to one of the force routes.
pub fn force_with(
    method: ForceMethod,
    a: PlateSeparation,
    m: ParticleMass,
    tol: Tolerance,
) -> Result<ForceResult> {
    match method {
        ForceMethod::ReducedIntegral => force(a, m, tol),
        ForceMethod::DirectLiteral => force_direct(a, m, tol),
        ForceMethod::BesselSeries => force_bessel_series(a, m),
        ForceMethod::MasslessClosedForm => {
            if m.is_massless() {
                Ok(massless_force(a))
            } else {
                Err(Error::domain(
                    "the closed form applies only to a massless field",
                ))
            }
        }
    }
}
