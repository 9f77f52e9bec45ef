//! Casimir force and renormalized vacuum energy per unit plate area for a
//! massive scalar field between two perfectly reflecting parallel plates.
//!
//! All quantities are in natural units (ħ = c = 1, energies in MeV, lengths
//! in MeV⁻¹). Conversions to femtometres and pascals live in [`units`] and are
//! meant to be applied only at I/O boundaries.
//!
//! The force is available through three independent numerical routes
//! ([`casimir::force`], [`casimir::force_direct`],
//! [`casimir::force_bessel_series`]) plus the massless closed form, so each
//! can be checked against the others.

pub mod casimir;
pub mod error;
pub mod quadrature;
pub mod specfun;
pub mod species;
pub mod units;

pub use casimir::{ForceMethod, ForceResult, ForceStatus};
pub use error::{Error, Result};
pub use quadrature::{QuadratureError, QuadratureResult, Tolerance};
pub use species::{Ensemble, Species};
pub use units::{EnergyPerArea, ForcePerArea, ParticleMass, PlateSeparation};
