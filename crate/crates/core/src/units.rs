//! Natural-unit value types (ħ = c = 1) and the few conversions needed at the
//! edges: femtometres ↔ MeV⁻¹ and MeV⁴ → Pa.

use std::fmt;

use crate::error::{Error, Result};

/// ħc in MeV·fm (CODATA).
pub const HBAR_C_MEV_FM: f64 = 197.326_980_4;

/// One MeV/fm³ expressed in pascals.
pub const PASCAL_PER_MEV_FM3: f64 = 1.602_176_6e32;

/// Distance between the plates, in MeV⁻¹.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PlateSeparation(f64);

impl PlateSeparation {
    pub fn new(natural: f64) -> Result<Self> {
        if natural.is_finite() && natural > 0.0 {
            Ok(Self(natural))
        } else {
            Err(Error::domain(format!(
                "plate separation must be positive and finite, got {natural}"
            )))
        }
    }

    pub fn from_fm(fm: f64) -> Result<Self> {
        fm_to_natural(fm).map(Self)
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn to_fm(self) -> f64 {
        self.0 * HBAR_C_MEV_FM
    }
}

/// Rest mass of the mediating field, in MeV.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ParticleMass(f64);

impl ParticleMass {
    pub const ZERO: ParticleMass = ParticleMass(0.0);

    pub fn new(mev: f64) -> Result<Self> {
        if mev.is_finite() && mev >= 0.0 {
            Ok(Self(mev))
        } else {
            Err(Error::domain(format!(
                "particle mass must be non-negative and finite, got {mev}"
            )))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_massless(self) -> bool {
        self.0 == 0.0
    }

    /// Reduced Compton length ħc/m in fm; infinite for a massless field.
    pub fn compton_length_fm(self) -> f64 {
        HBAR_C_MEV_FM / self.0
    }
}

/// Signed force per unit plate area in MeV⁴. Negative means attractive.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct ForcePerArea(f64);

impl ForcePerArea {
    pub fn new(mev4: f64) -> Result<Self> {
        if mev4.is_finite() {
            Ok(Self(mev4))
        } else {
            Err(Error::domain("force per area must be finite"))
        }
    }

    pub(crate) fn from_raw(mev4: f64) -> Self {
        debug_assert!(mev4.is_finite());
        Self(mev4)
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// Attractive magnitude |F|.
    #[inline]
    pub fn magnitude(self) -> f64 {
        self.0.abs()
    }

    pub fn to_pascal(self) -> f64 {
        natural_force_to_pascal(self)
    }
}

impl std::ops::Add for ForcePerArea {
    type Output = ForcePerArea;

    fn add(self, rhs: Self) -> Self {
        ForcePerArea(self.0 + rhs.0)
    }
}

impl std::iter::Sum for ForcePerArea {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ForcePerArea::default(), |acc, f| acc + f)
    }
}

impl fmt::Display for ForcePerArea {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e} MeV^4", self.0)
    }
}

/// Renormalized vacuum energy per unit plate area in MeV³.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct EnergyPerArea(f64);

impl EnergyPerArea {
    pub(crate) fn from_raw(mev3: f64) -> Self {
        debug_assert!(mev3.is_finite());
        Self(mev3)
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for EnergyPerArea {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e} MeV^3", self.0)
    }
}

/// Converts a length in fm to natural units (MeV⁻¹).
pub fn fm_to_natural(fm: f64) -> Result<f64> {
    if fm.is_finite() && fm > 0.0 {
        Ok(fm / HBAR_C_MEV_FM)
    } else {
        Err(Error::domain(format!(
            "length must be positive and finite, got {fm} fm"
        )))
    }
}

/// Converts a natural length (MeV⁻¹) to fm.
pub fn natural_to_fm(natural: f64) -> Result<f64> {
    if natural.is_finite() && natural > 0.0 {
        Ok(natural * HBAR_C_MEV_FM)
    } else {
        Err(Error::domain(format!(
            "length must be positive and finite, got {natural} MeV^-1"
        )))
    }
}

/// MeV⁴ → MeV/fm³ → Pa.
pub fn natural_force_to_pascal(force: ForcePerArea) -> f64 {
    let per_fm3 = force.value() / (HBAR_C_MEV_FM * HBAR_C_MEV_FM * HBAR_C_MEV_FM);
    per_fm3 * PASCAL_PER_MEV_FM3
}
