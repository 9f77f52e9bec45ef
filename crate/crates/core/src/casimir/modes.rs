use std::f64::consts::PI;

use crate::units::{ParticleMass, PlateSeparation};

use super::DimensionlessGap;

/// Standing-wave spectrum between the plates at fixed transverse momentum:
/// k_n = nπ/a, ω_n = √(m² + k⊥² + k_n²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSpectrum {
    pub separation: PlateSeparation,
    pub mass: ParticleMass,
    pub transverse_momentum: f64,
}

impl ModeSpectrum {
    pub fn new(separation: PlateSeparation, mass: ParticleMass, transverse_momentum: f64) -> Self {
        Self {
            separation,
            mass,
            transverse_momentum: transverse_momentum.abs(),
        }
    }

    pub fn wavenumber(&self, n: i64) -> f64 {
        n as f64 * PI / self.separation.value()
    }

    pub fn frequency(&self, n: i64) -> f64 {
        self.zero_mode().hypot(self.wavenumber(n))
    }

    /// ω₀ = √(m² + k⊥²).
    pub fn zero_mode(&self) -> f64 {
        self.mass.value().hypot(self.transverse_momentum)
    }

    /// μ = 2a·ω₀.
    pub fn gap(&self) -> DimensionlessGap {
        DimensionlessGap::with_transverse(self.separation, self.mass, self.transverse_momentum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frequencies_grow_with_mode_index() {
        let s = ModeSpectrum::new(
            PlateSeparation::new(2.0).unwrap(),
            ParticleMass::new(0.7).unwrap(),
            0.3,
        );
        assert_eq!(s.frequency(0), s.zero_mode());
        assert!(s.zero_mode() >= 0.7);
        let mut prev = s.frequency(0);
        for n in 1..50 {
            let w = s.frequency(n);
            assert!(w > prev);
            assert_eq!(w, s.frequency(-n));
            prev = w;
        }
        assert!((s.wavenumber(2) - PI).abs() < 1e-15);
        assert!((s.gap().value() - 4.0 * 0.7f64.hypot(0.3)).abs() < 1e-15);
    }
}
