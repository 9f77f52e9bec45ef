//! Particle species and multi-species superposition of Casimir forces.

use std::fmt;

use crate::casimir::{force, ForceResult};
use crate::error::{Error, Result};
use crate::quadrature::Tolerance;
use crate::units::{ForcePerArea, ParticleMass, PlateSeparation};

/// Positronium as twice the electron mass, in MeV.
pub const POSITRONIUM_MASS_PRECISE: f64 = 1.022;
/// Neutral pion mass, in MeV.
pub const PI0_MASS_PRECISE: f64 = 134.9768;

#[derive(Debug, Clone, PartialEq)]
pub struct Species {
    name: String,
    mass: ParticleMass,
}

impl Species {
    pub fn new(name: impl Into<String>, mass: ParticleMass) -> Result<Self> {
        let name = name.into();
        let valid = !name.is_empty()
            && name
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-');
        if !valid {
            return Err(Error::domain(format!(
                "species name must be non-empty ASCII alphanumerics, '-' or '_', got {name:?}"
            )));
        }
        Ok(Self { name, mass })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn mass(&self) -> ParticleMass {
        self.mass
    }
}

impl fmt::Display for Species {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} MeV)", self.name, self.mass.value())
    }
}

/// Non-empty, ordered set of species with distinct names.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    species: Vec<Species>,
}

impl Ensemble {
    pub fn new(species: Vec<Species>) -> Result<Self> {
        if species.is_empty() {
            return Err(Error::domain("an ensemble needs at least one species"));
        }
        for (i, s) in species.iter().enumerate() {
            if species[..i].iter().any(|o| o.name == s.name) {
                return Err(Error::domain(format!(
                    "duplicate species name {:?}",
                    s.name
                )));
            }
        }
        Ok(Self { species })
    }

    pub fn species(&self) -> &[Species] {
        &self.species
    }

    pub fn len(&self) -> usize {
        self.species.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, name: &str) -> Option<&Species> {
        self.species.iter().find(|s| s.name == name)
    }

    fn index_of(&self, name: &str) -> Result<usize> {
        self.species
            .iter()
            .position(|s| s.name == name)
            .ok_or_else(|| Error::domain(format!("species {name:?} is not in the ensemble")))
    }

    /// Sub-ensemble keeping only the named species, in the given order.
    pub fn select(&self, names: &[&str]) -> Result<Self> {
        let picked = names
            .iter()
            .map(|n| self.index_of(n).map(|i| self.species[i].clone()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(picked)
    }
}

/// photon, positronium and pi0. Default masses are 0, 1 and 135 MeV; with
/// `precise` they are 0, 1.022 and 134.9768 MeV.
pub fn builtin_registry(precise: bool) -> Ensemble {
    let (positronium, pi0) = if precise {
        (POSITRONIUM_MASS_PRECISE, PI0_MASS_PRECISE)
    } else {
        (1.0, 135.0)
    };
    let mk = |name: &str, m: f64| Species {
        name: name.to_owned(),
        mass: ParticleMass::new(m).expect("builtin mass"),
    };
    Ensemble {
        species: vec![
            mk("photon", 0.0),
            mk("positronium", positronium),
            mk("pi0", pi0),
        ],
    }
}

/// Per-species forces, in ensemble order.
pub fn species_forces(
    a: PlateSeparation,
    ensemble: &Ensemble,
    tol: Tolerance,
) -> Result<Vec<ForceResult>> {
    ensemble
        .species()
        .iter()
        .map(|s| force(a, s.mass(), tol))
        .collect()
}

/// Σᵢ F(a, mᵢ), summed in ensemble order.
pub fn total_force(
    a: PlateSeparation,
    ensemble: &Ensemble,
    tol: Tolerance,
) -> Result<ForcePerArea> {
    Ok(species_forces(a, ensemble, tol)?
        .into_iter()
        .map(|r| r.force)
        .sum())
}

/// |Fᵢ| / Σⱼ|Fⱼ| for already evaluated forces.
pub fn ratios_from_forces(forces: &[ForcePerArea]) -> Result<Vec<f64>> {
    let total: f64 = forces.iter().map(|f| f.magnitude()).sum();
    if total == 0.0 {
        return Err(Error::Underflow);
    }
    Ok(forces.iter().map(|f| f.magnitude() / total).collect())
}

/// Share of each species in the total force, in ensemble order.
pub fn contribution_ratios(
    a: PlateSeparation,
    ensemble: &Ensemble,
    tol: Tolerance,
) -> Result<Vec<f64>> {
    let forces: Vec<_> = species_forces(a, ensemble, tol)?
        .into_iter()
        .map(|r| r.force)
        .collect();
    ratios_from_forces(&forces)
}

/// Share of the named species in the total force.
pub fn contribution_ratio(
    a: PlateSeparation,
    species: &str,
    ensemble: &Ensemble,
    tol: Tolerance,
) -> Result<f64> {
    let idx = ensemble.index_of(species)?;
    Ok(contribution_ratios(a, ensemble, tol)?[idx])
}

/// Distance at which a species' share has dropped to half of its small-gap
/// limit 1/N.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossover {
    pub separation: PlateSeparation,
    /// The small-separation limit of the ratio, 1/N.
    pub limit: f64,
    /// 2am at the crossover.
    pub reduced_gap: f64,
}

/// Locates the crossover by bisection in log a. The ratio of a massive
/// species falls monotonically from 1/N at small a to 0 at large a.
pub fn crossover_distance(species: &str, ensemble: &Ensemble, tol: Tolerance) -> Result<Crossover> {
    let idx = ensemble.index_of(species)?;
    let m = ensemble.species()[idx].mass().value();
    if m == 0.0 {
        return Err(Error::domain(
            "a massless species has no crossover distance",
        ));
    }
    let limit = 1.0 / ensemble.len() as f64;
    let target = 0.5 * limit;
    let ratio_at = |ln_a: f64| -> Result<f64> {
        let a = PlateSeparation::new(ln_a.exp())?;
        Ok(contribution_ratios(a, ensemble, tol)?[idx])
    };

    // Brackets at 2am = 1e-3 and 2am = 60.
    let mut lo = (1e-3 / (2.0 * m)).ln();
    let mut hi = (60.0 / (2.0 * m)).ln();
    if ratio_at(lo)? < target || ratio_at(hi)? > target {
        return Err(Error::domain(format!(
            "ratio of {species:?} does not cross {target} in the bracketing range"
        )));
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if ratio_at(mid)? > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let a = (0.5 * (lo + hi)).exp();
    Ok(Crossover {
        separation: PlateSeparation::new(a)?,
        limit,
        reduced_gap: 2.0 * a * m,
    })
}
