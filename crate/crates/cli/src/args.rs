//! Parsing of distance, mass and species arguments.

use casimir_core::species::builtin_registry;
use casimir_core::units::HBAR_C_MEV_FM;
use casimir_core::{ParticleMass, PlateSeparation, Species};

use crate::error::{CliError, Result};

fn split_suffix<'a>(text: &'a str, suffixes: &[&'a str]) -> (&'a str, Option<&'a str>) {
    let t = text.trim();
    for s in suffixes {
        if let Some(stripped) = t.strip_suffix(s) {
            return (stripped.trim(), Some(s));
        }
    }
    (t, None)
}

fn number(text: &str, what: &str) -> Result<f64> {
    text.parse::<f64>()
        .map_err(|_| CliError::Usage(format!("cannot parse {what} {text:?}")))
}

/// `197.3fm`, `1nat` (MeV⁻¹) or a bare number of fm.
pub fn parse_distance(text: &str) -> Result<PlateSeparation> {
    let (value, unit) = split_suffix(text, &["fm", "nat"]);
    let v = number(value, "distance")?;
    let sep = match unit {
        Some("nat") => PlateSeparation::new(v),
        _ => PlateSeparation::from_fm(v),
    };
    sep.map_err(|e| CliError::Usage(format!("invalid distance {text:?}: {e}")))
}

/// `135`, `135MeV` or `3GeV`.
pub fn parse_mass(text: &str) -> Result<ParticleMass> {
    let (value, unit) = split_suffix(text, &["GeV", "MeV"]);
    let mut v = number(value, "mass")?;
    if unit == Some("GeV") {
        v *= 1e3;
    }
    ParticleMass::new(v).map_err(|e| CliError::Usage(format!("invalid mass {text:?}: {e}")))
}

/// A registry name (`pi0`) or an explicit `name=mass` pair (`kaon=497.6MeV`).
pub fn parse_species(text: &str, precise: bool) -> Result<Species> {
    if let Some((name, mass)) = text.split_once('=') {
        let mass = parse_mass(mass)?;
        return Species::new(name.trim(), mass).map_err(|e| CliError::Usage(e.to_string()));
    }
    builtin_registry(precise)
        .get(text.trim())
        .cloned()
        .ok_or_else(|| {
            CliError::Usage(format!(
                "unknown species {text:?}; use a built-in name or name=mass"
            ))
        })
}

pub fn format_distance(a: PlateSeparation) -> String {
    format!("{} fm ({} MeV^-1)", a.value() * HBAR_C_MEV_FM, a.value())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distances() {
        assert_eq!(parse_distance("197.3269804fm").unwrap().value(), 1.0);
        assert_eq!(parse_distance("2nat").unwrap().value(), 2.0);
        assert_eq!(parse_distance(" 197.3269804 ").unwrap().value(), 1.0);
        assert!(matches!(parse_distance("0fm"), Err(CliError::Usage(_))));
        assert!(parse_distance("-3fm").is_err());
        assert!(parse_distance("abc").is_err());
    }

    #[test]
    fn masses() {
        assert_eq!(parse_mass("135").unwrap().value(), 135.0);
        assert_eq!(parse_mass("135MeV").unwrap().value(), 135.0);
        assert_eq!(parse_mass("3GeV").unwrap().value(), 3000.0);
        assert!(parse_mass("-1").is_err());
    }

    #[test]
    fn species() {
        assert_eq!(parse_species("pi0", false).unwrap().mass().value(), 135.0);
        assert_eq!(parse_species("pi0", true).unwrap().mass().value(), 134.9768);
        let s = parse_species("heavy=2GeV", false).unwrap();
        assert_eq!(s.name(), "heavy");
        assert_eq!(s.mass().value(), 2000.0);
        assert!(parse_species("muon", false).is_err());
        assert!(parse_species("=3", false).is_err());
    }
}
