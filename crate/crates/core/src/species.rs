//! Ion species data: masses and optical transition tables.
//!
//! The tables are a versioned embedded dataset so further species (Be⁺, Ba⁺)
//! can be added without code changes. All quantities are SI.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const EMBEDDED_DATASET: &str = include_str!("data/species.json");

/// Multipole character of an optical transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransitionKind {
    Dipole,
    Quadrupole,
}

/// One optical transition of an ion.
///
/// `einstein_a` is the decay rate of this channel alone; `lifetime` is the
/// lifetime of the upper level, so `einstein_a * lifetime` equals the
/// branching fraction of the channel (1.0 for a level with a single decay
/// path). The `branching_fraction` field documents that relation per entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Transition {
    /// Term labels, e.g. "4S1/2-4P1/2".
    pub label: String,
    /// Vacuum wavelength (m).
    pub wavelength: f64,
    /// Einstein A coefficient of this channel (1/s).
    pub einstein_a: f64,
    /// Upper-level lifetime (s).
    pub lifetime: f64,
    pub kind: TransitionKind,
    /// Fraction of upper-level decays through this channel.
    pub branching_fraction: f64,
}

impl Transition {
    /// Wavenumber k = 2π/λ (1/m).
    pub fn wavenumber(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.wavelength
    }

    /// Natural linewidth Γ = 1/τ of the upper level (rad/s).
    pub fn natural_linewidth(&self) -> f64 {
        1.0 / self.lifetime
    }

    pub fn validate(&self) -> Result<()> {
        if [self.wavelength, self.einstein_a, self.lifetime]
            .iter()
            .any(|&v| v <= 0.0 || !v.is_finite())
        {
            return Err(Error::InvalidInput(format!(
                "transition {}: wavelength, einstein_a and lifetime must be positive",
                self.label
            )));
        }
        if !(self.branching_fraction > 0.0 && self.branching_fraction <= 1.0)
            || !self.branching_fraction.is_finite()
        {
            return Err(Error::InvalidInput(format!(
                "transition {}: branching fraction {} outside (0, 1]",
                self.label, self.branching_fraction
            )));
        }
        // lifetime, A and branching must tell one consistent story
        let product = self.einstein_a * self.lifetime;
        if (product - self.branching_fraction).abs() > 0.01 {
            return Err(Error::InvalidInput(format!(
                "transition {}: A·τ = {:.4} does not match branching fraction {:.4}",
                self.label, product, self.branching_fraction
            )));
        }
        Ok(())
    }
}

/// One trapped-ion species.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IonSpecies {
    pub name: String,
    #[serde(default)]
    pub aliases: Vec<String>,
    /// Ion mass (kg).
    pub mass: f64,
    /// Charge in units of e; singly ionized species have 1.
    pub charge_multiplier: u32,
    pub transitions: Vec<Transition>,
}

impl IonSpecies {
    pub fn validate(&self) -> Result<()> {
        if self.mass <= 0.0 || !self.mass.is_finite() {
            return Err(Error::InvalidInput(format!(
                "species {}: mass must be positive",
                self.name
            )));
        }
        if self.charge_multiplier != 1 {
            return Err(Error::InvalidInput(format!(
                "species {}: only singly ionized species are modeled",
                self.name
            )));
        }
        for t in &self.transitions {
            t.validate()?;
        }
        Ok(())
    }

    /// Look up a transition whose wavelength is within 1 nm of `nm`.
    pub fn transition_near(&self, nm: f64) -> Option<&Transition> {
        self.transitions
            .iter()
            .find(|t| (t.wavelength * 1e9 - nm).abs() < 1.0)
    }

    pub fn transition_by_label(&self, label: &str) -> Option<&Transition> {
        self.transitions.iter().find(|t| t.label == label)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SpeciesDataset {
    dataset_version: u32,
    species: Vec<IonSpecies>,
}

fn embedded_dataset() -> SpeciesDataset {
    serde_json::from_str(EMBEDDED_DATASET).expect("embedded species dataset is well-formed")
}

/// The ⁴⁰Ca⁺ reference record: mass 40 u, with the 397/393/866 nm dipole and
/// 729/732 nm quadrupole transitions.
pub fn ca40_species() -> IonSpecies {
    builtin_species("ca40").expect("embedded dataset contains Ca-40")
}

/// Look up an embedded species by name or alias (case-insensitive).
pub fn builtin_species(name: &str) -> Option<IonSpecies> {
    let lower = name.to_lowercase();
    embedded_dataset()
        .species
        .into_iter()
        .find(|s| s.name.to_lowercase() == lower || s.aliases.iter().any(|a| a.to_lowercase() == lower))
}

/// Names of all embedded species.
pub fn builtin_species_names() -> Vec<String> {
    embedded_dataset()
        .species
        .iter()
        .map(|s| s.name.clone())
        .collect()
}

/// Parse a single species record from a JSON document and validate it.
pub fn species_from_json(json: &str) -> Result<IonSpecies> {
    let species: IonSpecies = serde_json::from_str(json)?;
    species.validate()?;
    Ok(species)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::ATOMIC_MASS_UNIT;

    #[test]
    fn ca40_mass_is_40_amu() {
        let ca = ca40_species();
        let expected = 40.0 * ATOMIC_MASS_UNIT;
        assert!(
            (ca.mass - expected).abs() / expected < 1e-3,
            "mass {} vs 40 u = {}",
            ca.mass,
            expected
        );
        assert!((ca.mass - 6.642e-26).abs() / 6.642e-26 < 1e-3);
        assert_eq!(ca.charge_multiplier, 1);
    }

    #[test]
    fn ca40_table_entries() {
        let ca = ca40_species();
        ca.validate().unwrap();

        let t397 = ca.transition_near(397.0).unwrap();
        assert_eq!(t397.kind, TransitionKind::Dipole);

        let t866 = ca.transition_near(866.0).unwrap();
        assert_eq!(t866.kind, TransitionKind::Dipole);

        let t729 = ca.transition_near(729.0).unwrap();
        assert_eq!(t729.kind, TransitionKind::Quadrupole);
        assert!((t729.lifetime - 1.06).abs() < 1e-9);

        let t732 = ca.transition_near(732.0).unwrap();
        assert_eq!(t732.kind, TransitionKind::Quadrupole);
        assert!((t732.lifetime - 1.08).abs() < 0.01);
    }

    #[test]
    fn lifetimes_consistent_with_a_coefficients() {
        let ca = ca40_species();
        for t in &ca.transitions {
            let product = t.einstein_a * t.lifetime;
            assert!(
                (product - t.branching_fraction).abs() <= 0.01,
                "{}: A·τ = {product}",
                t.label
            );
        }
    }

    #[test]
    fn json_round_trip() {
        let ca = ca40_species();
        let json = serde_json::to_string(&ca).unwrap();
        let back = species_from_json(&json).unwrap();
        assert_eq!(ca, back);
    }

    #[test]
    fn invalid_species_rejected() {
        let mut ca = ca40_species();
        ca.mass = -1.0;
        assert!(ca.validate().is_err());

        let mut ca = ca40_species();
        ca.transitions[0].lifetime *= 10.0;
        assert!(ca.validate().is_err(), "A·τ inconsistency must be caught");
    }
}
