//! Physical constants (SI units) and unit conventions.
//!
//! Everything is stored internally in SI; angular frequencies (rad/s) are the
//! internal convention throughout the library. Conversions to display units
//! (MHz, eV, mW, μm) happen only at I/O boundaries.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fundamental constants, CODATA 2018 values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// Elementary charge e (C).
    pub elementary_charge: f64,
    /// Vacuum permittivity ε₀ (F/m).
    pub vacuum_permittivity: f64,
    /// Reduced Planck constant ħ (J·s).
    pub reduced_planck: f64,
    /// Boltzmann constant k_B (J/K).
    pub boltzmann: f64,
    /// Speed of light c (m/s).
    pub speed_of_light: f64,
    /// Fine-structure constant α (dimensionless).
    pub fine_structure: f64,
}

/// CODATA 2018 reference values.
pub const CODATA: PhysicalConstants = PhysicalConstants {
    elementary_charge: 1.602_176_634e-19,
    vacuum_permittivity: 8.854_187_812_8e-12,
    reduced_planck: 1.054_571_817e-34,
    boltzmann: 1.380_649e-23,
    speed_of_light: 299_792_458.0,
    fine_structure: 7.297_352_569_3e-3,
};

/// Unified atomic mass unit (kg).
pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27;

/// Electron-volt (J).
pub const ELECTRON_VOLT: f64 = 1.602_176_634e-19;

impl PhysicalConstants {
    /// Coulomb constant e²/(4πε₀) in J·m. Evaluates to 2.307×10⁻²⁸ J·m.
    pub fn coulomb_constant(&self) -> f64 {
        self.elementary_charge * self.elementary_charge
            / (4.0 * std::f64::consts::PI * self.vacuum_permittivity)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            self.elementary_charge,
            self.vacuum_permittivity,
            self.reduced_planck,
            self.boltzmann,
            self.speed_of_light,
            self.fine_structure,
        ];
        if all.iter().any(|&v| v <= 0.0 || !v.is_finite()) {
            return Err(Error::InvalidInput(
                "physical constants must be strictly positive and finite".into(),
            ));
        }
        if !(self.fine_structure > 1.0 / 138.0 && self.fine_structure < 1.0 / 137.0) {
            return Err(Error::InvalidInput(format!(
                "fine-structure constant {} outside (1/138, 1/137)",
                self.fine_structure
            )));
        }
        Ok(())
    }
}

/// Doppler cooling limit T = ħΓ/(2 k_B) for a transition of natural
/// linewidth Γ (rad/s).
pub fn doppler_limit(linewidth: f64) -> Result<f64> {
    if linewidth <= 0.0 || !linewidth.is_finite() {
        return Err(Error::InvalidInput(format!(
            "linewidth must be positive, got {linewidth}"
        )));
    }
    Ok(CODATA.reduced_planck * linewidth / (2.0 * CODATA.boltzmann))
}

/// Inverse of [`doppler_limit`]: the linewidth Γ (rad/s) whose Doppler limit
/// is the given temperature.
///
/// Useful as a consistency probe: a quoted limit of 85 μK corresponds to
/// Γ = 2π×3.54 MHz, far below the ~2π×21 MHz width of the Ca⁺ 397 nm cooling
/// line, whose own limit is 0.52 mK. Which linewidth a quoted temperature
/// assumed can be checked with this function rather than guessed.
pub fn doppler_linewidth(temperature: f64) -> Result<f64> {
    if temperature <= 0.0 || !temperature.is_finite() {
        return Err(Error::InvalidInput(format!(
            "temperature must be positive, got {temperature}"
        )));
    }
    Ok(2.0 * CODATA.boltzmann * temperature / CODATA.reduced_planck)
}
