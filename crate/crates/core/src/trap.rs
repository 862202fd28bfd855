//! Linear RF (Paul) trap formulas: Mathieu drive parameters, pseudopotential
//! well depth, secular frequency, calibrated axial frequency, thermal
//! localization and addressing crosstalk.

use serde::{Deserialize, Serialize};

use crate::constants::{CODATA, ELECTRON_VOLT};
use crate::error::{Error, Result};
use crate::report::Flagged;
use crate::species::IonSpecies;

/// Above this Mathieu q the pseudopotential treatment is suspect and results
/// are flagged rather than suppressed.
pub const PSEUDOPOTENTIAL_Q_LIMIT: f64 = 0.9;

/// Trap electrode drive and geometry.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrapConfig {
    pub species: IonSpecies,
    /// RF amplitude Φ_RF (V).
    pub rf_amplitude: f64,
    /// DC offset Φ_DC (V).
    pub dc_offset: f64,
    /// RF drive angular frequency ω_RF (rad/s).
    pub rf_frequency: f64,
    /// Field radius r₀ (m).
    pub r0: f64,
    /// Endcap bias (V).
    pub endcap_voltage: f64,
    /// Shielding of the endcap potential by the RF rods, in (0, 1].
    pub shielding_factor: f64,
}

impl TrapConfig {
    pub fn validate(&self) -> Result<()> {
        self.species.validate()?;
        if self.rf_amplitude <= 0.0 || !self.rf_amplitude.is_finite() {
            return Err(Error::InvalidInput("RF amplitude must be positive".into()));
        }
        if self.rf_frequency <= 0.0 || !self.rf_frequency.is_finite() {
            return Err(Error::InvalidInput("RF frequency must be positive".into()));
        }
        if self.r0 <= 0.0 || !self.r0.is_finite() {
            return Err(Error::InvalidInput("r0 must be positive".into()));
        }
        if !(self.shielding_factor > 0.0 && self.shielding_factor <= 1.0)
            || !self.shielding_factor.is_finite()
        {
            return Err(Error::InvalidInput(format!(
                "shielding factor {} outside (0, 1]",
                self.shielding_factor
            )));
        }
        if self.endcap_voltage < 0.0 {
            return Err(Error::InvalidInput("endcap voltage must be >= 0".into()));
        }
        Ok(())
    }
}

/// One-point calibration of the axial-frequency law ω_x = ω_ref·√(V/V_ref).
///
/// The geometry factor behind the quadratic voltage-frequency relation comes
/// from a numerical electrode model, so the law is exposed as a calibratable
/// anchor rather than a geometry solve. The default anchor is 2π×200 kHz at
/// 150 V.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct AxialCalibration {
    /// Reference endcap voltage (V).
    pub v_ref: f64,
    /// Axial angular frequency at the reference voltage (rad/s).
    pub omega_ref: f64,
}

impl Default for AxialCalibration {
    fn default() -> Self {
        Self {
            v_ref: 150.0,
            omega_ref: 2.0 * std::f64::consts::PI * 200e3,
        }
    }
}

/// Mathieu drive parameters (a, q):
/// a = 4eΦ_DC/(Mω_RF²r₀²), q = 2eΦ_RF/(Mω_RF²r₀²).
pub fn mathieu_parameters(trap: &TrapConfig) -> (f64, f64) {
    let e = CODATA.elementary_charge;
    let denom =
        trap.species.mass * trap.rf_frequency * trap.rf_frequency * trap.r0 * trap.r0;
    let a = 4.0 * e * trap.dc_offset / denom;
    let q = 2.0 * e * trap.rf_amplitude / denom;
    (a, q)
}

/// Radial pseudopotential well depth eΦ_eff(ρ=r₀) = e²Φ_RF²/(4Mω_RF²r₀²),
/// reported in eV. "Depth" is the pseudopotential energy at ρ = r₀.
pub fn pseudopotential_depth_ev(trap: &TrapConfig) -> f64 {
    let e = CODATA.elementary_charge;
    let joules = e * e * trap.rf_amplitude * trap.rf_amplitude
        / (4.0 * trap.species.mass * trap.rf_frequency * trap.rf_frequency * trap.r0 * trap.r0);
    joules / ELECTRON_VOLT
}

/// Radial secular frequency ω_r = eΦ_RF/(√2 M ω_RF r₀²), flagged when the
/// Mathieu q reaches [`PSEUDOPOTENTIAL_Q_LIMIT`].
pub fn secular_frequency(trap: &TrapConfig) -> Flagged<f64> {
    let e = CODATA.elementary_charge;
    let omega_r = e * trap.rf_amplitude
        / (2.0_f64.sqrt() * trap.species.mass * trap.rf_frequency * trap.r0 * trap.r0);
    let (_, q) = mathieu_parameters(trap);
    if q >= PSEUDOPOTENTIAL_Q_LIMIT {
        Flagged::with_flag(
            omega_r,
            format!("Mathieu q = {q:.3} >= {PSEUDOPOTENTIAL_Q_LIMIT}: pseudopotential approximation suspect"),
        )
    } else {
        Flagged::clean(omega_r)
    }
}

/// Axial angular frequency from the calibrated square-root law
/// ω_x = ω_ref·√(V/V_ref).
pub fn axial_frequency(endcap_voltage: f64, calibration: &AxialCalibration) -> Result<f64> {
    if endcap_voltage < 0.0 {
        return Err(Error::InvalidInput(
            "endcap voltage must be >= 0".into(),
        ));
    }
    Ok(calibration.omega_ref * (endcap_voltage / calibration.v_ref).sqrt())
}

/// 1-σ thermal localization radius √(k_B T/(M ω_r²)) of an ion at
/// temperature T in a harmonic well of angular frequency ω_r.
pub fn thermal_localization(temperature: f64, omega_r: f64, species: &IonSpecies) -> Result<f64> {
    if temperature < 0.0 || omega_r <= 0.0 || !(temperature + omega_r).is_finite() {
        return Err(Error::InvalidInput(
            "temperature must be >= 0 and frequency positive".into(),
        ));
    }
    Ok((CODATA.boltzmann * temperature / (species.mass * omega_r * omega_r)).sqrt())
}

/// Relative intensity of a Gaussian addressing beam at the neighboring ion:
/// exp(-2s²/w²) for ion spacing s and 1/e² spot radius w = diameter/2.
pub fn crosstalk(ion_spacing: f64, spot_diameter: f64) -> Result<f64> {
    if ion_spacing <= 0.0 || spot_diameter < 0.0 || !(ion_spacing + spot_diameter).is_finite() {
        return Err(Error::InvalidInput(
            "spacing must be positive and diameter >= 0".into(),
        ));
    }
    if spot_diameter == 0.0 {
        return Ok(0.0);
    }
    let w = spot_diameter / 2.0;
    Ok((-2.0 * ion_spacing * ion_spacing / (w * w)).exp())
}

/// Derived operating point of a trap configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrapReport {
    pub mathieu_a: f64,
    pub mathieu_q: f64,
    /// Radial secular angular frequency (rad/s).
    pub secular_frequency: f64,
    /// Pseudopotential well depth at ρ = r₀ (eV).
    pub pseudo_well_depth_ev: f64,
    /// Axial angular frequency at the configured endcap voltage (rad/s).
    pub axial_frequency: f64,
    /// 1-σ thermal radius at `temperature` (m).
    pub localization_radius: f64,
    /// Temperature used for the localization radius (K).
    pub temperature: f64,
    pub flags: Vec<String>,
}

/// Evaluate the full trap report at a given ion temperature.
pub fn trap_report(
    trap: &TrapConfig,
    calibration: &AxialCalibration,
    temperature: f64,
) -> Result<TrapReport> {
    trap.validate()?;
    let (a, q) = mathieu_parameters(trap);
    let secular = secular_frequency(trap);
    let omega_x = axial_frequency(trap.endcap_voltage, calibration)?;
    let radius = thermal_localization(temperature, secular.value, &trap.species)?;
    Ok(TrapReport {
        mathieu_a: a,
        mathieu_q: q,
        secular_frequency: secular.value,
        pseudo_well_depth_ev: pseudopotential_depth_ev(trap),
        axial_frequency: omega_x,
        localization_radius: radius,
        temperature,
        flags: secular.flags,
    })
}
