//! Laser-interaction scalar formulas and the tolerance/power/error budgets:
//! Lamb-Dicke parameter, Rabi frequencies, pulse-duration lower bounds,
//! first-principles laser power, and per-gate error estimates.

use serde::{Deserialize, Serialize};

use crate::constants::CODATA;
use crate::error::{Error, Result};
use crate::report::Flagged;
use crate::species::{IonSpecies, Transition};

/// Qubit addressing scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    /// One narrow-line laser driving the qubit transition directly.
    Single,
    /// Pump/Stokes pair through a detuned intermediate level.
    Raman,
}

/// Laser drive fields.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "scheme", rename_all = "lowercase")]
pub enum LaserDrive {
    Single {
        /// Wavelength (m).
        wavelength: f64,
        /// Electric field strength at the ion (V/m).
        field: f64,
    },
    Raman {
        pump_wavelength: f64,
        stokes_wavelength: f64,
        pump_field: f64,
        stokes_field: f64,
        /// Detuning δ of the virtual level from the intermediate level (rad/s).
        detuning: f64,
    },
}

/// Laser parameters for coupling-strength calculations.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LaserParams {
    pub drive: LaserDrive,
    /// Polarization/quantum-number coefficient β, of order 1.
    pub polarization_factor: f64,
    /// Geometry factor k·e_x/|k| in (0, 1]. For the Raman drive this single
    /// factor stands in for the full two-beam geometry; no default is claimed
    /// to reproduce quoted Raman timings.
    pub axial_projection: f64,
    /// 1/e² focal spot radius w₀ (m).
    pub spot_radius: f64,
}

impl LaserParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.polarization_factor > 0.0 && self.polarization_factor <= 1.0)
            || !self.polarization_factor.is_finite()
        {
            return Err(Error::InvalidInput(format!(
                "polarization factor {} outside (0, 1]",
                self.polarization_factor
            )));
        }
        if !(self.axial_projection > 0.0 && self.axial_projection <= 1.0)
            || !self.axial_projection.is_finite()
        {
            return Err(Error::InvalidInput(format!(
                "axial projection {} outside (0, 1]",
                self.axial_projection
            )));
        }
        if self.spot_radius <= 0.0 || !self.spot_radius.is_finite() {
            return Err(Error::InvalidInput("spot radius must be positive".into()));
        }
        if let LaserDrive::Raman { detuning, .. } = self.drive {
            if detuning == 0.0 {
                return Err(Error::InvalidInput(
                    "Raman detuning must be nonzero".into(),
                ));
            }
        }
        Ok(())
    }

    /// Axial wavenumber entering the Lamb-Dicke parameter: k·projection for a
    /// single beam, (k_p + k_s)·projection for counter-propagating Raman
    /// beams.
    pub fn axial_wavenumber(&self) -> f64 {
        use std::f64::consts::TAU;
        match &self.drive {
            LaserDrive::Single { wavelength, .. } => TAU / wavelength * self.axial_projection,
            LaserDrive::Raman {
                pump_wavelength,
                stokes_wavelength,
                ..
            } => (TAU / pump_wavelength + TAU / stokes_wavelength) * self.axial_projection,
        }
    }
}

/// Lamb-Dicke parameter η = √(ħ/(2Mω_x))·k_axial.
pub fn lamb_dicke(species: &IonSpecies, axial_frequency: f64, params: &LaserParams) -> Result<f64> {
    params.validate()?;
    if axial_frequency <= 0.0 || !axial_frequency.is_finite() {
        return Err(Error::InvalidInput("axial frequency must be positive".into()));
    }
    let x0 = (CODATA.reduced_planck / (2.0 * species.mass * axial_frequency)).sqrt();
    Ok(x0 * params.axial_wavenumber())
}

/// On-resonance Rabi frequency Ω₀ (rad/s).
///
/// Single laser: Ω₀ = (eE/ħ)√(A/(cαk³))·β.
/// Raman: Ω₀ = (e²A/(ħ²cαk³))·E_p E_s/(4δ)·β, flagged when |δ| is not at
/// least 10× the resulting Ω₀ (virtual-level treatment suspect).
pub fn rabi_zero(params: &LaserParams, transition: &Transition) -> Result<Flagged<f64>> {
    params.validate()?;
    let e = CODATA.elementary_charge;
    let hbar = CODATA.reduced_planck;
    let c = CODATA.speed_of_light;
    let alpha = CODATA.fine_structure;
    let k = transition.wavenumber();
    let k3 = k * k * k;
    let beta = params.polarization_factor;

    match &params.drive {
        LaserDrive::Single { field, .. } => {
            let omega0 = e * field / hbar * (transition.einstein_a / (c * alpha * k3)).sqrt() * beta;
            Ok(Flagged::clean(omega0))
        }
        LaserDrive::Raman {
            pump_field,
            stokes_field,
            detuning,
            ..
        } => {
            let omega0 = e * e * transition.einstein_a / (hbar * hbar * c * alpha * k3)
                * (pump_field * stokes_field)
                / (4.0 * detuning)
                * beta;
            if detuning.abs() < 10.0 * omega0.abs() {
                Ok(Flagged::with_flag(
                    omega0,
                    format!(
                        "detuning {:.3e} rad/s below 10×Ω₀ = {:.3e}: virtual-level approximation suspect",
                        detuning,
                        10.0 * omega0.abs()
                    ),
                ))
            } else {
                Ok(Flagged::clean(omega0))
            }
        }
    }
}

/// Sideband Rabi frequency Ω₁ = (η/√N)·Ω₀, flagged when η/√N > 0.3 where the
/// first-order Lamb-Dicke expansion degrades.
pub fn rabi_one(rabi_zero: f64, eta: f64, ion_count: usize) -> Result<Flagged<f64>> {
    if ion_count == 0 {
        return Err(Error::InvalidInput("ion count must be at least 1".into()));
    }
    let ratio = eta / (ion_count as f64).sqrt();
    let omega1 = ratio * rabi_zero;
    if ratio > 0.3 {
        Ok(Flagged::with_flag(
            omega1,
            format!("η/√N = {ratio:.3} > 0.3: Lamb-Dicke expansion suspect"),
        ))
    } else {
        Ok(Flagged::clean(omega1))
    }
}

/// Lower bounds on pulse durations; each is a "must exceed" threshold.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PulseBounds {
    /// Carrier (V-type) π pulse: t_V ≫ πη/(√N ω_x) (s).
    pub t_v_min: f64,
    /// Traveling-wave sideband (U-type) π pulse: t_U ≫ π√N/(η ω_x) (s).
    pub t_u_traveling_min: f64,
    /// Standing-wave sideband π pulse: t_U ≫ 2.6π/ω_x (s), N-independent.
    pub t_u_standing_min: f64,
}

pub fn pulse_bounds(ion_count: usize, eta: f64, axial_frequency: f64) -> Result<PulseBounds> {
    use std::f64::consts::PI;
    if ion_count == 0 || eta <= 0.0 || axial_frequency <= 0.0 || !(eta * axial_frequency).is_finite() {
        return Err(Error::InvalidInput(
            "need ion_count >= 1, eta > 0 and positive axial frequency".into(),
        ));
    }
    let sqrt_n = (ion_count as f64).sqrt();
    Ok(PulseBounds {
        t_v_min: PI * eta / (sqrt_n * axial_frequency),
        t_u_traveling_min: PI * sqrt_n / (eta * axial_frequency),
        t_u_standing_min: 2.6 * PI / axial_frequency,
    })
}

/// Inputs for the first-principles power computation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PowerQuery {
    pub scheme: Scheme,
    /// 1/e² focal spot radius w₀ (m).
    pub spot_radius: f64,
    /// Duration of a U-type π pulse (s).
    pub pulse_duration: f64,
    /// Axial angular frequency ω_x (rad/s).
    pub axial_frequency: f64,
    pub ion_count: usize,
    /// Raman detuning δ (rad/s); required for the Raman scheme.
    pub raman_detuning: Option<f64>,
    /// Geometry factor for the Lamb-Dicke parameter.
    pub axial_projection: f64,
    pub polarization_factor: f64,
}

/// Power requirement with the full derivation chain logged.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PowerBudget {
    /// Required beam power (W); per beam for the Raman pair.
    pub power: f64,
    /// Sideband Rabi frequency Ω₁ = π/t_U (rad/s).
    pub rabi_one: f64,
    /// Carrier Rabi frequency Ω₀ = √N·Ω₁/η (rad/s).
    pub rabi_zero: f64,
    /// Electric field strength solved from Ω₀ (V/m).
    pub field: f64,
    /// Lamb-Dicke parameter used in the chain.
    pub eta: f64,
    /// Numerical value of the closed-form shortcut expression, recorded for
    /// reference only: that expression is dimensionally inconsistent as
    /// printed, so `power` always comes from the Rabi-frequency chain.
    pub closed_form_value: f64,
    pub notes: Vec<String>,
}

/// Laser power needed to drive a U-type π pulse of duration t_U, derived from
/// first principles: Ω₁ = π/t_U → Ω₀ = √N·Ω₁/η → field from the Rabi-frequency
/// definition → P = (cε₀/4)πw₀²|E|² for a Gaussian beam.
pub fn laser_power(
    query: &PowerQuery,
    species: &IonSpecies,
    transition: &Transition,
) -> Result<PowerBudget> {
    use std::f64::consts::PI;
    if query.pulse_duration <= 0.0 || !query.pulse_duration.is_finite() {
        return Err(Error::InvalidInput("pulse duration must be positive".into()));
    }
    if query.ion_count == 0 {
        return Err(Error::InvalidInput("ion count must be at least 1".into()));
    }
    let e = CODATA.elementary_charge;
    let hbar = CODATA.reduced_planck;
    let c = CODATA.speed_of_light;
    let eps0 = CODATA.vacuum_permittivity;
    let alpha = CODATA.fine_structure;
    let mass = species.mass;
    let n = query.ion_count as f64;
    let k = transition.wavenumber();
    let k3 = k * k * k;
    let a_coeff = transition.einstein_a;
    let beta = query.polarization_factor;
    let omega_laser = c * k;

    let x0 = (hbar / (2.0 * mass * query.axial_frequency)).sqrt();
    let eta = match query.scheme {
        Scheme::Single => x0 * k * query.axial_projection,
        Scheme::Raman => x0 * 2.0 * k * query.axial_projection,
    };

    let rabi_1 = PI / query.pulse_duration;
    let rabi_0 = n.sqrt() * rabi_1 / eta;
    let gaussian_power = |field: f64| c * eps0 / 4.0 * PI * query.spot_radius.powi(2) * field * field;

    let mut notes = vec![
        "power derived from the chain Ω₁ = π/t_U → Ω₀ = √N·Ω₁/η → E → P = (cε₀/4)πw₀²|E|²"
            .to_string(),
        "closed_form_value evaluates the printed shortcut expression, which is dimensionally inconsistent; it is recorded for reference only".to_string(),
    ];

    match query.scheme {
        Scheme::Single => {
            let field = rabi_0 * hbar / (e * (a_coeff / (c * alpha * k3)).sqrt() * beta);
            let closed_form = hbar * query.spot_radius.powi(2) * omega_laser * query.axial_frequency
                * n
                * mass
                / (a_coeff * query.pulse_duration.powi(2));
            Ok(PowerBudget {
                power: gaussian_power(field),
                rabi_one: rabi_1,
                rabi_zero: rabi_0,
                field,
                eta,
                closed_form_value: closed_form,
                notes,
            })
        }
        Scheme::Raman => {
            let delta = query.raman_detuning.ok_or_else(|| {
                Error::InvalidInput("Raman power needs a detuning".into())
            })?;
            if delta == 0.0 {
                return Err(Error::InvalidInput("Raman detuning must be nonzero".into()));
            }
            // equal pump/Stokes fields: Ω₀ = (e²A/(ħ²cαk³))·E²/(4δ)·β
            let field_sq =
                rabi_0.abs() * 4.0 * delta.abs() * hbar * hbar * c * alpha * k3 / (e * e * a_coeff * beta);
            let field = field_sq.sqrt();
            let closed_form = hbar * query.spot_radius.powi(2) * omega_laser * omega_laser
                * delta.abs()
                * n
                * mass
                / (c * a_coeff * query.pulse_duration)
                * (n * mass * hbar * query.axial_frequency).sqrt();
            notes.push("Raman power is per beam, pump and Stokes assumed equal".to_string());
            Ok(PowerBudget {
                power: gaussian_power(field),
                rabi_one: rabi_1,
                rabi_zero: rabi_0,
                field,
                eta,
                closed_form_value: closed_form,
                notes,
            })
        }
    }
}

/// Addressing-wave configuration for the per-gate error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorScheme {
    Standing,
    Traveling,
    Raman,
}

/// Minimum error probability per CNOT for Ca⁺ ions:
/// 8.9×10⁻⁶·N^(1/3) (standing wave), 3.6×10⁻⁵·N^(1/2) (traveling wave),
/// 1.3×10⁻⁸·N^(1/2) (Raman at the 100 Hz trap floor).
pub fn gate_error(scheme: ErrorScheme, ion_count: usize) -> Result<f64> {
    if ion_count == 0 {
        return Err(Error::InvalidInput("ion count must be at least 1".into()));
    }
    let n = ion_count as f64;
    Ok(match scheme {
        ErrorScheme::Standing => 8.9e-6 * n.cbrt(),
        ErrorScheme::Traveling => 3.6e-5 * n.sqrt(),
        ErrorScheme::Raman => 1.3e-8 * n.sqrt(),
    })
}

/// Assumptions echoed with every tolerance report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ToleranceAssumptions {
    pub scheme: Scheme,
    pub error_scheme: ErrorScheme,
    pub ion_count: usize,
    /// ω_x (rad/s).
    pub axial_frequency: f64,
    pub axial_projection: f64,
    pub polarization_factor: f64,
    /// Transition used for A and k.
    pub transition_label: String,
    pub wavelength: f64,
    pub einstein_a: f64,
    /// t_U used for the power figure (s).
    pub pulse_duration: f64,
    pub spot_radius: f64,
    pub raman_detuning: Option<f64>,
}

/// Combined tolerance report: η, pulse-duration bounds, power and gate error.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ToleranceReport {
    pub eta: f64,
    pub t_v_min: f64,
    pub t_u_traveling_min: f64,
    pub t_u_standing_min: f64,
    /// Power for the requested pulse duration (W).
    pub power: f64,
    pub gate_error: f64,
    pub power_budget: PowerBudget,
    pub assumptions: ToleranceAssumptions,
}

#[allow(clippy::too_many_arguments)]
pub fn tolerance_report(
    species: &IonSpecies,
    transition: &Transition,
    scheme: Scheme,
    error_scheme: ErrorScheme,
    ion_count: usize,
    axial_frequency: f64,
    axial_projection: f64,
    polarization_factor: f64,
    pulse_duration: f64,
    spot_radius: f64,
    raman_detuning: Option<f64>,
) -> Result<ToleranceReport> {
    let query = PowerQuery {
        scheme,
        spot_radius,
        pulse_duration,
        axial_frequency,
        ion_count,
        raman_detuning,
        axial_projection,
        polarization_factor,
    };
    let budget = laser_power(&query, species, transition)?;
    let bounds = pulse_bounds(ion_count, budget.eta, axial_frequency)?;
    let error = gate_error(error_scheme, ion_count)?;
    Ok(ToleranceReport {
        eta: budget.eta,
        t_v_min: bounds.t_v_min,
        t_u_traveling_min: bounds.t_u_traveling_min,
        t_u_standing_min: bounds.t_u_standing_min,
        power: budget.power,
        gate_error: error,
        assumptions: ToleranceAssumptions {
            scheme,
            error_scheme,
            ion_count,
            axial_frequency,
            axial_projection,
            polarization_factor,
            transition_label: transition.label.clone(),
            wavelength: transition.wavelength,
            einstein_a: transition.einstein_a,
            pulse_duration,
            spot_radius,
            raman_detuning,
        },
        power_budget: budget,
    })
}
