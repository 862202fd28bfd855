//! Convergence scan for sideband (U-type) π pulses: infidelity of the
//! integrated dynamics against the ideal bus rotation as a function of the
//! pulse duration. Off-resonant carrier and blue-sideband terms scale the
//! error as 1/t_U², so the scan should show a log-log slope of -2 once t_U is
//! well beyond the traveling-wave lower bound.

use serde::{Deserialize, Serialize};

use super::evolve::{evolve, HamiltonianParams};
use super::{RegisterSpace, StateVector};
use crate::error::{Error, Result};

/// One scan sample.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ScanPoint {
    /// π-pulse duration (s).
    pub pulse_duration: f64,
    /// 1 - |⟨ideal|integrated⟩|² for the π pulse from |1⟩|0 phonons⟩.
    pub infidelity: f64,
}

/// Run a red-sideband π pulse from |1⟩|0 ph⟩ for each duration in
/// `durations` (seconds) and return the infidelity against the ideal U(π)
/// rotation. Single addressed ion, Ω₁ = π/t_U, Ω₀ = Ω₁/η, Δ = -ω_x.
pub fn u_pulse_infidelity_scan(
    eta: f64,
    axial_frequency: f64,
    phonon_cutoff: usize,
    durations: &[f64],
    tolerance: f64,
) -> Result<Vec<ScanPoint>> {
    if !(eta > 0.0 && eta < 1.0) || !eta.is_finite() {
        return Err(Error::InvalidInput(format!(
            "Lamb-Dicke parameter must be in (0, 1), got {eta}"
        )));
    }
    let space = RegisterSpace::new(1, phonon_cutoff)?;
    let mut ideal = StateVector::basis(space, &[1], 0)?;
    ideal.apply_u(0, std::f64::consts::PI, std::f64::consts::FRAC_PI_2)?;

    let mut points = Vec::with_capacity(durations.len());
    for &t_u in durations {
        let rabi_1 = std::f64::consts::PI / t_u;
        let params = HamiltonianParams {
            rabi_0: rabi_1 / eta,
            phase_0: 0.0,
            rabi_1,
            phase_1: 0.0,
            detuning: -axial_frequency,
            axial_frequency,
            target: 0,
        };
        let mut state = StateVector::basis(space, &[1], 0)?;
        evolve(&mut state, &params, t_u, tolerance)?;
        let overlap = state.overlap(&ideal);
        points.push(ScanPoint {
            pulse_duration: t_u,
            infidelity: (1.0 - overlap * overlap).max(0.0),
        });
    }
    Ok(points)
}

/// Least-squares slope of ln(infidelity) against ln(t_U).
pub fn log_log_slope(points: &[ScanPoint]) -> f64 {
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.pulse_duration.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.infidelity.max(1e-300).ln()).collect();
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| x * y).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn infidelity_falls_with_duration() {
        let omega_x = 2.0 * PI * 500e3;
        let period = 2.0 * PI / omega_x;
        let durations = [50.25 * period, 160.25 * period, 502.25 * period];
        let points = u_pulse_infidelity_scan(0.137, omega_x, 4, &durations, 1e-10).unwrap();
        assert!(points[0].infidelity > points[1].infidelity);
        assert!(points[1].infidelity > points[2].infidelity);
        assert!(points[2].infidelity > 0.0);
    }
}
