//! Time integration of the full interaction Hamiltonian
//!
//!   H/ħ = (i Ω₀/2) e^{iΔt} |0⟩⟨1|_m
//!       + (i Ω₁/2) e^{iΔt} |0⟩⟨1|_m (â e^{-iω_x t} - â† e^{+iω_x t}) + h.a.
//!
//! including the carrier and both sideband terms, with Jaynes-Cummings
//! √(n+1) scaling on the ladder operators. At Δ = -ω_x the â† term is
//! stationary and the dynamics reduces to the red-sideband U pulse up to
//! off-resonant corrections; the integrator keeps those corrections, which is
//! the point of running it.
//!
//! Integration is fixed-step classic fourth-order Runge-Kutta with the step
//! bounded by 1/40 of the fastest period in play, plus a step-halving
//! (Richardson) comparison against the caller's tolerance.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::StateVector;
use crate::error::{Error, Result};

/// Parameters of the laser-ion interaction Hamiltonian for one addressed ion.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct HamiltonianParams {
    /// Carrier Rabi frequency magnitude |Ω₀| (rad/s).
    pub rabi_0: f64,
    /// Carrier phase arg Ω₀ (rad).
    pub phase_0: f64,
    /// Sideband Rabi frequency magnitude |Ω₁| (rad/s).
    pub rabi_1: f64,
    /// Sideband phase arg Ω₁ (rad).
    pub phase_1: f64,
    /// Laser detuning Δ (rad/s); Δ = -ω_x selects the red sideband.
    pub detuning: f64,
    /// CM-mode angular frequency ω_x (rad/s).
    pub axial_frequency: f64,
    /// Addressed ion.
    pub target: usize,
}

/// What the integrator actually did.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EvolutionReport {
    /// Steps of the accepted (finer) run.
    pub steps: usize,
    /// Step size of the accepted run (s).
    pub step: f64,
    /// L2 distance between the coarse and fine runs.
    pub richardson_error: f64,
    /// |norm - 1| of the accepted final state.
    pub norm_drift: f64,
}

/// dψ/dt = -i (H/ħ) ψ at time `t` into `out`.
fn derivative(
    state: &[Complex64],
    space: &super::RegisterSpace,
    params: &HamiltonianParams,
    t: f64,
    out: &mut [Complex64],
) {
    out.fill(Complex64::ZERO);
    let m = params.target;
    let stride = space.ion_stride(m);
    let block = space.ion_block();
    let n_max = space.phonon_cutoff;

    // coefficient of |0⟩⟨1| from the carrier term
    let carrier = Complex64::i()
        * Complex64::from_polar(params.rabi_0 / 2.0, params.phase_0 + params.detuning * t);
    // common sideband prefactor (i Ω₁/2) e^{iΔt}
    let side = Complex64::i()
        * Complex64::from_polar(params.rabi_1 / 2.0, params.phase_1 + params.detuning * t);
    let rot_minus = Complex64::from_polar(1.0, -params.axial_frequency * t);
    let rot_plus = Complex64::from_polar(1.0, params.axial_frequency * t);
    let minus_i = -Complex64::i();

    for base in 0..block {
        if !(base / stride).is_multiple_of(super::LEVELS_PER_ION) {
            continue;
        }
        let partner_base = base + stride; // same ion pattern with ion m in |1⟩
        for n in 0..=n_max {
            let idx0 = n * block + base; // |0⟩_m, n phonons
            let idx1 = n * block + partner_base; // |1⟩_m, n phonons

            // carrier: H |0,n⟩ gets carrier·ψ(|1,n⟩); h.a. feeds back
            let h0 = carrier * state[idx1];
            let h1 = carrier.conj() * state[idx0];
            out[idx0] += minus_i * h0;
            out[idx1] += minus_i * h1;

            // â term: |0,n⟩⟨1,n+1| with weight √(n+1)·e^{-iω_x t}
            if n < n_max {
                let root = ((n + 1) as f64).sqrt();
                let idx1_up = (n + 1) * block + partner_base;
                let coeff = side * rot_minus * root;
                out[idx0] += minus_i * coeff * state[idx1_up];
                out[idx1_up] += minus_i * coeff.conj() * state[idx0];
            }

            // -â† term: |0,n+1⟩⟨1,n| with weight -√(n+1)·e^{+iω_x t}
            if n < n_max {
                let root = ((n + 1) as f64).sqrt();
                let idx0_up = (n + 1) * block + base;
                let coeff = -side * rot_plus * root;
                out[idx0_up] += minus_i * coeff * state[idx1];
                out[idx1] += minus_i * coeff.conj() * state[idx0_up];
            }
        }
    }
}

fn rk4_run(
    initial: &[Complex64],
    space: &super::RegisterSpace,
    params: &HamiltonianParams,
    duration: f64,
    steps: usize,
) -> Vec<Complex64> {
    let dim = initial.len();
    let h = duration / steps as f64;
    let mut psi = initial.to_vec();
    let mut k1 = vec![Complex64::ZERO; dim];
    let mut k2 = vec![Complex64::ZERO; dim];
    let mut k3 = vec![Complex64::ZERO; dim];
    let mut k4 = vec![Complex64::ZERO; dim];
    let mut tmp = vec![Complex64::ZERO; dim];

    for step in 0..steps {
        let t = step as f64 * h;
        derivative(&psi, space, params, t, &mut k1);
        for i in 0..dim {
            tmp[i] = psi[i] + 0.5 * h * k1[i];
        }
        derivative(&tmp, space, params, t + 0.5 * h, &mut k2);
        for i in 0..dim {
            tmp[i] = psi[i] + 0.5 * h * k2[i];
        }
        derivative(&tmp, space, params, t + 0.5 * h, &mut k3);
        for i in 0..dim {
            tmp[i] = psi[i] + h * k3[i];
        }
        derivative(&tmp, space, params, t + h, &mut k4);
        for i in 0..dim {
            psi[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    psi
}

fn l2_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Integrate the interaction Hamiltonian for `duration` seconds, refining the
/// step until two runs at step h and h/2 agree within `tolerance` (L2).
/// The state is replaced by the finer solution.
pub fn evolve(
    state: &mut StateVector,
    params: &HamiltonianParams,
    duration: f64,
    tolerance: f64,
) -> Result<EvolutionReport> {
    if duration <= 0.0 || !duration.is_finite() {
        return Err(Error::InvalidInput(format!(
            "duration must be positive, got {duration}"
        )));
    }
    if tolerance <= 0.0 || !tolerance.is_finite() {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    let space = state.space();
    space.check_ion(params.target)?;
    if params.axial_frequency <= 0.0 || !params.axial_frequency.is_finite() {
        return Err(Error::InvalidInput(
            "axial frequency must be positive".into(),
        ));
    }

    // fastest timescale in the problem bounds the step
    let tau = std::f64::consts::TAU;
    let mut h_max = tau / params.axial_frequency / 40.0;
    for scale in [
        params.rabi_0.abs(),
        params.rabi_1.abs(),
        params.detuning.abs(),
    ] {
        if scale > 0.0 {
            h_max = h_max.min(tau / scale / 40.0);
        }
    }
    let mut steps = ((duration / h_max).ceil() as usize).max(16);

    const MAX_STEPS: usize = 1 << 23;
    let initial = state.amps.clone();
    let mut coarse = rk4_run(&initial, &space, params, duration, steps);
    loop {
        let fine_steps = steps * 2;
        let fine_h = duration / fine_steps as f64;
        if fine_h < 1e-18 {
            return Err(Error::StepUnderflow {
                step: fine_h,
                min_step: 1e-18,
            });
        }
        let fine = rk4_run(&initial, &space, params, duration, fine_steps);
        let err = l2_distance(&coarse, &fine);
        if err <= tolerance {
            let norm: f64 = fine.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            let norm_drift = (norm - 1.0).abs();
            state.amps = fine;
            return Ok(EvolutionReport {
                steps: fine_steps,
                step: duration / fine_steps as f64,
                richardson_error: err,
                norm_drift,
            });
        }
        if fine_steps >= MAX_STEPS {
            return Err(Error::ToleranceNotMet {
                tolerance,
                achieved: err,
            });
        }
        steps = fine_steps;
        coarse = fine;
    }
}
