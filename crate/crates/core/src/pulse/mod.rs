//! Pulse-level quantum simulation of the laser-ion register.
//!
//! The register is (3-level ions) ⊗ (center-of-mass phonon Fock space):
//! each ion carries {|0⟩, |1⟩, |aux⟩} and the CM mode is truncated at a
//! configurable phonon cutoff. Ideal V (carrier) and U (red-sideband) pulse
//! unitaries act on this space; composite gates (Hadamard, NOT, the
//! five-pulse CNOT) are built from them, and [`evolve`] integrates the full
//! time-dependent interaction Hamiltonian for leakage studies.
//!
//! Basis order: phonon index outermost, then ion N-1 … ion 0 innermost, so
//! `index = phonon·3^N + Σ_m level_m·3^m` with levels 0, 1, 2 = |0⟩, |1⟩,
//! |aux⟩. State serialization follows this order.

mod evolve;
mod scan;

pub use evolve::{evolve, EvolutionReport, HamiltonianParams};
pub use scan::{log_log_slope, u_pulse_infidelity_scan, ScanPoint};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Levels per ion: |0⟩, |1⟩ and the auxiliary level.
pub const LEVELS_PER_ION: usize = 3;

/// Amplitude-count cap; 3-level ions make large registers explode quickly.
const DIMENSION_CAP: usize = 4_000_000;

/// Shape of the ion-phonon register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegisterSpace {
    pub ion_count: usize,
    /// Highest Fock state kept for the CM mode (states 0..=phonon_cutoff).
    pub phonon_cutoff: usize,
}

impl RegisterSpace {
    pub fn new(ion_count: usize, phonon_cutoff: usize) -> Result<Self> {
        if ion_count == 0 {
            return Err(Error::InvalidInput("ion count must be at least 1".into()));
        }
        if phonon_cutoff < 1 {
            return Err(Error::InvalidInput(
                "phonon cutoff must be at least 1 (the bus needs |0⟩ and |1⟩)".into(),
            ));
        }
        let space = Self {
            ion_count,
            phonon_cutoff,
        };
        match space.checked_dimension() {
            Some(d) if d <= DIMENSION_CAP => Ok(space),
            _ => Err(Error::InvalidInput(format!(
                "register 3^{ion_count}·{} exceeds the {DIMENSION_CAP}-amplitude cap",
                phonon_cutoff + 1
            ))),
        }
    }

    fn checked_dimension(&self) -> Option<usize> {
        let ions = LEVELS_PER_ION.checked_pow(u32::try_from(self.ion_count).ok()?)?;
        ions.checked_mul(self.phonon_cutoff + 1)
    }

    /// Total Hilbert-space dimension 3^N·(n_max+1).
    pub fn dimension(&self) -> usize {
        self.checked_dimension().expect("validated at construction")
    }

    /// 3^N: size of one phonon block.
    pub fn ion_block(&self) -> usize {
        LEVELS_PER_ION.pow(self.ion_count as u32)
    }

    /// 3^m: stride of ion m within a phonon block.
    pub fn ion_stride(&self, ion: usize) -> usize {
        LEVELS_PER_ION.pow(ion as u32)
    }

    pub fn phonon_of(&self, index: usize) -> usize {
        index / self.ion_block()
    }

    pub fn level_of(&self, index: usize, ion: usize) -> usize {
        index / self.ion_stride(ion) % LEVELS_PER_ION
    }

    /// Compose a basis index from a phonon number and per-ion levels
    /// (`levels[m]` is ion m).
    pub fn index_of(&self, phonon: usize, levels: &[usize]) -> usize {
        debug_assert_eq!(levels.len(), self.ion_count);
        let mut idx = phonon * self.ion_block();
        for (m, &level) in levels.iter().enumerate() {
            idx += level * self.ion_stride(m);
        }
        idx
    }

    fn check_ion(&self, ion: usize) -> Result<()> {
        if ion >= self.ion_count {
            Err(Error::IonIndex {
                index: ion,
                count: self.ion_count,
            })
        } else {
            Ok(())
        }
    }
}

/// The four ideal pulse types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PulseKind {
    /// Carrier rotation on {|0⟩, |1⟩}.
    V,
    /// Carrier rotation on {|0⟩, |aux⟩}; |1⟩ untouched.
    VAux,
    /// Red-sideband rotation on {|0⟩|1ph⟩, |1⟩|0ph⟩}.
    U,
    /// Red-sideband rotation on {|0⟩|1ph⟩, |aux⟩|0ph⟩}.
    UAux,
}

/// One laser pulse: kind, target ion, rotation angle θ and laser phase φ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PulseSpec {
    pub kind: PulseKind,
    pub ion: usize,
    /// Rotation angle θ (rad), θ ≥ 0.
    pub theta: f64,
    /// Laser phase φ (rad).
    pub phi: f64,
}

/// Pure state of the ion-phonon register.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    space: RegisterSpace,
    amps: Vec<Complex64>,
}

/// Result of a projective readout of every ion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    /// Measured logical values, ion N-1 first (matching |b_{N-1}…b_0⟩).
    pub bits: String,
    /// Total auxiliary-level population before the measurement.
    pub aux_population: f64,
    /// Set when `aux_population` exceeded 1e-6.
    pub aux_leakage_flagged: bool,
}

impl StateVector {
    /// All ions in |0⟩, phonon bus in |0⟩.
    pub fn ground(space: RegisterSpace) -> Self {
        let mut amps = vec![Complex64::ZERO; space.dimension()];
        amps[0] = Complex64::ONE;
        Self { space, amps }
    }

    /// Basis state with the given per-ion levels and phonon number.
    pub fn basis(space: RegisterSpace, levels: &[usize], phonon: usize) -> Result<Self> {
        if levels.len() != space.ion_count {
            return Err(Error::InvalidInput(format!(
                "{} levels given for {} ions",
                levels.len(),
                space.ion_count
            )));
        }
        if levels.iter().any(|&l| l >= LEVELS_PER_ION) || phonon > space.phonon_cutoff {
            return Err(Error::InvalidInput("basis label out of range".into()));
        }
        let mut amps = vec![Complex64::ZERO; space.dimension()];
        amps[space.index_of(phonon, levels)] = Complex64::ONE;
        Ok(Self { space, amps })
    }

    pub fn space(&self) -> RegisterSpace {
        self.space
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, phonon: usize, levels: &[usize]) -> Complex64 {
        self.amps[self.space.index_of(phonon, levels)]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// |⟨self|other⟩|, insensitive to global phase.
    pub fn overlap(&self, other: &Self) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            .norm()
    }

    /// Total probability of phonon numbers above 0.
    pub fn excited_phonon_population(&self) -> f64 {
        let block = self.space.ion_block();
        self.amps[block..].iter().map(|a| a.norm_sqr()).sum()
    }

    /// Total probability of any ion in |aux⟩.
    pub fn aux_population(&self) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .filter(|(idx, _)| {
                (0..self.space.ion_count).any(|m| self.space.level_of(*idx, m) == 2)
            })
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    fn check_theta(theta: f64) -> Result<()> {
        if theta < 0.0 || !theta.is_finite() {
            return Err(Error::InvalidInput(format!(
                "pulse angle must be finite and >= 0, got {theta}"
            )));
        }
        Ok(())
    }

    /// Rotation coefficients from the Rabi solution: the pair evolves by
    /// [[cos(θ/2), i·e^{iφ}·sin(θ/2)], [i·e^{-iφ}·sin(θ/2), cos(θ/2)]].
    fn rotation(theta: f64, phi: f64) -> (f64, Complex64, Complex64) {
        let c = (theta / 2.0).cos();
        let s = (theta / 2.0).sin();
        let up = Complex64::i() * Complex64::from_polar(s, phi);
        let down = Complex64::i() * Complex64::from_polar(s, -phi);
        (c, up, down)
    }

    /// Carrier rotation V̂_m(θ, φ) on {|0⟩, |1⟩} of ion m; identity on |aux⟩
    /// and on the phonon bus.
    pub fn apply_v(&mut self, ion: usize, theta: f64, phi: f64) -> Result<()> {
        self.space.check_ion(ion)?;
        Self::check_theta(theta)?;
        self.rotate_levels(ion, 1, theta, phi);
        Ok(())
    }

    /// Carrier rotation V̂ᵃᵘˣ_m(θ, φ) on {|0⟩, |aux⟩}; |1⟩ untouched.
    pub fn apply_v_aux(&mut self, ion: usize, theta: f64, phi: f64) -> Result<()> {
        self.space.check_ion(ion)?;
        Self::check_theta(theta)?;
        self.rotate_levels(ion, 2, theta, phi);
        Ok(())
    }

    fn rotate_levels(&mut self, ion: usize, upper_level: usize, theta: f64, phi: f64) {
        let (c, up, down) = Self::rotation(theta, phi);
        let stride = self.space.ion_stride(ion);
        let dim = self.amps.len();
        for idx in 0..dim {
            if self.space.level_of(idx, ion) != 0 {
                continue;
            }
            let partner = idx + upper_level * stride;
            let a0 = self.amps[idx];
            let a1 = self.amps[partner];
            self.amps[idx] = c * a0 + up * a1;
            self.amps[partner] = down * a0 + c * a1;
        }
    }

    /// Red-sideband rotation Û_m(θ', φ') on the bus pair
    /// {|0⟩_m|1 phonon⟩, |1⟩_m|0 phonons⟩}; every other basis state is left
    /// untouched (ideal-gate mode uses only the two bus states).
    pub fn apply_u(&mut self, ion: usize, theta: f64, phi: f64) -> Result<()> {
        self.space.check_ion(ion)?;
        Self::check_theta(theta)?;
        self.rotate_bus_pair(ion, 1, theta, phi);
        Ok(())
    }

    /// Red-sideband rotation Ûᵃᵘˣ_m(θ', φ') on {|0⟩_m|1 phonon⟩, |aux⟩_m|0 phonons⟩}.
    pub fn apply_u_aux(&mut self, ion: usize, theta: f64, phi: f64) -> Result<()> {
        self.space.check_ion(ion)?;
        Self::check_theta(theta)?;
        self.rotate_bus_pair(ion, 2, theta, phi);
        Ok(())
    }

    fn rotate_bus_pair(&mut self, ion: usize, upper_level: usize, theta: f64, phi: f64) {
        let (c, up, down) = Self::rotation(theta, phi);
        let stride = self.space.ion_stride(ion);
        let block = self.space.ion_block();
        // |0⟩_m ⊗ |1 phonon⟩ lives in the phonon-1 block; its partner
        // |upper⟩_m ⊗ |0 phonons⟩ in the phonon-0 block.
        for idx in block..(2 * block) {
            if self.space.level_of(idx, ion) != 0 {
                continue;
            }
            let partner = idx - block + upper_level * stride;
            let zero_one = self.amps[idx];
            let one_zero = self.amps[partner];
            self.amps[idx] = c * zero_one + up * one_zero;
            self.amps[partner] = down * zero_one + c * one_zero;
        }
    }

    pub fn apply_pulse(&mut self, pulse: &PulseSpec) -> Result<()> {
        match pulse.kind {
            PulseKind::V => self.apply_v(pulse.ion, pulse.theta, pulse.phi),
            PulseKind::VAux => self.apply_v_aux(pulse.ion, pulse.theta, pulse.phi),
            PulseKind::U => self.apply_u(pulse.ion, pulse.theta, pulse.phi),
            PulseKind::UAux => self.apply_u_aux(pulse.ion, pulse.theta, pulse.phi),
        }
    }

    pub fn apply_sequence(&mut self, pulses: &[PulseSpec]) -> Result<()> {
        for pulse in pulses {
            self.apply_pulse(pulse)?;
        }
        Ok(())
    }

    /// Single-ion Hadamard R̂_m = V̂ᵃᵘˣ_m(2π, π/2)·V̂_m(3π/2, π/2):
    /// |0⟩ → (|0⟩+|1⟩)/√2, |1⟩ → (|0⟩-|1⟩)/√2.
    pub fn hadamard(&mut self, ion: usize) -> Result<()> {
        self.apply_sequence(&hadamard_sequence(ion))
    }

    /// The two-pulse NOT composition V̂ᵃᵘˣ_m(2π, π/2)·V̂_m(π/2, π/2) taken at
    /// face value. Direct multiplication shows it is the reflection
    /// (1/√2)[[-1, 1], [1, 1]] on {|0⟩, |1⟩}, not the bit flip; see
    /// [`Self::not_gate`] for a working NOT.
    pub fn not_composite(&mut self, ion: usize) -> Result<()> {
        self.apply_v(ion, std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2)?;
        self.apply_v_aux(ion, 2.0 * std::f64::consts::PI, std::f64::consts::FRAC_PI_2)
    }

    /// True bit flip |0⟩ ↔ |1⟩: a carrier π pulse (which leaves a relative
    /// sign) followed by the auxiliary 2π pulse that repairs the sign of the
    /// |0⟩ amplitude.
    pub fn not_gate(&mut self, ion: usize) -> Result<()> {
        self.apply_v(ion, std::f64::consts::PI, std::f64::consts::FRAC_PI_2)?;
        self.apply_v_aux(ion, 2.0 * std::f64::consts::PI, std::f64::consts::FRAC_PI_2)
    }

    /// Five-pulse CNOT between control ion `c` and target ion `t`, phonon bus
    /// in |0⟩. Computational-basis action is the exact CNOT truth table; the
    /// bus returns to |0⟩ and the auxiliary populations vanish at completion.
    pub fn cnot(&mut self, control: usize, target: usize) -> Result<()> {
        self.space.check_ion(control)?;
        self.space.check_ion(target)?;
        if control == target {
            return Err(Error::SameIon { index: control });
        }
        self.apply_sequence(&cnot_sequence(control, target))
    }

    /// Projective readout of every ion in the {|0⟩ bright, |1⟩ dark} basis,
    /// collapsing the state. The phonon bus is not measured. Deterministic
    /// for a fixed seed.
    pub fn measure_seeded(&mut self, seed: u64) -> Measurement {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.measure_with(&mut rng)
    }

    /// [`Self::measure_seeded`] with a caller-managed RNG stream.
    pub fn measure_with<R: Rng>(&mut self, rng: &mut R) -> Measurement {
        let aux_population = self.aux_population();
        let mut bits = vec![b'0'; self.space.ion_count];
        for ion in (0..self.space.ion_count).rev() {
            let mut p = [0.0_f64; LEVELS_PER_ION];
            for (idx, amp) in self.amps.iter().enumerate() {
                p[self.space.level_of(idx, ion)] += amp.norm_sqr();
            }
            // sample over the qubit levels; aux weight is reported separately
            let total = p[0] + p[1];
            let outcome = if total <= 0.0 {
                0
            } else {
                usize::from(rng.random::<f64>() * total >= p[0])
            };
            bits[self.space.ion_count - 1 - ion] = if outcome == 1 { b'1' } else { b'0' };
            // collapse: project ion onto the measured level
            for (idx, amp) in self.amps.iter_mut().enumerate() {
                if idx / self.space.ion_stride(ion) % LEVELS_PER_ION != outcome {
                    *amp = Complex64::ZERO;
                }
            }
            let norm = self.norm();
            if norm > 0.0 {
                for amp in &mut self.amps {
                    *amp /= norm;
                }
            }
        }
        Measurement {
            bits: String::from_utf8(bits).expect("ascii"),
            aux_population,
            aux_leakage_flagged: aux_population > 1e-6,
        }
    }
}

/// Pulse list for the Hadamard composition, first pulse first.
pub fn hadamard_sequence(ion: usize) -> Vec<PulseSpec> {
    use std::f64::consts::{FRAC_PI_2, PI};
    vec![
        PulseSpec {
            kind: PulseKind::V,
            ion,
            theta: 3.0 * PI / 2.0,
            phi: FRAC_PI_2,
        },
        PulseSpec {
            kind: PulseKind::VAux,
            ion,
            theta: 2.0 * PI,
            phi: FRAC_PI_2,
        },
    ]
}

/// Pulse list for the five-pulse CNOT, first pulse first.
///
/// The two carrier π/2 pulses form a Ramsey pair with phases π apart
/// (-π/2 then +π/2): the first is undone by the second on the control=0
/// subspace, while the sandwiched U_c(π)·Uᵃᵘˣ_t(2π)·U_c(π) core imprints the
/// conditional sign that the pair converts into the bit flip. With both
/// carrier phases equal the control=0 subspace would receive a net π
/// rotation instead of the identity.
pub fn cnot_sequence(control: usize, target: usize) -> Vec<PulseSpec> {
    use std::f64::consts::{FRAC_PI_2, PI};
    vec![
        PulseSpec {
            kind: PulseKind::V,
            ion: target,
            theta: FRAC_PI_2,
            phi: -FRAC_PI_2,
        },
        PulseSpec {
            kind: PulseKind::U,
            ion: control,
            theta: PI,
            phi: 0.0,
        },
        PulseSpec {
            kind: PulseKind::UAux,
            ion: target,
            theta: 2.0 * PI,
            phi: 0.0,
        },
        PulseSpec {
            kind: PulseKind::U,
            ion: control,
            theta: PI,
            phi: 0.0,
        },
        PulseSpec {
            kind: PulseKind::V,
            ion: target,
            theta: FRAC_PI_2,
            phi: FRAC_PI_2,
        },
    ]
}

/// The five-pulse sequence with both carrier pulses at φ = +π/2, kept for
/// comparison; its computational-basis action is not a CNOT (the control=0
/// subspace picks up a net carrier π rotation).
pub fn cnot_sequence_uniform_phase(control: usize, target: usize) -> Vec<PulseSpec> {
    let mut seq = cnot_sequence(control, target);
    seq[0].phi = std::f64::consts::FRAC_PI_2;
    seq
}

/// Extracted computational-basis action of a pulse sequence on two ions.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TruthTable {
    /// 4×4 matrix over {|00⟩, |01⟩, |10⟩, |11⟩} (control first), entries
    /// (re, im); `matrix[row][col]` = ⟨row|sequence|col⟩ at 0 phonons.
    pub matrix: [[(f64, f64); 4]; 4],
    /// |tr(expected†·actual)|/4 against the exact CNOT truth table.
    pub fidelity: f64,
    /// Worst-case phonon population outside |0⟩ over the four inputs.
    pub max_phonon_leakage: f64,
    /// Worst-case auxiliary population over the four inputs.
    pub max_aux_population: f64,
    /// arg of each nonzero truth-table entry relative to the first (rad);
    /// residual relative phases show up here instead of being absorbed.
    pub residual_phases: Vec<f64>,
}

/// Apply `sequence` to each two-ion computational basis state (bus at 0
/// phonons) and compare with the CNOT truth table, global-phase insensitive.
pub fn verify_cnot_sequence(sequence: &[PulseSpec], phonon_cutoff: usize) -> Result<TruthTable> {
    let space = RegisterSpace::new(2, phonon_cutoff)?;
    // inputs |c t⟩ in order 00, 01, 10, 11; ion 1 = control, ion 0 = target
    let inputs = [[0usize, 0], [1, 0], [0, 1], [1, 1]];
    let expected_column = [0usize, 1, 3, 2]; // CNOT: 00→00, 01→01, 10→11, 11→10

    let mut matrix = [[(0.0, 0.0); 4]; 4];
    let mut trace = Complex64::ZERO;
    let mut max_phonon_leakage = 0.0_f64;
    let mut max_aux = 0.0_f64;
    let mut residual = Vec::new();
    let mut reference_phase: Option<f64> = None;

    for (col, levels) in inputs.iter().enumerate() {
        let mut state = StateVector::basis(space, levels, 0)?;
        state.apply_sequence(sequence)?;
        for (row, out_levels) in inputs.iter().enumerate() {
            let amp = state.amplitude(0, out_levels);
            matrix[row][col] = (amp.re, amp.im);
            if row == expected_column[col] {
                trace += amp;
                if amp.norm() > 1e-9 {
                    let phase = amp.arg();
                    match reference_phase {
                        None => {
                            reference_phase = Some(phase);
                            residual.push(0.0);
                        }
                        Some(p0) => {
                            let mut d = phase - p0;
                            while d > std::f64::consts::PI {
                                d -= 2.0 * std::f64::consts::PI;
                            }
                            while d < -std::f64::consts::PI {
                                d += 2.0 * std::f64::consts::PI;
                            }
                            residual.push(d);
                        }
                    }
                }
            }
        }
        max_phonon_leakage = max_phonon_leakage.max(state.excited_phonon_population());
        max_aux = max_aux.max(state.aux_population());
    }

    Ok(TruthTable {
        matrix,
        fidelity: trace.norm() / 4.0,
        max_phonon_leakage,
        max_aux_population: max_aux,
        residual_phases: residual,
    })
}
