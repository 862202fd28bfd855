//! Algebraic identities of the trap formulas over randomly drawn
//! configurations, at machine-precision tolerance.

use iontrap_core::constants::ELECTRON_VOLT;
use iontrap_core::species::ca40_species;
use iontrap_core::trap::{
    axial_frequency, crosstalk, mathieu_parameters, pseudopotential_depth_ev, secular_frequency,
    AxialCalibration, TrapConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn random_trap(rng: &mut ChaCha8Rng) -> TrapConfig {
    TrapConfig {
        species: ca40_species(),
        rf_amplitude: rng.random_range(50.0..2000.0),
        dc_offset: rng.random_range(0.0..20.0),
        rf_frequency: 2.0 * PI * rng.random_range(2e6..40e6),
        r0: rng.random_range(0.3e-3..5e-3),
        endcap_voltage: rng.random_range(0.0..500.0),
        shielding_factor: rng.random_range(0.05..1.0),
    }
}

#[test]
fn secular_frequency_identity_over_random_configs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7001);
    for _ in 0..200 {
        let trap = random_trap(&mut rng);
        let (_, q) = mathieu_parameters(&trap);
        let w = secular_frequency(&trap).value;
        let identity = q * trap.rf_frequency / (2.0 * 2.0_f64.sqrt());
        assert!(
            (w - identity).abs() / w.abs() < 1e-12,
            "ω_r = {w}, q·ω_RF/(2√2) = {identity}"
        );
    }
}

#[test]
fn depth_identity_over_random_configs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7002);
    for _ in 0..200 {
        let trap = random_trap(&mut rng);
        let depth = pseudopotential_depth_ev(&trap);
        let w = secular_frequency(&trap).value;
        let identity = 0.5 * trap.species.mass * w * w * trap.r0 * trap.r0 / ELECTRON_VOLT;
        assert!(
            (depth - identity).abs() / depth < 1e-12,
            "depth {depth} vs ½Mω_r²r₀²/e = {identity}"
        );
    }
}

#[test]
fn axial_scaling_over_random_voltages() {
    let mut rng = ChaCha8Rng::seed_from_u64(7003);
    let cal = AxialCalibration::default();
    for _ in 0..200 {
        let v: f64 = rng.random_range(1.0..500.0);
        let a: f64 = rng.random_range(0.01..50.0);
        let w1 = axial_frequency(v, &cal).unwrap();
        let wa = axial_frequency(a * v, &cal).unwrap();
        assert!((wa / w1 - a.sqrt()).abs() < 1e-12);
    }
}

#[test]
fn crosstalk_bounds_and_monotonicity_over_random_geometry() {
    let mut rng = ChaCha8Rng::seed_from_u64(7004);
    for _ in 0..200 {
        let s: f64 = rng.random_range(1e-6..50e-6);
        let d: f64 = rng.random_range(1e-6..50e-6);
        let c = crosstalk(s, d).unwrap();
        assert!((0.0..1.0).contains(&c));
        if c > 1e-290 {
            // strict monotonicity holds wherever the exponential has not
            // underflowed to zero
            assert!(crosstalk(s, d * 1.01).unwrap() > c);
            assert!(crosstalk(s * 1.01, d).unwrap() < c);
        }
    }
}
