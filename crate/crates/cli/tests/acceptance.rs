//! Acceptance suite: one test per shipped claim, each printing a PASS line
//! with the tolerance it enforced (visible with `--nocapture`). Tolerances
//! are pinned here, not configurable.

use std::f64::consts::PI;
use std::time::Instant;

use iontrap_core::chain::{chain_model, max_linear_ions, min_spacing, ChainConfig};
use iontrap_core::laser::{
    gate_error, laser_power, pulse_bounds, ErrorScheme, PowerQuery, Scheme,
};
use iontrap_core::pulse::{
    cnot_sequence, evolve, log_log_slope, u_pulse_infidelity_scan, verify_cnot_sequence,
    HamiltonianParams, RegisterSpace, StateVector,
};
use iontrap_core::shor::{
    factor, fleet_days, gcd, mod_pow, nfs_cost, qft_comb_distribution, resource_estimate,
    FactorOptions, QubitRegister, Segment,
};
use iontrap_core::species::ca40_species;
use iontrap_core::trap::{crosstalk, pseudopotential_depth_ev, TrapConfig};
use num_complex::Complex64;

fn pass(criterion: u32, detail: &str) {
    println!("ACCEPTANCE {criterion} PASS: {detail}");
}

/// Criterion 1: the five-pulse CNOT in the N=2, n_max=1 register reproduces
/// the CNOT truth table up to one global phase with fidelity ≥ 1-1e-10,
/// CNOT² is the identity, and the phonon bus returns to |0⟩ with leakage
/// below 1e-10. Runtime under 1 s.
#[test]
fn criterion_1_cnot_construction() {
    let start = Instant::now();

    let table = verify_cnot_sequence(&cnot_sequence(1, 0), 1).unwrap();
    assert!(
        table.fidelity >= 1.0 - 1e-10,
        "truth-table fidelity {} below 1-1e-10",
        table.fidelity
    );
    assert!(
        table.max_phonon_leakage < 1e-10,
        "phonon leakage {}",
        table.max_phonon_leakage
    );
    assert!(
        table.max_aux_population < 1e-10,
        "aux population {}",
        table.max_aux_population
    );

    let space = RegisterSpace::new(2, 1).unwrap();
    for levels in [[0usize, 0], [1, 0], [0, 1], [1, 1]] {
        let mut s = StateVector::basis(space, &levels, 0).unwrap();
        let before = s.clone();
        s.cnot(1, 0).unwrap();
        s.cnot(1, 0).unwrap();
        assert!(
            s.overlap(&before) >= 1.0 - 1e-10,
            "CNOT² failed on {levels:?}"
        );
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    pass(
        1,
        &format!(
            "five-pulse CNOT fidelity {:.3e} from 1, leakage {:.1e}, CNOT²=1, {:?}",
            1.0 - table.fidelity,
            table.max_phonon_leakage,
            elapsed
        ),
    );
}

/// Criterion 2: the two-pulse Hadamard composition reproduces
/// (|0⟩±|1⟩)/√2 to 1e-10, checked against direct matrix multiplication.
#[test]
fn criterion_2_hadamard_composition() {
    // direct multiplication of the two single-ion 3×3 pulse matrices
    let rot = |theta: f64, phi: f64, upper: usize| -> [[Complex64; 3]; 3] {
        let mut m = [[Complex64::ZERO; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = Complex64::ONE;
        }
        let c = Complex64::new((theta / 2.0).cos(), 0.0);
        let s = (theta / 2.0).sin();
        m[0][0] = c;
        m[0][upper] = Complex64::i() * Complex64::from_polar(s, phi);
        m[upper][0] = Complex64::i() * Complex64::from_polar(s, -phi);
        m[upper][upper] = c;
        m
    };
    let v = rot(3.0 * PI / 2.0, PI / 2.0, 1);
    let vaux = rot(2.0 * PI, PI / 2.0, 2);
    let mut product = [[Complex64::ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                product[i][j] += vaux[i][k] * v[k][j];
            }
        }
    }
    let inv = std::f64::consts::FRAC_1_SQRT_2;
    let expected = [[inv, inv], [inv, -inv]];
    for i in 0..2 {
        for j in 0..2 {
            assert!(
                (product[i][j] - Complex64::new(expected[i][j], 0.0)).norm() < 1e-10,
                "matrix product entry ({i},{j}) = {}",
                product[i][j]
            );
        }
    }

    // the register operation agrees
    let space = RegisterSpace::new(1, 1).unwrap();
    let mut from0 = StateVector::ground(space);
    from0.hadamard(0).unwrap();
    assert!((from0.amplitude(0, &[0]).re - inv).abs() < 1e-10);
    assert!((from0.amplitude(0, &[1]).re - inv).abs() < 1e-10);
    let mut from1 = StateVector::basis(space, &[1], 0).unwrap();
    from1.hadamard(0).unwrap();
    assert!((from1.amplitude(0, &[0]).re - inv).abs() < 1e-10);
    assert!((from1.amplitude(0, &[1]).re + inv).abs() < 1e-10);

    pass(2, "Hadamard composition matches direct matrix multiplication to 1e-10");
}

/// Criterion 3: chain oracles — N=2 equilibrium at ±(1/4)^(1/3)ℓ and N=3 at
/// ±(5/4)^(1/3)ℓ to 1e-9 relative; μ₁ = 1 and b⁽¹⁾ = (1,…,1)/√N to 1e-9 for
/// N ∈ {2..10}; s⁽¹⁾_m = 1 to 1e-9.
#[test]
fn criterion_3_chain_oracles() {
    let cfg = |n| ChainConfig::new(ca40_species(), n, 2.0 * PI * 200e3).unwrap();

    let two = chain_model(&cfg(2)).unwrap();
    let expected2 = 0.25_f64.cbrt();
    assert!((two.positions_scaled[1] - expected2).abs() / expected2 < 1e-9);
    assert!((two.positions_scaled[0] + expected2).abs() / expected2 < 1e-9);

    let three = chain_model(&cfg(3)).unwrap();
    let expected3 = 1.25_f64.cbrt();
    assert!((three.positions_scaled[2] - expected3).abs() / expected3 < 1e-9);
    assert!((three.positions_scaled[0] + expected3).abs() / expected3 < 1e-9);
    assert!(three.positions_scaled[1].abs() < 1e-9);

    for n in 2..=10usize {
        let model = chain_model(&cfg(n)).unwrap();
        assert!((model.mode_frequencies[0] - 1.0).abs() < 1e-9, "n={n}: μ₁");
        let inv = 1.0 / (n as f64).sqrt();
        for m in 0..n {
            assert!((model.mode_vectors[0][m] - inv).abs() < 1e-9, "n={n}: b⁽¹⁾");
            assert!(
                (model.coupling_constants[0][m] - 1.0).abs() < 1e-9,
                "n={n}: s⁽¹⁾"
            );
        }
    }
    pass(3, "two/three-ion equilibria and CM-mode identities at 1e-9");
}

/// Criterion 4: trap numerics — N_max(2π×5 MHz, 2π×500 kHz) = 24 and
/// N_max(…, 2π×100 kHz) = 151 exactly; pseudo-well depth 14.7 eV ± 3%;
/// crosstalk(20 μm, 21.6 μm) = 0.1% ± 10%; two-ion spacing fit at 200 kHz
/// within 25% of the quoted 20 μm, with the exact value 16.4 μm reported.
#[test]
fn criterion_4_trap_numerics() {
    let wr = 2.0 * PI * 5e6;
    assert_eq!(max_linear_ions(wr, 2.0 * PI * 500e3).unwrap(), 24);
    assert_eq!(max_linear_ions(wr, 2.0 * PI * 100e3).unwrap(), 151);

    let trap = TrapConfig {
        species: ca40_species(),
        rf_amplitude: 500.0,
        dc_offset: 0.0,
        rf_frequency: 2.0 * PI * 11.5e6,
        r0: 1.4e-3,
        endcap_voltage: 150.0,
        shielding_factor: 1.0,
    };
    let depth = pseudopotential_depth_ev(&trap);
    assert!(
        (depth - 14.7).abs() / 14.7 < 0.03,
        "well depth {depth:.3} eV off 14.7 ± 3%"
    );

    let talk = crosstalk(20e-6, 21.6e-6).unwrap();
    assert!(
        (talk - 1.0e-3).abs() / 1.0e-3 < 0.10,
        "crosstalk {talk:.4e} off 0.1% ± 10%"
    );

    let spacing = min_spacing(&ChainConfig::new(ca40_species(), 2, 2.0 * PI * 200e3).unwrap())
        .unwrap();
    let fit_um = spacing.fit * 1e6;
    let exact_um = spacing.exact * 1e6;
    assert!(
        (fit_um - 20.0).abs() / 20.0 < 0.25,
        "fit {fit_um:.2} μm off 20 μm ± 25%"
    );
    assert!(
        (exact_um - 16.4).abs() / 16.4 < 0.01,
        "exact middle gap {exact_um:.2} μm off the 16.4 μm oracle"
    );

    pass(
        4,
        &format!(
            "N_max 24/151 exact, depth {depth:.2} eV, crosstalk {talk:.3e}, spacing fit {fit_um:.1} μm (exact {exact_um:.1} μm)"
        ),
    );
}

/// Criterion 5: tolerances — with sin(10°) projection, t_V = 7.5 ns ± 5% and
/// t_U(traveling) = 130 μs ± 5% for 10 ions at 2π×500 kHz; t_U(standing) =
/// 2.6 μs ± 2%; single-laser power within a factor 2 of 25 mW with the
/// derivation chain logged; per-gate error constants exact.
#[test]
fn criterion_5_tolerances() {
    let ca = ca40_species();
    let t729 = ca.transition_near(729.0).unwrap();
    let omega_x = 2.0 * PI * 500e3;
    let projection = (10.0_f64).to_radians().sin();
    let eta = (iontrap_core::constants::CODATA.reduced_planck / (2.0 * ca.mass * omega_x)).sqrt()
        * (2.0 * PI / t729.wavelength)
        * projection;

    let bounds = pulse_bounds(10, eta, omega_x).unwrap();
    let t_v_ns = bounds.t_v_min * 1e9;
    let t_u_us = bounds.t_u_traveling_min * 1e6;
    let t_s_us = bounds.t_u_standing_min * 1e6;
    assert!((t_v_ns - 7.5).abs() / 7.5 < 0.05, "t_V {t_v_ns:.3} ns");
    assert!((t_u_us - 130.0).abs() / 130.0 < 0.05, "t_U {t_u_us:.1} μs");
    assert!((t_s_us - 2.6).abs() / 2.6 < 0.02, "t_U standing {t_s_us:.3} μs");

    let budget = laser_power(
        &PowerQuery {
            scheme: Scheme::Single,
            spot_radius: 10e-6,
            pulse_duration: 5e-6,
            axial_frequency: omega_x,
            ion_count: 10,
            raman_detuning: None,
            axial_projection: 1.0,
            polarization_factor: 1.0,
        },
        &ca,
        t729,
    )
    .unwrap();
    let power_mw = budget.power * 1e3;
    assert!(
        power_mw > 12.5 && power_mw < 50.0,
        "power {power_mw:.1} mW outside factor 2 of 25 mW"
    );
    // the derivation chain is logged alongside the figure
    assert!(budget.rabi_one > 0.0 && budget.rabi_zero > 0.0 && budget.field > 0.0);
    assert!(!budget.notes.is_empty());

    assert_eq!(gate_error(ErrorScheme::Standing, 1).unwrap(), 8.9e-6);
    assert_eq!(gate_error(ErrorScheme::Traveling, 1).unwrap(), 3.6e-5);
    assert_eq!(gate_error(ErrorScheme::Raman, 1).unwrap(), 1.3e-8);
    let n = 27usize;
    assert_eq!(
        gate_error(ErrorScheme::Standing, n).unwrap(),
        8.9e-6 * (n as f64).cbrt()
    );
    assert_eq!(
        gate_error(ErrorScheme::Traveling, n).unwrap(),
        3.6e-5 * (n as f64).sqrt()
    );
    assert_eq!(
        gate_error(ErrorScheme::Raman, n).unwrap(),
        1.3e-8 * (n as f64).sqrt()
    );

    pass(
        5,
        &format!(
            "t_V {t_v_ns:.2} ns, t_U {t_u_us:.0} μs, standing {t_s_us:.2} μs, power {power_mw:.1} mW, error constants exact"
        ),
    );
}

/// Criterion 6: exact-pulse convergence — the log-log slope of U-pulse
/// infidelity vs t_U equals -2 ± 0.1 over a decade of durations beyond the
/// traveling-wave bound, and the integrator with Ω₁ = 0 matches the ideal
/// carrier pulse to 1e-6 fidelity. Runtime under 60 s.
#[test]
fn criterion_6_exact_pulse_convergence() {
    let start = Instant::now();
    let omega_x = 2.0 * PI * 500e3;
    let period = 2.0 * PI / omega_x;
    let eta = 0.137;

    // decade of durations beyond the bound (bound = 3.65 periods; the scan
    // spans 40..400 periods, i.e. 11×..110× the bound), sampled at
    // quarter-period offsets for a stationary off-resonant envelope
    let points = 9;
    let durations: Vec<f64> = (0..points)
        .map(|i| {
            let k = 40.0 * 10.0_f64.powf(i as f64 / (points - 1) as f64);
            (k.floor() + 0.25) * period
        })
        .collect();
    let scan = u_pulse_infidelity_scan(eta, omega_x, 4, &durations, 1e-10).unwrap();
    let slope = log_log_slope(&scan);
    assert!(
        (slope + 2.0).abs() <= 0.1,
        "log-log slope {slope:.4} outside -2 ± 0.1"
    );

    // Ω₁ = 0, Δ = 0: a pure carrier π pulse
    let space = RegisterSpace::new(1, 3).unwrap();
    let rabi_0 = 0.02 * omega_x;
    let params = HamiltonianParams {
        rabi_0,
        phase_0: 0.0,
        rabi_1: 0.0,
        phase_1: 0.0,
        detuning: 0.0,
        axial_frequency: omega_x,
        target: 0,
    };
    let mut s = StateVector::ground(space);
    evolve(&mut s, &params, PI / rabi_0, 1e-9).unwrap();
    let mut ideal = StateVector::ground(space);
    ideal.apply_v(0, PI, 0.0).unwrap();
    let fidelity = s.overlap(&ideal);
    assert!(fidelity > 1.0 - 1e-6, "carrier match fidelity {fidelity}");

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    pass(
        6,
        &format!("slope {slope:.3}, carrier match {:.2e} from 1, {elapsed:?}", 1.0 - fidelity),
    );
}

/// Criterion 7: desk-scale order finding — factor(15) and factor(21) succeed
/// with verified prime factors in at least 95 of 100 seeds within 10
/// attempts; register-level modular exponentiation matches the classical
/// oracle exhaustively for N ≤ 64; the QFT equals the brute-force DFT to
/// 1e-10 for up to 6 qubits; the period-4 comb puts >99% of the measurement
/// probability on {0, 64, 128, 192} in an 8-qubit register. Runtime under
/// 120 s in total.
#[test]
fn criterion_7_desk_scale_order_finding() {
    let start = Instant::now();

    for n in [15u64, 21] {
        let mut successes = 0;
        for seed in 0..100 {
            let options = FactorOptions {
                max_attempts: 10,
                measure_right_first: false,
            };
            if let Ok(outcome) = factor(n, seed, options) {
                assert_eq!(outcome.factors.iter().product::<u64>(), n, "seed {seed}");
                assert!(outcome.factors.iter().all(|&f| f > 1 && f < n));
                successes += 1;
            }
        }
        assert!(successes >= 95, "N={n}: {successes}/100");
    }

    for n in 3u64..=64 {
        let x = (2..n).find(|&x| gcd(x, n).unwrap() == 1);
        let Some(x) = x else { continue };
        let mut register = QubitRegister::for_modulus(n).unwrap();
        register.hadamard_all(Segment::Left).unwrap();
        register.mod_exp(x, n).unwrap();
        let right_bits = register.segment_bits(Segment::Right);
        let left_size = 1usize << register.segment_bits(Segment::Left);
        let amp = 1.0 / (left_size as f64).sqrt();
        let amps = register.amplitudes();
        for z in 0..left_size {
            let f = mod_pow(x, z as u64, n) as usize;
            let idx = (z << right_bits) | f;
            assert!(
                (amps[idx].re - amp).abs() < 1e-12 && amps[idx].im.abs() < 1e-15,
                "N={n} x={x} z={z}"
            );
        }
    }

    for k in 1..=6usize {
        let size = 1usize << k;
        let norm = 1.0 / (size as f64).sqrt();
        for a in 0..size {
            let mut amps = vec![Complex64::ZERO; size];
            amps[a] = Complex64::ONE;
            let mut r = QubitRegister::from_amplitudes(k, 0, 0, amps).unwrap();
            r.qft(Segment::Left).unwrap();
            for c in 0..size {
                let expected =
                    Complex64::from_polar(norm, std::f64::consts::TAU * (a * c) as f64 / size as f64);
                assert!(
                    (r.amplitudes()[c] - expected).norm() < 1e-10,
                    "k={k} a={a} c={c}"
                );
            }
        }
    }

    let probs = qft_comb_distribution(8, 4).unwrap();
    let peak_mass: f64 = [0usize, 64, 128, 192].iter().map(|&i| probs[i]).sum();
    assert!(peak_mass > 0.99, "peak mass {peak_mass}");

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "took {elapsed:?}");
    pass(
        7,
        &format!("factoring ≥95/100 for 15 and 21, mod-exp exhaustive to N=64, QFT=DFT, comb mass {peak_mass:.6}, {elapsed:?}"),
    );
}

/// Criterion 8: resource estimates — N_g(430) = 24·430³ = 1.908×10⁹, within
/// 5% of the quoted ~2.0×10⁹; wall clock 19.1 s at 100 MHz; the sieve
/// calibration returns 500 MIPS-years at ℓ=430 and ≈18 days on a
/// 100×100-MIPS fleet within 10%.
#[test]
fn criterion_8_resource_estimates() {
    let est = resource_estimate(430, 100e6).unwrap();
    assert_eq!(est.gate_count, 1_908_168_000);
    assert!((est.gate_count as f64 - 2.0e9).abs() / 2.0e9 < 0.05);
    assert!(
        (est.wall_clock_s - 19.1).abs() / 19.1 < 0.005,
        "wall clock {}",
        est.wall_clock_s
    );
    assert_eq!(est.qubit_count, 2154);

    let mips_years = nfs_cost(430).unwrap();
    assert!((mips_years - 500.0).abs() < 1e-9);
    let days = fleet_days(mips_years, 10_000.0).unwrap();
    assert!((days - 18.0).abs() / 18.0 < 0.10, "fleet days {days}");

    pass(
        8,
        &format!(
            "N_g {} ({:.3e}), wall clock {:.2} s, sieve 500 MIPS-yr → {:.1} days",
            est.gate_count, est.gate_count as f64, est.wall_clock_s, days
        ),
    );
}

/// Criterion 9: determinism — any CLI run repeated with an identical config
/// and seed is byte-identical, both in-process and through the installed
/// binary.
#[test]
fn criterion_9_cli_determinism() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["iontrap", "chain", "--ion", "ca40", "--n", "5", "--axial-khz", "200"],
        vec!["iontrap", "chain", "--ion", "ca40", "--n", "4", "--axial-khz", "500", "--csv"],
        vec![
            "iontrap", "trap", "--ion", "ca40", "--rf-volts", "500", "--rf-mhz", "11.5",
            "--r0-mm", "1.4", "--endcap-volts", "150",
        ],
        vec![
            "iontrap", "laser", "--scheme", "single", "--ions", "10", "--axial-khz", "500",
            "--projection-deg", "10",
        ],
        vec!["iontrap", "pulse", "cnot-verify"],
        vec!["iontrap", "shor", "factor", "--n", "21", "--seed", "9"],
        vec!["iontrap", "shor", "estimate", "--bits", "430", "--clock-mhz", "100"],
        vec!["iontrap", "shor", "qft-demo", "--qubits", "8", "--period", "4"],
        vec!["iontrap", "species", "--ion", "ca40"],
    ];
    for argv in &cases {
        let first = iontrap_cli::run_args(argv.clone()).unwrap();
        let second = iontrap_cli::run_args(argv.clone()).unwrap();
        assert_eq!(first, second, "in-process rerun differs for {argv:?}");
        assert!(!first.is_empty());
    }

    // through the real binary, including seeded measurement paths
    let binary = env!("CARGO_BIN_EXE_iontrap");
    for argv in &cases {
        let run = || {
            std::process::Command::new(binary)
                .args(&argv[1..])
                .output()
                .expect("binary runs")
        };
        let a = run();
        let b = run();
        assert!(a.status.success(), "{argv:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "binary rerun differs for {argv:?}");
    }

    pass(9, "byte-identical reruns across all subcommands, in-process and spawned");
}
