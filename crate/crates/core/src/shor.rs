//! Ideal-gate quantum register simulator and desk-scale order-finding
//! factorization: universal gates, QFT, modular exponentiation as a
//! conditioned permutation, continued-fraction order extraction, the full
//! gcd pipeline, and the quantum-vs-classical resource estimator.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simulation cap on total qubits (2^24 amplitudes ≈ 256 MiB).
pub const QUBIT_CAP: usize = 24;

// ---------------------------------------------------------------------------
// classical number theory
// ---------------------------------------------------------------------------

/// Greatest common divisor by Euclid's algorithm; gcd(0, 0) is rejected.
pub fn gcd(a: u64, b: u64) -> Result<u64> {
    if a == 0 && b == 0 {
        return Err(Error::GcdBothZero);
    }
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    Ok(a)
}

/// base^exp mod modulus with 128-bit intermediates.
pub fn mod_pow(base: u64, exp: u64, modulus: u64) -> u64 {
    debug_assert!(modulus > 0);
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut result: u128 = 1;
    let mut b = base as u128 % m;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    result as u64
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    // this witness set is exact for all u64
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = (x as u128 * x as u128 % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// If n = p^k for a prime p and k ≥ 2, return (p, k).
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    for k in 2..=63u32 {
        let root = integer_kth_root(n, k);
        if root < 2 {
            break;
        }
        if root.checked_pow(k) == Some(n) && is_prime(root) {
            return Some((root, k));
        }
    }
    None
}

fn integer_kth_root(n: u64, k: u32) -> u64 {
    let mut r = (n as f64).powf(1.0 / k as f64).round() as u64;
    while r > 1 && r.checked_pow(k).is_none_or(|v| v > n) {
        r -= 1;
    }
    while (r + 1).checked_pow(k).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}

/// Smallest r > 0 with x^r ≡ 1 mod n, by direct iteration (classical oracle).
pub fn multiplicative_order(x: u64, n: u64) -> Option<u64> {
    if n < 2 || gcd(x, n).ok()? != 1 {
        return None;
    }
    let mut acc = x % n;
    for r in 1..=n {
        if acc == 1 {
            return Some(r);
        }
        acc = (acc as u128 * x as u128 % n as u128) as u64;
    }
    None
}

// ---------------------------------------------------------------------------
// quantum register
// ---------------------------------------------------------------------------

/// Named register segments. The right register holds function values, the
/// left register the argument; ancilla workspace is laid out above both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Segment {
    Left,
    Right,
    Ancilla,
}

/// State-vector register with left/right/ancilla segments.
///
/// Qubit q is bit q of the amplitude index: the right segment occupies bits
/// [0, right_bits), the left segment [right_bits, right_bits + left_bits),
/// ancilla the bits above both.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitRegister {
    left_bits: usize,
    right_bits: usize,
    ancilla_bits: usize,
    amps: Vec<Complex64>,
}

impl QubitRegister {
    /// All-zeros register with the given segment widths.
    pub fn new(left_bits: usize, right_bits: usize, ancilla_bits: usize) -> Result<Self> {
        let total = left_bits + right_bits + ancilla_bits;
        if total == 0 {
            return Err(Error::InvalidInput("register needs at least 1 qubit".into()));
        }
        if total > QUBIT_CAP {
            return Err(Error::RegisterTooLarge {
                qubits: total,
                cap: QUBIT_CAP,
            });
        }
        let mut amps = vec![Complex64::ZERO; 1 << total];
        amps[0] = Complex64::ONE;
        Ok(Self {
            left_bits,
            right_bits,
            ancilla_bits,
            amps,
        })
    }

    /// Register with explicit amplitudes (normalized by the caller to 1e-10).
    pub fn from_amplitudes(
        left_bits: usize,
        right_bits: usize,
        ancilla_bits: usize,
        amps: Vec<Complex64>,
    ) -> Result<Self> {
        let mut register = Self::new(left_bits, right_bits, ancilla_bits)?;
        if amps.len() != register.amps.len() {
            return Err(Error::InvalidInput(format!(
                "{} amplitudes for a {}-qubit register",
                amps.len(),
                register.total_qubits()
            )));
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidInput(format!(
                "amplitudes have norm {norm}, expected 1"
            )));
        }
        register.amps = amps;
        Ok(register)
    }

    /// Register sized for order finding mod n: an ℓ-bit right register for
    /// the function value and a 2ℓ-bit left register for the argument.
    pub fn for_modulus(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("modulus {n} too small")));
        }
        let bits = (64 - n.leading_zeros()) as usize;
        Self::new(2 * bits, bits, 0)
    }

    pub fn total_qubits(&self) -> usize {
        self.left_bits + self.right_bits + self.ancilla_bits
    }

    pub fn segment_bits(&self, segment: Segment) -> usize {
        match segment {
            Segment::Left => self.left_bits,
            Segment::Right => self.right_bits,
            Segment::Ancilla => self.ancilla_bits,
        }
    }

    fn segment_shift(&self, segment: Segment) -> usize {
        match segment {
            Segment::Right => 0,
            Segment::Left => self.right_bits,
            Segment::Ancilla => self.right_bits + self.left_bits,
        }
    }

    /// Qubit indices of a segment, least significant first.
    pub fn segment_qubits(&self, segment: Segment) -> std::ops::Range<usize> {
        let lo = self.segment_shift(segment);
        lo..lo + self.segment_bits(segment)
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.total_qubits() {
            Err(Error::QubitIndex {
                index: q,
                count: self.total_qubits(),
            })
        } else {
            Ok(())
        }
    }

    fn check_distinct(qs: &[usize]) -> Result<()> {
        for (i, a) in qs.iter().enumerate() {
            if qs[i + 1..].contains(a) {
                return Err(Error::QubitCollision(qs.to_vec()));
            }
        }
        Ok(())
    }

    /// Hadamard on one qubit.
    pub fn hadamard(&mut self, qubit: usize) -> Result<()> {
        self.check_qubit(qubit)?;
        let mask = 1usize << qubit;
        let inv = 1.0 / 2.0_f64.sqrt();
        for idx in 0..self.amps.len() {
            if idx & mask == 0 {
                let a = self.amps[idx];
                let b = self.amps[idx | mask];
                self.amps[idx] = inv * (a + b);
                self.amps[idx | mask] = inv * (a - b);
            }
        }
        Ok(())
    }

    /// Hadamard on every qubit of a segment: |0…0⟩ becomes the uniform
    /// superposition of all segment values.
    pub fn hadamard_all(&mut self, segment: Segment) -> Result<()> {
        for q in self.segment_qubits(segment) {
            self.hadamard(q)?;
        }
        Ok(())
    }

    /// CNOT: target flips when the control is 1.
    pub fn cnot(&mut self, control: usize, target: usize) -> Result<()> {
        self.check_qubit(control)?;
        self.check_qubit(target)?;
        Self::check_distinct(&[control, target])?;
        let c = 1usize << control;
        let t = 1usize << target;
        for idx in 0..self.amps.len() {
            if idx & c != 0 && idx & t == 0 {
                self.amps.swap(idx, idx | t);
            }
        }
        Ok(())
    }

    /// Toffoli: target flips when both controls are 1.
    pub fn ccnot(&mut self, control_a: usize, control_b: usize, target: usize) -> Result<()> {
        self.check_qubit(control_a)?;
        self.check_qubit(control_b)?;
        self.check_qubit(target)?;
        Self::check_distinct(&[control_a, control_b, target])?;
        let ca = 1usize << control_a;
        let cb = 1usize << control_b;
        let t = 1usize << target;
        for idx in 0..self.amps.len() {
            if idx & ca != 0 && idx & cb != 0 && idx & t == 0 {
                self.amps.swap(idx, idx | t);
            }
        }
        Ok(())
    }

    /// One-bit adder |a⟩|b⟩|0⟩ → |a⟩|a⊕b⟩|a∧b⟩, built as CNOT_{1,2}∘CCNOT.
    /// Returns a flag when the carry qubit was not in |0⟩ (the circuit is
    /// still unitary, but the carry contract is broken).
    pub fn add_circuit(&mut self, a: usize, b: usize, carry: usize) -> Result<Vec<String>> {
        self.check_qubit(a)?;
        self.check_qubit(b)?;
        self.check_qubit(carry)?;
        Self::check_distinct(&[a, b, carry])?;
        let mut flags = Vec::new();
        let p_carry: f64 = self
            .amps
            .iter()
            .enumerate()
            .filter(|(idx, _)| idx & (1 << carry) != 0)
            .map(|(_, amp)| amp.norm_sqr())
            .sum();
        if p_carry > 1e-9 {
            flags.push(format!(
                "carry qubit {carry} not in |0⟩ (population {p_carry:.3e}); sum/carry semantics broken"
            ));
        }
        self.ccnot(a, b, carry)?;
        self.cnot(a, b)?;
        Ok(flags)
    }

    /// Phase rotation diag(1, e^{iθ}) on one qubit.
    pub fn phase(&mut self, qubit: usize, angle: f64) -> Result<()> {
        self.check_qubit(qubit)?;
        let mask = 1usize << qubit;
        let rot = Complex64::from_polar(1.0, angle);
        for (idx, amp) in self.amps.iter_mut().enumerate() {
            if idx & mask != 0 {
                *amp *= rot;
            }
        }
        Ok(())
    }

    /// Controlled phase: e^{iθ} on |11⟩.
    pub fn controlled_phase(&mut self, control: usize, target: usize, angle: f64) -> Result<()> {
        self.check_qubit(control)?;
        self.check_qubit(target)?;
        Self::check_distinct(&[control, target])?;
        let mask = (1usize << control) | (1usize << target);
        let rot = Complex64::from_polar(1.0, angle);
        for (idx, amp) in self.amps.iter_mut().enumerate() {
            if idx & mask == mask {
                *amp *= rot;
            }
        }
        Ok(())
    }

    pub fn swap_qubits(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_qubit(a)?;
        self.check_qubit(b)?;
        if a == b {
            return Ok(());
        }
        let ma = 1usize << a;
        let mb = 1usize << b;
        for idx in 0..self.amps.len() {
            if idx & ma != 0 && idx & mb == 0 {
                self.amps.swap(idx, idx ^ ma ^ mb);
            }
        }
        Ok(())
    }

    /// QFT on a segment: |a⟩ → 2^{-k/2} Σ_c exp(+2πi·a·c/2^k)|c⟩.
    ///
    /// The 2π in the exponent is what produces constructive interference at
    /// multiples of 2^k/r for a period-r input comb; a bare 1/2^k exponent
    /// would not.
    pub fn qft(&mut self, segment: Segment) -> Result<()> {
        self.qft_impl(segment, false)
    }

    /// Inverse of [`Self::qft`].
    pub fn inverse_qft(&mut self, segment: Segment) -> Result<()> {
        self.qft_impl(segment, true)
    }

    fn qft_impl(&mut self, segment: Segment, inverse: bool) -> Result<()> {
        let qubits: Vec<usize> = self.segment_qubits(segment).collect();
        let k = qubits.len();
        if k == 0 {
            return Ok(());
        }
        let sign = if inverse { -1.0 } else { 1.0 };
        if !inverse {
            for j in (0..k).rev() {
                self.hadamard(qubits[j])?;
                for m in (0..j).rev() {
                    let angle = sign * std::f64::consts::PI / (1 << (j - m)) as f64;
                    self.controlled_phase(qubits[m], qubits[j], angle)?;
                }
            }
            for i in 0..k / 2 {
                self.swap_qubits(qubits[i], qubits[k - 1 - i])?;
            }
        } else {
            for i in 0..k / 2 {
                self.swap_qubits(qubits[i], qubits[k - 1 - i])?;
            }
            for j in 0..k {
                for m in 0..j {
                    let angle = sign * std::f64::consts::PI / (1 << (j - m)) as f64;
                    self.controlled_phase(qubits[m], qubits[j], angle)?;
                }
                self.hadamard(qubits[j])?;
            }
        }
        Ok(())
    }

    /// Write f(z) = base^z mod modulus into the right register, conditioned
    /// on the left-register value z: |z⟩_L|w⟩_R → |z⟩_L|w ⊕ f(z)⟩_R, so a
    /// right register starting in |0⟩ ends holding f(z). Rejects bases that
    /// share a factor with the modulus (that gcd is itself a factor).
    pub fn mod_exp(&mut self, base: u64, modulus: u64) -> Result<()> {
        if modulus < 2 {
            return Err(Error::InvalidInput(format!("modulus {modulus} too small")));
        }
        if modulus >= (1u64 << self.right_bits) {
            return Err(Error::InvalidInput(format!(
                "modulus {modulus} does not fit the {}-bit right register",
                self.right_bits
            )));
        }
        let shared = gcd(base % modulus, modulus)?;
        if shared != 1 {
            return Err(Error::BaseNotCoprime {
                base,
                modulus,
                shared,
            });
        }
        let left_size = 1usize << self.left_bits;
        let mut table = Vec::with_capacity(left_size);
        let mut value: u64 = 1;
        for _ in 0..left_size {
            table.push(value as usize);
            value = (value as u128 * base as u128 % modulus as u128) as u64;
        }

        let right_mask = (1usize << self.right_bits) - 1;
        for idx in 0..self.amps.len() {
            let z = (idx >> self.right_bits) & (left_size - 1);
            let f = table[z];
            let w = idx & right_mask;
            // XOR pairs (w, w^f); swap each pair once
            if w < (w ^ f) {
                self.amps.swap(idx, idx ^ f);
            }
        }
        Ok(())
    }

    /// Probability distribution over the values of a segment.
    pub fn segment_distribution(&self, segment: Segment) -> Vec<f64> {
        let shift = self.segment_shift(segment);
        let size = 1usize << self.segment_bits(segment);
        let mask = size - 1;
        let mut probs = vec![0.0; size];
        for (idx, amp) in self.amps.iter().enumerate() {
            probs[(idx >> shift) & mask] += amp.norm_sqr();
        }
        probs
    }

    /// Projective measurement of a whole segment; collapses the state and
    /// returns the measured value. Deterministic for a fixed RNG stream.
    pub fn measure_segment<R: Rng>(&mut self, segment: Segment, rng: &mut R) -> u64 {
        let probs = self.segment_distribution(segment);
        let draw: f64 = rng.random();
        let mut acc = 0.0;
        let mut outcome = probs.len() - 1;
        for (v, p) in probs.iter().enumerate() {
            acc += p;
            if draw < acc {
                outcome = v;
                break;
            }
        }
        let shift = self.segment_shift(segment);
        let mask = (1usize << self.segment_bits(segment)) - 1;
        for (idx, amp) in self.amps.iter_mut().enumerate() {
            if (idx >> shift) & mask != outcome {
                *amp = Complex64::ZERO;
            }
        }
        let norm = self.norm();
        if norm > 0.0 {
            for amp in &mut self.amps {
                *amp /= norm;
            }
        }
        outcome as u64
    }
}

// ---------------------------------------------------------------------------
// order extraction and the factoring pipeline
// ---------------------------------------------------------------------------

/// Recover the order r from a measured left-register value y of k bits:
/// expand y/2^k in continued fractions and return the smallest convergent
/// denominator q ≤ n with x^q ≡ 1 mod n. None means the measurement carried
/// no usable period information (caller retries).
pub fn extract_order(y: u64, k_bits: u32, n: u64, x: u64) -> Option<u64> {
    if y == 0 || k_bits == 0 || k_bits > 63 {
        return None;
    }
    let q_total: u64 = 1 << k_bits;
    if y >= q_total {
        return None;
    }
    // convergent denominators of y/2^k via Euclid on (num, den)
    let mut num = y as u128;
    let mut den = q_total as u128;
    let mut q_prev: u128 = 0;
    let mut q_curr: u128 = 1;
    // a0 = 0 (y < 2^k) gives denominator 1 as the first candidate
    let mut candidates = vec![1u64];
    while num != 0 {
        let a = den / num;
        let q_next = a * q_curr + q_prev;
        q_prev = q_curr;
        q_curr = q_next;
        let rem = den % num;
        den = num;
        num = rem;
        if q_curr > n as u128 {
            break;
        }
        candidates.push(q_curr as u64);
    }
    candidates
        .into_iter()
        .find(|&q| q > 0 && mod_pow(x, q, n) == 1)
}

/// Why one factoring attempt ended.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum AttemptOutcome {
    /// gcd(x, N) > 1: the base itself revealed a factor, no quantum step.
    SharedFactor { factor: u64 },
    /// Measurement carried no usable period information.
    NoOrderExtracted,
    /// Extracted order was odd; x must be redrawn.
    OddOrder { order: u64 },
    /// x^(r/2) ≡ ±1 mod N: trivial square root, no factor.
    TrivialRoot { order: u64 },
    /// gcd(x^(r/2) ± 1, N) produced a nontrivial factor pair.
    Factors { order: u64, p: u64, q: u64 },
}

/// Log record of one factoring attempt.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attempt {
    pub base: u64,
    /// Measured left-register value, when the quantum step ran.
    pub measured: Option<u64>,
    #[serde(flatten)]
    pub outcome: AttemptOutcome,
}

/// Result of the full factoring pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoringOutcome {
    pub modulus: u64,
    /// Base of the successful attempt.
    pub base: u64,
    /// Measured value behind the successful order extraction, if quantum.
    pub measured: Option<u64>,
    /// Extracted order for the successful base, if quantum.
    pub order: Option<u64>,
    /// Candidate square root a = x^(r/2) mod N, if quantum.
    pub candidate: Option<u64>,
    /// Nontrivial factors, sorted ascending.
    pub factors: Vec<u64>,
    pub seed: u64,
    pub attempts: Vec<Attempt>,
}

/// Knobs for [`factor`].
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FactorOptions {
    pub max_attempts: usize,
    /// Measure the right register before the QFT (equivalent by deferred
    /// measurement; kept as a literal mode).
    pub measure_right_first: bool,
}

impl Default for FactorOptions {
    fn default() -> Self {
        Self {
            max_attempts: 32,
            measure_right_first: false,
        }
    }
}

/// Factor an odd composite non-prime-power N through quantum order finding:
/// pick x, find the order r of x mod N, and when r is even read factors off
/// gcd(x^(r/2) ± 1, N). Deterministic for a fixed seed.
pub fn factor(n: u64, seed: u64, options: FactorOptions) -> Result<FactoringOutcome> {
    if n < 4 {
        return Err(Error::InvalidInput(format!(
            "{n} is too small for the factoring pipeline"
        )));
    }
    if n.is_multiple_of(2) {
        return Err(Error::FactorEven { n });
    }
    if is_prime(n) {
        return Err(Error::FactorPrime { n });
    }
    if let Some((base, exponent)) = prime_power(n) {
        return Err(Error::FactorPrimePower { n, base, exponent });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts: Vec<Attempt> = Vec::new();
    let k_bits = 2 * (64 - n.leading_zeros());

    for _ in 0..options.max_attempts {
        let x = rng.random_range(2..=n - 2);
        let shared = gcd(x, n)?;
        if shared != 1 {
            // the draw itself handed us a factor
            attempts.push(Attempt {
                base: x,
                measured: None,
                outcome: AttemptOutcome::SharedFactor { factor: shared },
            });
            let mut factors = vec![shared, n / shared];
            factors.sort_unstable();
            return Ok(FactoringOutcome {
                modulus: n,
                base: x,
                measured: None,
                order: None,
                candidate: None,
                factors,
                seed,
                attempts,
            });
        }

        let mut register = QubitRegister::for_modulus(n)?;
        register.hadamard_all(Segment::Left)?;
        register.mod_exp(x, n)?;
        if options.measure_right_first {
            register.measure_segment(Segment::Right, &mut rng);
        }
        register.qft(Segment::Left)?;
        let y = register.measure_segment(Segment::Left, &mut rng);

        let Some(order) = extract_order(y, k_bits, n, x) else {
            attempts.push(Attempt {
                base: x,
                measured: Some(y),
                outcome: AttemptOutcome::NoOrderExtracted,
            });
            continue;
        };
        if order % 2 == 1 {
            attempts.push(Attempt {
                base: x,
                measured: Some(y),
                outcome: AttemptOutcome::OddOrder { order },
            });
            continue;
        }
        let a = mod_pow(x, order / 2, n);
        if a == 1 || a == n - 1 {
            attempts.push(Attempt {
                base: x,
                measured: Some(y),
                outcome: AttemptOutcome::TrivialRoot { order },
            });
            continue;
        }
        let f1 = gcd(a - 1, n)?;
        let f2 = gcd(a + 1, n)?;
        let nontrivial = [f1, f2].into_iter().find(|&f| f > 1 && f < n);
        match nontrivial {
            Some(f) => {
                let mut factors = vec![f, n / f];
                factors.sort_unstable();
                attempts.push(Attempt {
                    base: x,
                    measured: Some(y),
                    outcome: AttemptOutcome::Factors {
                        order,
                        p: factors[0],
                        q: factors[1],
                    },
                });
                return Ok(FactoringOutcome {
                    modulus: n,
                    base: x,
                    measured: Some(y),
                    order: Some(order),
                    candidate: Some(a),
                    factors,
                    seed,
                    attempts,
                });
            }
            None => {
                attempts.push(Attempt {
                    base: x,
                    measured: Some(y),
                    outcome: AttemptOutcome::TrivialRoot { order },
                });
            }
        }
    }

    Err(Error::AttemptsExhausted {
        n,
        attempts: options.max_attempts,
    })
}

/// Exact measurement distribution after QFT of a period-`period` comb state
/// in a `qubits`-qubit register: Σ_j |j·period⟩ → peaks at multiples of
/// 2^qubits/period.
pub fn qft_comb_distribution(qubits: usize, period: u64) -> Result<Vec<f64>> {
    if qubits == 0 || qubits > QUBIT_CAP {
        return Err(Error::InvalidInput(format!("bad qubit count {qubits}")));
    }
    if period == 0 || period >= (1u64 << qubits) {
        return Err(Error::InvalidInput(format!(
            "period {period} outside the {qubits}-qubit range"
        )));
    }
    let mut register = QubitRegister::new(qubits, 0, 0)?;
    let size = 1usize << qubits;
    let count = (size as u64).div_ceil(period) as usize;
    let amp = Complex64::new(1.0 / (count as f64).sqrt(), 0.0);
    register.amps.fill(Complex64::ZERO);
    for j in 0..count {
        register.amps[j * period as usize] = amp;
    }
    register.qft(Segment::Left)?;
    Ok(register.segment_distribution(Segment::Left))
}

// ---------------------------------------------------------------------------
// resource estimates
// ---------------------------------------------------------------------------

/// Quantum resource count for factoring an ℓ-bit integer, with the classical
/// number-field-sieve cost alongside.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResourceEstimate {
    /// Input size ℓ (bits).
    pub bits: u64,
    /// N_g = 24ℓ³; the O(ℓ²) term has no published constant and is omitted,
    /// so this is a lower bound.
    pub gate_count: u64,
    /// L = 5ℓ + 4 qubits.
    pub qubit_count: u64,
    /// Assumed gate clock (Hz).
    pub clock_hz: f64,
    /// N_g / clock (s).
    pub wall_clock_s: f64,
    /// Number-field-sieve cost in MIPS-years; None for ℓ < 2.
    pub nfs_mips_years: Option<f64>,
}

/// Gate and qubit counts plus wall clock at a given clock rate.
pub fn resource_estimate(bits: u64, clock_hz: f64) -> Result<ResourceEstimate> {
    if bits < 1 {
        return Err(Error::InvalidInput("bit size must be at least 1".into()));
    }
    if clock_hz <= 0.0 || !clock_hz.is_finite() {
        return Err(Error::InvalidInput("clock rate must be positive".into()));
    }
    let gate_count: u64 = (24u128 * (bits as u128).pow(3))
        .try_into()
        .map_err(|_| Error::InvalidInput(format!("gate count for {bits} bits overflows u64")))?;
    Ok(ResourceEstimate {
        bits,
        gate_count,
        qubit_count: 5 * bits + 4,
        clock_hz,
        wall_clock_s: gate_count as f64 / clock_hz,
        nfs_mips_years: nfs_cost(bits).ok(),
    })
}

/// Number-field-sieve cost C·exp[1.923·ℓ^(1/3)·(ln ℓ)^(2/3)] in MIPS-years,
/// calibrated so that ℓ = 430 (the RSA130 challenge size) costs 500
/// MIPS-years. The log base is absorbed by the calibration constant.
pub fn nfs_cost(bits: u64) -> Result<f64> {
    if bits < 2 {
        return Err(Error::InvalidInput(
            "NFS cost needs at least 2 bits".into(),
        ));
    }
    let growth = |l: f64| (1.923 * l.cbrt() * l.ln().powf(2.0 / 3.0)).exp();
    let calibration = 500.0 / growth(430.0);
    Ok(calibration * growth(bits as f64))
}

/// Days to spend `mips_years` of work on a fleet delivering `fleet_mips`.
pub fn fleet_days(mips_years: f64, fleet_mips: f64) -> Result<f64> {
    if fleet_mips <= 0.0 || !fleet_mips.is_finite() {
        return Err(Error::InvalidInput("fleet MIPS must be positive".into()));
    }
    Ok(mips_years / fleet_mips * 365.25)
}
