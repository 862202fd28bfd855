//! Error types shared across the library.

use thiserror::Error;

/// Library-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("equilibrium solve did not converge after {iterations} iterations (residual {residual:.3e}, tolerance {tolerance:.3e})")]
    NoConvergence {
        iterations: usize,
        residual: f64,
        tolerance: f64,
    },

    #[error("eigensolver failed: {0}")]
    Eigen(String),

    #[error("ion index {index} out of range for {count} ions")]
    IonIndex { index: usize, count: usize },

    #[error("control and target ion must differ (both {index})")]
    SameIon { index: usize },

    #[error("qubit index {index} out of range for {count} qubits")]
    QubitIndex { index: usize, count: usize },

    #[error("qubit indices must be distinct: {0:?}")]
    QubitCollision(Vec<usize>),

    #[error("integration step {step:.3e} s underflowed the minimum {min_step:.3e} s without meeting tolerance")]
    StepUnderflow { step: f64, min_step: f64 },

    #[error("integration tolerance {tolerance:.3e} not met (step-halving residual {achieved:.3e})")]
    ToleranceNotMet { tolerance: f64, achieved: f64 },

    #[error("{n} is even; gcd with 2 is immediate, no order finding needed")]
    FactorEven { n: u64 },

    #[error("{n} is prime; nothing to factor")]
    FactorPrime { n: u64 },

    #[error("{n} = {base}^{exponent} is a prime power; order finding does not apply")]
    FactorPrimePower { n: u64, base: u64, exponent: u32 },

    #[error("factoring {n} exhausted the attempt budget of {attempts}")]
    AttemptsExhausted { n: u64, attempts: usize },

    #[error("base {base} shares factor {shared} with modulus {modulus}")]
    BaseNotCoprime {
        base: u64,
        modulus: u64,
        shared: u64,
    },

    #[error("gcd(0, 0) is undefined")]
    GcdBothZero,

    #[error("register of {qubits} qubits exceeds the {cap}-qubit simulation cap")]
    RegisterTooLarge { qubits: usize, cap: usize },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}
