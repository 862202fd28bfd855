//! Static properties of a linear ion chain in a harmonic axial well:
//! equilibrium positions, axial phonon normal modes, mode coupling constants,
//! and the empirical linear-configuration limits.
//!
//! Only axial motion is modeled; the transverse degrees of freedom enter
//! solely through [`max_linear_ions`]. Positions are solved in units of the
//! Coulomb length scale ℓ = (e²/(4πε₀ M ω_x²))^(1/3), which makes the
//! dimensionless chain geometry independent of species and trap frequency.

use serde::{Deserialize, Serialize};

use crate::constants::CODATA;
use crate::error::{Error, Result};
use crate::linalg::symmetric_eigen;
use crate::species::IonSpecies;

/// Ion chain configuration: species, ion count and axial angular frequency.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChainConfig {
    pub species: IonSpecies,
    pub ion_count: usize,
    /// Axial angular frequency ω_x (rad/s).
    pub axial_frequency: f64,
}

impl ChainConfig {
    pub fn new(species: IonSpecies, ion_count: usize, axial_frequency: f64) -> Result<Self> {
        species.validate()?;
        if ion_count < 1 {
            return Err(Error::InvalidInput("ion count must be at least 1".into()));
        }
        if axial_frequency <= 0.0 || !axial_frequency.is_finite() {
            return Err(Error::InvalidInput(format!(
                "axial frequency must be positive, got {axial_frequency}"
            )));
        }
        Ok(Self {
            species,
            ion_count,
            axial_frequency,
        })
    }
}

/// Newton iteration cap for the equilibrium solve.
const MAX_NEWTON_ITERATIONS: usize = 200;
/// Dimensionless force-residual tolerance (units of Mω_x²ℓ).
const FORCE_TOLERANCE: f64 = 1e-12;

/// Fully assembled chain model.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChainModel {
    pub config: ChainConfig,
    /// Coulomb length scale ℓ (m).
    pub length_scale: f64,
    /// Equilibrium positions (m), sorted ascending.
    pub positions: Vec<f64>,
    /// Equilibrium positions in units of ℓ.
    pub positions_scaled: Vec<f64>,
    /// Coupling matrix in units of Mω_x² (multiply by Mω_x² for kg/s²).
    pub coupling_matrix: Vec<Vec<f64>>,
    /// Normal-mode frequencies μ_p in units of ω_x, ascending; μ₁ = 1 is the
    /// center-of-mass mode.
    pub mode_frequencies: Vec<f64>,
    /// Orthonormal mode vectors b⁽ᵖ⁾, indexed `[p][m]`.
    pub mode_vectors: Vec<Vec<f64>>,
    /// Coupling constants s⁽ᵖ⁾_m = b⁽ᵖ⁾_m √(N/μ_p), indexed `[p][m]`.
    pub coupling_constants: Vec<Vec<f64>>,
}

impl ChainModel {
    /// Coupling matrix in SI units (kg/s²): Mω_x² times the stored
    /// dimensionless form.
    pub fn coupling_matrix_si(&self) -> Vec<Vec<f64>> {
        let scale = self.config.species.mass
            * self.config.axial_frequency
            * self.config.axial_frequency;
        self.coupling_matrix
            .iter()
            .map(|row| row.iter().map(|c| c * scale).collect())
            .collect()
    }
}

/// Coulomb length scale ℓ = (e²/(4πε₀ M ω_x²))^(1/3) in meters.
pub fn length_scale(config: &ChainConfig) -> f64 {
    let k = CODATA.coulomb_constant();
    let m_omega2 = config.species.mass * config.axial_frequency * config.axial_frequency;
    (k / m_omega2).cbrt()
}

/// Dimensionless axial force on ion m at scaled positions `u`:
/// F_m = -u_m + Σ_{n≠m} sign(u_m - u_n)/(u_m - u_n)².
///
/// Zero at equilibrium; the sign convention is the gradient of
/// V(u) = ½Σu² + Σ_{n<m} 1/|u_n - u_m| taken with a minus sign.
fn scaled_force(u: &[f64], out: &mut [f64]) {
    let n = u.len();
    for m in 0..n {
        let mut f = -u[m];
        for k in 0..n {
            if k == m {
                continue;
            }
            let d = u[m] - u[k];
            f += d.signum() / (d * d);
        }
        out[m] = f;
    }
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()))
}

/// Solve the scaled equilibrium positions for `n` ions by damped Newton
/// iteration from a uniformly spaced initial guess.
fn solve_scaled_positions(n: usize) -> Result<Vec<f64>> {
    if n == 1 {
        return Ok(vec![0.0]);
    }
    // initial guess: uniform spacing at the asymptotic minimum-gap estimate
    let spacing = 2.018 / (n as f64).powf(0.559);
    let mid = (n as f64 - 1.0) / 2.0;
    let mut u: Vec<f64> = (0..n).map(|m| (m as f64 - mid) * spacing).collect();

    let mut force = vec![0.0; n];
    let mut trial_force = vec![0.0; n];
    scaled_force(&u, &mut force);
    let mut residual = max_abs(&force);

    for _ in 0..MAX_NEWTON_ITERATIONS {
        if residual < FORCE_TOLERANCE {
            return Ok(u);
        }
        // Jacobian of -F (symmetric positive definite near equilibrium):
        // J_mm = 1 + 2Σ_{k≠m} |u_m - u_k|⁻³, J_mk = -2|u_m - u_k|⁻³
        let mut jac = vec![vec![0.0; n]; n];
        for m in 0..n {
            let mut diag = 1.0;
            for k in 0..n {
                if k == m {
                    continue;
                }
                let w = 2.0 / (u[m] - u[k]).abs().powi(3);
                diag += w;
                jac[m][k] = -w;
            }
            jac[m][m] = diag;
        }
        let step = solve_linear(&mut jac, &force)?;

        // damp on overshoot: halve until the residual decreases
        let mut lambda = 1.0;
        let mut improved = false;
        for _ in 0..40 {
            let trial: Vec<f64> = (0..n).map(|m| u[m] + lambda * step[m]).collect();
            if is_sorted_strict(&trial) {
                scaled_force(&trial, &mut trial_force);
                let trial_residual = max_abs(&trial_force);
                if trial_residual < residual {
                    u = trial;
                    force.copy_from_slice(&trial_force);
                    residual = trial_residual;
                    improved = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !improved {
            break;
        }
    }
    if residual < FORCE_TOLERANCE {
        Ok(u)
    } else {
        Err(Error::NoConvergence {
            iterations: MAX_NEWTON_ITERATIONS,
            residual,
            tolerance: FORCE_TOLERANCE,
        })
    }
}

fn is_sorted_strict(u: &[f64]) -> bool {
    u.windows(2).all(|w| w[0] < w[1])
}

/// Gaussian elimination with partial pivoting; consumes the matrix.
#[allow(clippy::needless_range_loop)]
fn solve_linear(a: &mut [Vec<f64>], b: &[f64]) -> Result<Vec<f64>> {
    let n = b.len();
    let mut x = b.to_vec();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).expect("finite"))
            .expect("nonempty");
        if a[pivot][col].abs() < 1e-300 {
            return Err(Error::Eigen("singular Newton Jacobian".into()));
        }
        a.swap(col, pivot);
        x.swap(col, pivot);
        for row in (col + 1)..n {
            let factor = a[row][col] / a[col][col];
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                a[row][k] -= factor * a[col][k];
            }
            x[row] -= factor * x[col];
        }
    }
    for col in (0..n).rev() {
        let mut s = x[col];
        for k in (col + 1)..n {
            s -= a[col][k] * x[k];
        }
        x[col] = s / a[col][col];
    }
    Ok(x)
}

/// Equilibrium positions (m), sorted ascending.
pub fn equilibrium_positions(config: &ChainConfig) -> Result<Vec<f64>> {
    let scaled = solve_scaled_positions(config.ion_count)?;
    let l = length_scale(config);
    Ok(scaled.iter().map(|u| u * l).collect())
}

/// Equilibrium positions in units of ℓ, sorted ascending; independent of
/// species and trap frequency.
pub fn scaled_equilibrium_positions(ion_count: usize) -> Result<Vec<f64>> {
    if ion_count < 1 {
        return Err(Error::InvalidInput("ion count must be at least 1".into()));
    }
    solve_scaled_positions(ion_count)
}

/// Coupling matrix C_nm = [∂²V/∂x_n ∂x_m]₀ in units of Mω_x², evaluated at
/// the scaled equilibrium positions.
pub fn coupling_matrix_scaled(positions_scaled: &[f64]) -> Vec<Vec<f64>> {
    let n = positions_scaled.len();
    let mut c = vec![vec![0.0; n]; n];
    for m in 0..n {
        let mut diag = 1.0;
        for k in 0..n {
            if k == m {
                continue;
            }
            let w = 2.0 / (positions_scaled[m] - positions_scaled[k]).abs().powi(3);
            diag += w;
            c[m][k] = -w;
        }
        c[m][m] = diag;
    }
    c
}

/// Eigenmodes of the scaled coupling matrix: ascending mode frequencies μ_p
/// (units of ω_x) and orthonormal mode vectors, first nonzero component of
/// each vector positive.
pub fn normal_modes(coupling_scaled: &[Vec<f64>]) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let (eigenvalues, vectors) = symmetric_eigen(coupling_scaled)?;
    let mut mu = Vec::with_capacity(eigenvalues.len());
    for lambda in &eigenvalues {
        if *lambda <= 0.0 {
            return Err(Error::Eigen(format!(
                "non-positive eigenvalue {lambda} in coupling matrix"
            )));
        }
        mu.push(lambda.sqrt());
    }
    Ok((mu, vectors))
}

/// Coupling constants s⁽ᵖ⁾_m = b⁽ᵖ⁾_m √(N/μ_p); s⁽¹⁾_m = 1 for the CM mode.
pub fn coupling_constants(
    mode_frequencies: &[f64],
    mode_vectors: &[Vec<f64>],
    ion_count: usize,
) -> Vec<Vec<f64>> {
    mode_frequencies
        .iter()
        .zip(mode_vectors)
        .map(|(mu, b)| {
            let scale = (ion_count as f64 / mu).sqrt();
            b.iter().map(|bm| bm * scale).collect()
        })
        .collect()
}

/// Minimum inter-ion spacing: the asymptotic fit and the exact middle gap.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MinSpacing {
    /// ℓ · 2.018/N^0.559 (m); disagrees with the exact gap by ~9% at N=2.
    pub fit: f64,
    /// Exact gap between the two middle ions from the equilibrium solve (m).
    pub exact: f64,
}

/// Minimum inter-ion spacing (occurs at the middle of the string) for N ≥ 2.
pub fn min_spacing(config: &ChainConfig) -> Result<MinSpacing> {
    let n = config.ion_count;
    if n < 2 {
        return Err(Error::InvalidInput(
            "minimum spacing requires at least 2 ions".into(),
        ));
    }
    let l = length_scale(config);
    let fit = l * 2.018 / (n as f64).powf(0.559);
    let scaled = solve_scaled_positions(n)?;
    let exact = l
        * scaled
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min);
    Ok(MinSpacing { fit, exact })
}

/// Largest ion count that stays in a linear configuration:
/// N_max = ⌊1.82 (ω_r/ω_x)^1.13⌋, clamped to at least 1.
///
/// Requires ω_r ≥ ω_x (a single ion is always linear at the boundary);
/// ω_r < ω_x violates the tight-radial-confinement assumption.
pub fn max_linear_ions(radial_frequency: f64, axial_frequency: f64) -> Result<u64> {
    if axial_frequency <= 0.0 || !axial_frequency.is_finite() || !radial_frequency.is_finite() {
        return Err(Error::InvalidInput(
            "frequencies must be positive and finite".into(),
        ));
    }
    if radial_frequency < axial_frequency {
        return Err(Error::InvalidInput(format!(
            "radial frequency {radial_frequency} below axial {axial_frequency}: not a linear trap regime"
        )));
    }
    let ratio = radial_frequency / axial_frequency;
    let n = (1.82 * ratio.powf(1.13)).floor() as u64;
    Ok(n.max(1))
}

/// Solve the full chain model: positions, modes and coupling constants.
pub fn chain_model(config: &ChainConfig) -> Result<ChainModel> {
    let positions_scaled = solve_scaled_positions(config.ion_count)?;
    let l = length_scale(config);
    let positions: Vec<f64> = positions_scaled.iter().map(|u| u * l).collect();
    let coupling = coupling_matrix_scaled(&positions_scaled);
    let (mode_frequencies, mode_vectors) = normal_modes(&coupling)?;
    let constants = coupling_constants(&mode_frequencies, &mode_vectors, config.ion_count);
    Ok(ChainModel {
        config: config.clone(),
        length_scale: l,
        positions,
        positions_scaled,
        coupling_matrix: coupling,
        mode_frequencies,
        mode_vectors,
        coupling_constants: constants,
    })
}
