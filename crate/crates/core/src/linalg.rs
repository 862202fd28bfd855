//! Dense symmetric eigensolver (cyclic Jacobi).
//!
//! The matrices here are small (one row per trapped ion), so a classic Jacobi
//! iteration is accurate, dependency-free and deterministic, which keeps
//! eigenmode output stable for regression fixtures.

// index-based loops are the clearest form for symmetric-matrix updates
#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};

/// Eigendecomposition of a symmetric matrix.
///
/// Returns `(eigenvalues, eigenvectors)` with eigenvalues ascending and
/// `eigenvectors[p]` the orthonormal eigenvector for eigenvalue `p`,
/// sign-fixed so its first component of magnitude above 1e-12 is positive.
pub fn symmetric_eigen(matrix: &[Vec<f64>]) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = matrix.len();
    if n == 0 {
        return Err(Error::Eigen("empty matrix".into()));
    }
    for (i, row) in matrix.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Eigen(format!("row {i} has length {}", row.len())));
        }
        for j in 0..n {
            if (matrix[i][j] - matrix[j][i]).abs()
                > 1e-12 * (1.0 + matrix[i][j].abs().max(matrix[j][i].abs()))
            {
                return Err(Error::Eigen(format!(
                    "matrix not symmetric at ({i}, {j}): {} vs {}",
                    matrix[i][j], matrix[j][i]
                )));
            }
        }
    }

    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    // v[i][j]: i-th component of the j-th eigenvector column
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }

    let scale: f64 = matrix
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0_f64, |acc, x| acc.max(x.abs()))
        .max(1.0);
    let tol = 1e-15 * scale;
    let max_sweeps = 100;

    let mut converged = false;
    for _ in 0..max_sweeps {
        let mut off = 0.0_f64;
        for i in 0..n {
            for j in (i + 1)..n {
                off = off.max(a[i][j].abs());
            }
        }
        if off <= tol {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() <= tol * 1e-2 {
                    continue;
                }
                // Jacobi rotation annihilating a[p][q]
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    1.0 / (theta - (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::Eigen(format!(
            "Jacobi iteration did not converge in {max_sweeps} sweeps"
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i][i].partial_cmp(&a[j][j]).expect("finite eigenvalues"));

    let eigenvalues: Vec<f64> = order.iter().map(|&j| a[j][j]).collect();
    let mut eigenvectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&j| (0..n).map(|i| v[i][j]).collect())
        .collect();
    for vec in &mut eigenvectors {
        if let Some(first) = vec.iter().find(|x| x.abs() > 1e-12) {
            if *first < 0.0 {
                for x in vec.iter_mut() {
                    *x = -*x;
                }
            }
        }
    }
    Ok((eigenvalues, eigenvectors))
}
