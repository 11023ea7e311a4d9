//! Small dense symmetric eigensolver: cyclic Jacobi rotations.
//!
//! The algebra never exceeds n = 12, so a textbook Jacobi sweep is both
//! simpler and more accurate than pulling in a factorization library: each
//! rotation is applied symmetrically in exact rounding, eigenvectors come out
//! orthonormal to machine precision, and convergence for symmetric input is
//! quadratic once the off-diagonal mass is small.

use crate::error::{GaError, Result};

/// Convergence threshold on the off-diagonal Frobenius norm, relative to the
/// input's own Frobenius norm (floored at 1 so tiny matrices still converge
/// absolutely).
pub const JACOBI_OFF_THRESHOLD: f64 = 1e-14;

/// Sweep budget; symmetric 12x12 inputs converge in well under ten sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Diagonalizes a symmetric matrix (row-major, n x n). Returns eigenvalues
/// paired with orthonormal eigenvectors: `vectors[k]` belongs to
/// `values[k]`. No ordering is imposed here; callers sort to their needs.
pub fn jacobi_eigen_sym(n: usize, matrix: &[f64]) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    assert_eq!(matrix.len(), n * n, "matrix shape mismatch");
    let mut a = matrix.to_vec();
    // Accumulated rotations, columns are eigenvectors.
    let mut v = vec![0.0; n * n];
    for j in 0..n {
        v[j * n + j] = 1.0;
    }

    let frob: f64 = matrix.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = JACOBI_OFF_THRESHOLD * frob.max(1.0);

    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                s += 2.0 * a[p * n + q] * a[p * n + q];
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off_norm(&a) > target {
        if sweeps >= JACOBI_MAX_SWEEPS {
            return Err(GaError::EigenNoConvergence {
                sweeps,
                off_diag: off_norm(&a),
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                // tan of the rotation angle, smaller root for stability.
                let t = if theta.abs() > 1e100 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                let app = a[p * n + p];
                let aqq = a[q * n + q];
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    a[r * n + p] = arp - s * (arq + tau * arp);
                    a[p * n + r] = a[r * n + p];
                    a[r * n + q] = arq + s * (arp - tau * arq);
                    a[q * n + r] = a[r * n + q];
                }
                for r in 0..n {
                    let vrp = v[r * n + p];
                    let vrq = v[r * n + q];
                    v[r * n + p] = vrp - s * (vrq + tau * vrp);
                    v[r * n + q] = vrq + s * (vrp - tau * vrq);
                }
            }
        }
    }

    let values: Vec<f64> = (0..n).map(|j| a[j * n + j]).collect();
    let vectors: Vec<Vec<f64>> = (0..n)
        .map(|k| (0..n).map(|r| v[r * n + k]).collect())
        .collect();
    Ok((values, vectors))
}
