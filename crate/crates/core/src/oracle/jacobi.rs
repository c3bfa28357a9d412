//! Dense symmetric eigensolver by cyclic Jacobi rotations.

use crate::error::{Error, Result};

pub const MAX_SWEEPS: usize = 30;
pub const OFF_TOLERANCE: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricEigen {
    /// Descending.
    pub eigenvalues: Vec<f64>,
    /// Column-major `n x n`; column `k` belongs to `eigenvalues[k]`.
    pub eigenvectors: Option<Vec<f64>>,
    pub sweeps: usize,
}

impl SymmetricEigen {
    pub fn eigenvector(&self, k: usize) -> Option<&[f64]> {
        let n = self.eigenvalues.len();
        self.eigenvectors.as_ref().map(|v| &v[k * n..(k + 1) * n])
    }
}

fn off_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for p in 0..n {
        for q in p + 1..n {
            s += a[p * n + q] * a[p * n + q];
        }
    }
    (2.0 * s).sqrt()
}

/// Eigen-decomposition of the symmetric row-major `n x n` matrix `matrix`.
///
/// Sweeps the upper triangle row by row until the off-diagonal Frobenius
/// norm drops below `1e-14 ||M||_F`, for at most 30 sweeps.
pub fn symmetric_eigen(matrix: &[f64], n: usize, want_vectors: bool) -> Result<SymmetricEigen> {
    assert_eq!(matrix.len(), n * n, "matrix must be n x n");
    let mut a = matrix.to_vec();
    let frob = a.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut v = want_vectors.then(|| {
        let mut id = vec![0.0; n * n];
        for i in 0..n {
            id[i * n + i] = 1.0;
        }
        id
    });
    let target = OFF_TOLERANCE * frob;
    let mut sweeps = 0;
    let mut off = off_norm(&a, n);
    while off > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::EigenNotConverged { sweeps, off_norm: off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let g = a[k * n + p];
                    let h = a[k * n + q];
                    let gp = g - s * (h + g * tau);
                    let hq = h + s * (g - h * tau);
                    a[k * n + p] = gp;
                    a[p * n + k] = gp;
                    a[k * n + q] = hq;
                    a[q * n + k] = hq;
                }
                if let Some(v) = v.as_mut() {
                    // columns p and q of V, stored row-major here
                    for k in 0..n {
                        let g = v[k * n + p];
                        let h = v[k * n + q];
                        v[k * n + p] = g - s * (h + g * tau);
                        v[k * n + q] = h + s * (g - h * tau);
                    }
                }
            }
        }
        off = off_norm(&a, n);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].total_cmp(&a[i * n + i]));
    let eigenvalues = order.iter().map(|&i| a[i * n + i]).collect();
    let eigenvectors = v.map(|v| {
        let mut cols = Vec::with_capacity(n * n);
        for &i in &order {
            cols.extend((0..n).map(|k| v[k * n + i]));
        }
        cols
    });
    Ok(SymmetricEigen { eigenvalues, eigenvectors, sweeps })
}
