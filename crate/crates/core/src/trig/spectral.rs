use serde::{Deserialize, Serialize};

use super::error::{Result, TrigError};
use super::spd::SpdMatrix;

/// Jacobi sweeps before giving up.
pub const MAX_SWEEPS: usize = 100;
/// Stop once the off-diagonal Frobenius norm falls below this fraction of ‖A‖_F.
pub const OFF_DIAGONAL_TOL: f64 = 1e-14;

/// Ascending eigenvalues with matching orthonormal eigenvectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralData {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<f64>>,
}

impl SpectralData {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn lambda_min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    /// Eigenvector of the smallest eigenvalue.
    pub fn x_min(&self) -> &[f64] {
        &self.eigenvectors[0]
    }

    /// Eigenvector of the largest eigenvalue.
    pub fn x_max(&self) -> &[f64] {
        &self.eigenvectors[self.eigenvectors.len() - 1]
    }

    /// λ₁ and λₙ agree to `eig_tol` relative to λₙ.
    pub fn is_degenerate(&self, eig_tol: f64) -> bool {
        self.lambda_max() - self.lambda_min() <= eig_tol * self.lambda_max().abs()
    }

    /// Builds spectral data from a known diagonal spectrum with the standard basis.
    ///
    /// Eigenvalues are sorted ascending and basis vectors reordered to match.
    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]).then(i.cmp(&j)));
        let eigenvalues = order.iter().map(|&i| diag[i]).collect();
        let eigenvectors = order
            .iter()
            .map(|&i| {
                let mut e = vec![0.0; n];
                e[i] = 1.0;
                e
            })
            .collect();
        SpectralData {
            eigenvalues,
            eigenvectors,
        }
    }
}

/// Full eigendecomposition of a validated SPD matrix by cyclic Jacobi rotations.
pub fn spectral_decompose(a: &SpdMatrix) -> Result<SpectralData> {
    jacobi_eigen(a.as_slice(), a.dim())
}

/// Cyclic Jacobi on a symmetric row-major matrix. Does not check definiteness.
pub fn jacobi_eigen(matrix: &[f64], n: usize) -> Result<SpectralData> {
    let mut a = matrix.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let fro = a.iter().map(|x| x * x).sum::<f64>().sqrt();

    let mut converged = false;
    for _ in 0..=MAX_SWEEPS {
        let off = off_diagonal_norm(&a, n);
        if off <= OFF_DIAGONAL_TOL * fro {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + tau.hypot(1.0))
                } else {
                    -1.0 / (-tau + tau.hypot(1.0))
                };
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                rotate(&mut a, &mut v, n, p, q, c, s);
            }
        }
    }
    if !converged {
        return Err(TrigError::ConvergenceFailure {
            routine: "jacobi eigensolver",
            iterations: MAX_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]).then(i.cmp(&j)));
    let eigenvalues = order.iter().map(|&k| a[k * n + k]).collect();
    let eigenvectors = order
        .iter()
        .map(|&k| {
            let mut x: Vec<f64> = (0..n).map(|i| v[i * n + k]).collect();
            canonical_sign(&mut x);
            x
        })
        .collect();
    Ok(SpectralData {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    s.sqrt()
}

fn rotate(a: &mut [f64], v: &mut [f64], n: usize, p: usize, q: usize, c: f64, s: f64) {
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = c * akp - s * akq;
        a[k * n + q] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = c * apk - s * aqk;
        a[q * n + k] = s * apk + c * aqk;
    }
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = c * vkp - s * vkq;
        v[k * n + q] = s * vkp + c * vkq;
    }
}

/// Magnitudes closer than this count as tied for the sign convention.
const SIGN_TIE_TOL: f64 = 1e-10;

/// Flips `x` so its largest-magnitude component is positive; near-ties go to
/// the lowest index.
pub fn canonical_sign(x: &mut [f64]) {
    let max = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if max == 0.0 {
        return;
    }
    let lead = x
        .iter()
        .position(|v| v.abs() >= max - SIGN_TIE_TOL * max)
        .unwrap_or(0);
    if x[lead] < 0.0 {
        x.iter_mut().for_each(|v| *v = -*v);
    }
}
