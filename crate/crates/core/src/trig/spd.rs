use serde::{Deserialize, Serialize};

use super::error::{Result, TrigError};
use super::spectral::{jacobi_eigen, SpectralData};

/// Numerical tolerances shared by the trigonometry routines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Allowed asymmetry relative to the largest entry.
    pub sym_tol: f64,
    /// Positive-definiteness floor, relative to the largest eigenvalue.
    pub pd_tol: f64,
    /// Relative tolerance for eigen residuals and spectral degeneracy.
    pub eig_tol: f64,
    /// Agreement expected between the variational and closed-form paths.
    pub opt_tol: f64,
    /// Allowed |μ₁² + ν₁² − 1|.
    pub identity_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            sym_tol: 1e-10,
            pd_tol: 1e-12,
            eig_tol: 1e-10,
            opt_tol: 1e-6,
            identity_tol: 1e-10,
        }
    }
}

/// A dense real symmetric positive definite matrix.
///
/// The spectral decomposition computed during validation is kept so the
/// closed forms never re-run the eigensolver.
#[derive(Debug, Clone, PartialEq)]
pub struct SpdMatrix {
    n: usize,
    entries: Vec<f64>,
    spectral: SpectralData,
}

impl SpdMatrix {
    /// Validates with default tolerances.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let tol = Tolerances::default();
        validate_spd(rows, tol.sym_tol, tol.pd_tol)
    }

    /// Validates a row-major `n × n` buffer with default tolerances.
    pub fn from_row_major(n: usize, entries: &[f64]) -> Result<Self> {
        if entries.len() != n * n {
            return Err(TrigError::DimensionMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        let rows: Vec<Vec<f64>> = entries.chunks(n.max(1)).map(<[f64]>::to_vec).collect();
        Self::from_rows(&rows)
    }

    /// Diagonal matrix; all entries must be positive.
    pub fn diagonal(diag: &[f64]) -> Result<Self> {
        let n = diag.len();
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let mut r = vec![0.0; n];
                r[i] = diag[i];
                r
            })
            .collect();
        Self::from_rows(&rows)
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![1.0; n]).expect("identity is SPD")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    pub fn spectral(&self) -> &SpectralData {
        &self.spectral
    }

    /// `A·x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        super::linalg::matvec(&self.entries, self.n, x, &mut out);
        out
    }
}

/// Checks shape, finiteness, symmetry and definiteness of `raw`.
///
/// Entries within `sym_tol` of symmetric are replaced by `(A + Aᵀ)/2`.
/// Definiteness requires `λ₁ > pd_tol · λₙ` (and `λ₁ > 0`).
pub fn validate_spd(raw: &[Vec<f64>], sym_tol: f64, pd_tol: f64) -> Result<SpdMatrix> {
    let n = raw.len();
    if n == 0 {
        return Err(TrigError::Empty);
    }
    if let Some((i, row)) = raw.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(TrigError::NotSquare {
            rows: n,
            bad_row: i,
            cols: row.len(),
        });
    }
    for (i, row) in raw.iter().enumerate() {
        if let Some(j) = row.iter().position(|v| !v.is_finite()) {
            return Err(TrigError::NonFiniteEntry { row: i, col: j });
        }
    }

    let scale = raw
        .iter()
        .flatten()
        .fold(0.0f64, |m, v| m.max(v.abs()));
    let mut asymmetry = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            asymmetry = asymmetry.max((raw[i][j] - raw[j][i]).abs());
        }
    }
    let allowed = sym_tol * scale;
    if asymmetry > allowed {
        return Err(TrigError::NotSymmetric { asymmetry, allowed });
    }

    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            entries[i * n + j] = 0.5 * (raw[i][j] + raw[j][i]);
        }
    }

    let spectral = jacobi_eigen(&entries, n)?;
    let threshold = (pd_tol * spectral.lambda_max()).max(0.0);
    if spectral.lambda_min() <= threshold {
        return Err(TrigError::NotPositiveDefinite {
            min_eigenvalue: spectral.lambda_min(),
            threshold,
        });
    }
    Ok(SpdMatrix {
        n,
        entries,
        spectral,
    })
}
