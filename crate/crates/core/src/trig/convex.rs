//! Numerical evaluation of `min_{ε>0} ‖εA − I‖₂` by golden-section search.
//!
//! The spectral norm is computed without the eigendecomposition, so this
//! path checks the closed forms independently.

use serde::{Deserialize, Serialize};

use super::error::{Result, TrigError};
use super::linalg::{matmul, matvec, norm};
use super::spd::SpdMatrix;

/// How `‖B‖₂` is estimated for symmetric `B`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum NormMethod {
    /// Power iteration on `BᵀB` with a fixed start vector; stops when the
    /// Rayleigh estimate changes by less than `tol` relative.
    PowerIteration { max_iter: usize, tol: f64 },
    /// Power iteration accelerated by repeated squaring of `BᵀB`: after `k`
    /// squarings the iterate is `(BᵀB)^(2^k)`, which separates the two largest
    /// singular values even when their gap is tiny.
    RepeatedSquaring { max_squarings: usize },
}

impl Default for NormMethod {
    fn default() -> Self {
        NormMethod::RepeatedSquaring { max_squarings: 64 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvexOptions {
    /// Golden-section stops once the bracket is this small relative to its midpoint.
    pub bracket_tol: f64,
    pub max_iter: usize,
    pub norm_method: NormMethod,
}

impl Default for ConvexOptions {
    fn default() -> Self {
        ConvexOptions {
            bracket_tol: 1e-12,
            max_iter: 500,
            norm_method: NormMethod::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvexResult {
    /// `‖ε*A − I‖₂`.
    pub value: f64,
    /// The minimizing ε.
    pub epsilon: f64,
    pub evaluations: usize,
}

/// Spectral norm of the symmetric row-major matrix `b`.
pub fn spectral_norm(b: &[f64], n: usize, method: NormMethod) -> Result<f64> {
    match method {
        NormMethod::PowerIteration { max_iter, tol } => power_norm(b, n, max_iter, tol),
        NormMethod::RepeatedSquaring { max_squarings } => squaring_norm(b, n, max_squarings),
    }
}

fn power_norm(b: &[f64], n: usize, max_iter: usize, tol: f64) -> Result<f64> {
    // fixed, nowhere-special start vector
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i as f64) * 0.7).sin()).collect();
    let mut bv = vec![0.0; n];
    let mut w = vec![0.0; n];
    let mut estimate = 0.0;
    for _ in 0..max_iter {
        let vn = norm(&v);
        if vn == 0.0 {
            return Ok(0.0);
        }
        v.iter_mut().for_each(|x| *x /= vn);
        matvec(b, n, &v, &mut bv);
        let next = norm(&bv);
        matvec(b, n, &bv, &mut w);
        std::mem::swap(&mut v, &mut w);
        if next == 0.0 || (next - estimate).abs() <= tol * next {
            return Ok(next);
        }
        estimate = next;
    }
    Err(TrigError::ConvergenceFailure {
        routine: "power iteration",
        iterations: max_iter,
    })
}

fn squaring_norm(b: &[f64], n: usize, max_squarings: usize) -> Result<f64> {
    let mut p = matmul(b, b, n);
    if !rescale(&mut p) {
        return Ok(0.0);
    }
    for _ in 0..max_squarings {
        let mut next = matmul(&p, &p, n);
        if !rescale(&mut next) {
            break;
        }
        let change: f64 = next.iter().zip(&p).map(|(a, b)| (a - b) * (a - b)).sum();
        let size: f64 = next.iter().map(|a| a * a).sum();
        p = next;
        if change <= 1e-28 * size {
            break;
        }
    }
    // the dominant column of the (scaled) projector spans the top singular space
    let col = (0..n)
        .max_by(|&i, &j| p[i * n + i].total_cmp(&p[j * n + j]).then(j.cmp(&i)))
        .unwrap_or(0);
    let v: Vec<f64> = (0..n).map(|i| p[i * n + col]).collect();
    let mut bv = vec![0.0; n];
    matvec(b, n, &v, &mut bv);
    Ok(norm(&bv) / norm(&v))
}

/// Divides by the trace; false when the matrix has collapsed to zero.
fn rescale(p: &mut [f64]) -> bool {
    let n = (p.len() as f64).sqrt() as usize;
    let tr: f64 = (0..n).map(|i| p[i * n + i]).sum();
    if !(tr > 0.0) || !tr.is_finite() {
        return false;
    }
    p.iter_mut().for_each(|x| *x /= tr);
    true
}

/// `‖εA − I‖₂`.
pub fn shifted_norm(a: &SpdMatrix, epsilon: f64, method: NormMethod) -> Result<f64> {
    let n = a.dim();
    let mut b: Vec<f64> = a.as_slice().iter().map(|x| epsilon * x).collect();
    for i in 0..n {
        b[i * n + i] -= 1.0;
    }
    spectral_norm(&b, n, method)
}

/// Golden-section minimization of `‖εA − I‖₂` over `ε ∈ (0, 2/λ₁]`.
pub fn nu1_convex(a: &SpdMatrix, opts: &ConvexOptions) -> Result<ConvexResult> {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;

    let h = |e: f64| shifted_norm(a, e, opts.norm_method);
    let mut lo = f64::MIN_POSITIVE;
    let mut hi = 2.0 / a.spectral().lambda_min();
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = h(x1)?;
    let mut f2 = h(x2)?;
    let mut evaluations = 2;

    for _ in 0..opts.max_iter {
        if hi - lo <= opts.bracket_tol * 0.5 * (hi + lo) {
            let (epsilon, value) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
            return Ok(ConvexResult {
                value,
                epsilon,
                evaluations,
            });
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = h(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = h(x2)?;
        }
        evaluations += 1;
    }
    Err(TrigError::ConvergenceFailure {
        routine: "golden-section search",
        iterations: opts.max_iter,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_minimum_at_one() {
        let a = SpdMatrix::identity(3);
        let r = nu1_convex(&a, &ConvexOptions::default()).unwrap();
        assert!(r.value < 1e-10);
        assert!((r.epsilon - 1.0).abs() < 1e-10);
    }

    #[test]
    fn diag_1_3_by_hand() {
        // ‖εA − I‖ = max(|ε−1|, |3ε−1|), minimized at ε = 1/2 with value 1/2
        let a = SpdMatrix::diagonal(&[1.0, 3.0]).unwrap();
        let r = nu1_convex(&a, &ConvexOptions::default()).unwrap();
        assert!((r.value - 0.5).abs() < 1e-10);
        assert!((r.epsilon - 0.5).abs() < 1e-10);
    }

    #[test]
    fn norms_agree_on_dense_matrix() {
        // symmetric with eigenvalues -3, 1, 2 in a rotated basis; ‖B‖ = 3
        let c = std::f64::consts::FRAC_1_SQRT_2;
        let q = [[c, c, 0.0], [-c, c, 0.0], [0.0, 0.0, 1.0]];
        let d = [-3.0, 1.0, 2.0];
        let mut b = vec![0.0; 9];
        for i in 0..3 {
            for j in 0..3 {
                b[i * 3 + j] = (0..3).map(|k| q[i][k] * d[k] * q[j][k]).sum();
            }
        }
        let sq = spectral_norm(&b, 3, NormMethod::default()).unwrap();
        let pw = spectral_norm(
            &b,
            3,
            NormMethod::PowerIteration {
                max_iter: 10_000,
                tol: 1e-15,
            },
        )
        .unwrap();
        assert!((sq - 3.0).abs() < 1e-13);
        assert!((pw - 3.0).abs() < 1e-12);
    }

    #[test]
    fn squaring_resolves_near_ties() {
        // ±1 and 1 − 1e-9: power iteration would crawl here
        let b = [1.0, 0.0, 0.0, 0.0, -(1.0 - 1e-9), 0.0, 0.0, 0.0, 0.5];
        let r = spectral_norm(&b, 3, NormMethod::default()).unwrap();
        assert!((r - 1.0).abs() < 1e-15);
        assert_eq!(spectral_norm(&[0.0; 4], 2, NormMethod::default()).unwrap(), 0.0);
    }

    #[test]
    fn power_iteration_can_fail() {
        let b = [1.0, 0.0, 0.0, -0.999];
        let r = spectral_norm(
            &b,
            2,
            NormMethod::PowerIteration {
                max_iter: 3,
                tol: 1e-16,
            },
        );
        assert!(matches!(r, Err(TrigError::ConvergenceFailure { .. })));
    }
}
