//! Closed-form valuations from the extreme eigenvalues.

use serde::{Deserialize, Serialize};

use super::error::{Result, TrigError};
use super::linalg::{angle_between, norm};
use super::spd::{SpdMatrix, Tolerances};
use super::spectral::SpectralData;

/// First antieigenvalue `cos φ(A) = 2√(λ₁λₙ)/(λ₁+λₙ)`.
pub fn mu1_closed(spec: &SpectralData) -> f64 {
    mu1_from_extremes(spec.lambda_min(), spec.lambda_max())
}

/// `sin φ(A) = (λₙ−λ₁)/(λₙ+λ₁)`.
pub fn nu1_closed(spec: &SpectralData) -> f64 {
    nu1_from_extremes(spec.lambda_min(), spec.lambda_max())
}

/// The ε minimizing ‖εA − I‖: `2/(λ₁+λₙ)`.
pub fn epsilon_min(spec: &SpectralData) -> f64 {
    2.0 / (spec.lambda_min() + spec.lambda_max())
}

pub fn mu1_from_extremes(lmin: f64, lmax: f64) -> f64 {
    2.0 * lmin.sqrt() * lmax.sqrt() / (lmin + lmax)
}

pub fn nu1_from_extremes(lmin: f64, lmax: f64) -> f64 {
    (lmax - lmin) / (lmax + lmin)
}

/// Turning angle from the closed forms, via `atan2(ν₁, μ₁)` so that nearly
/// isotropic spectra keep full precision.
pub fn phi_closed(spec: &SpectralData) -> f64 {
    nu1_closed(spec).atan2(mu1_closed(spec))
}

/// The pair of maximally turned unit vectors
/// `x± = √(λₙ/(λ₁+λₙ)) x₁ ± √(λ₁/(λ₁+λₙ)) xₙ`.
///
/// Fails with [`TrigError::DegenerateSpectrum`] when λ₁ = λₙ within `eig_tol`.
pub fn antieigenvectors(spec: &SpectralData, eig_tol: f64) -> Result<[Vec<f64>; 2]> {
    if spec.is_degenerate(eig_tol) {
        return Err(TrigError::DegenerateSpectrum);
    }
    let (l1, ln) = (spec.lambda_min(), spec.lambda_max());
    let w1 = (ln / (l1 + ln)).sqrt();
    let wn = (l1 / (l1 + ln)).sqrt();
    let combine = |sign: f64| -> Vec<f64> {
        spec.x_min()
            .iter()
            .zip(spec.x_max())
            .map(|(a, b)| w1 * a + sign * wn * b)
            .collect()
    };
    Ok([combine(1.0), combine(-1.0)])
}

/// Angle between `x` and `A·x`, in `[0, π/2)` for SPD `A`.
pub fn turning_angle(x: &[f64], a: &SpdMatrix) -> Result<f64> {
    if x.len() != a.dim() {
        return Err(TrigError::DimensionMismatch {
            expected: a.dim(),
            got: x.len(),
        });
    }
    if norm(x) == 0.0 {
        return Err(TrigError::ZeroVector);
    }
    Ok(angle_between(x, &a.apply(x)))
}

/// Outcome of the multiplicative-perturbation positivity test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PositivityCheck {
    pub sufficient: bool,
    /// `cos φ(A) − sin φ(B)`.
    pub margin: f64,
    pub cos_phi_a: f64,
    pub sin_phi_b: f64,
}

/// Whether `sin φ(B) ≤ cos φ(A)`, which guarantees `BA` stays positive.
///
/// Equality cases that differ only by rounding count as satisfied.
pub fn product_positivity_sufficient(a: &SpdMatrix, b: &SpdMatrix) -> Result<PositivityCheck> {
    if a.dim() != b.dim() {
        return Err(TrigError::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    let cos_phi_a = mu1_closed(a.spectral());
    let sin_phi_b = nu1_closed(b.spectral());
    let margin = cos_phi_a - sin_phi_b;
    let slack = Tolerances::default().identity_tol * 1e-2;
    Ok(PositivityCheck {
        sufficient: margin >= -slack,
        margin,
        cos_phi_a,
        sin_phi_b,
    })
}
