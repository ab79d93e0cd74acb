//! Stress tensors of granular piles.
//!
//! A symmetric 2×2 stress tensor `Σ` with principal stresses `σ₁ ≥ σ₂ > 0`
//! supports slopes up to the angle of repose `θ`, `sin θ = τ/σ` with
//! `σ = (σ₁+σ₂)/2` and `τ = (σ₁−σ₂)/2`. That ratio is exactly
//! `‖ε_m Σ − I‖` at `ε_m = 2/(σ₁+σ₂)`, the sine of `Σ`'s turning angle, so
//! the repose angle, the internal friction angle and `φ(Σ)` coincide.

mod field;

pub use field::{
    equilibrium_residual, linear_depth_field, EquilibriumResidual, FieldParams, StressField,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::trig::{self, Angle, ConvexOptions, SpdMatrix, TrigError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StressError {
    #[error("stress tensor is not positive definite (sigma_xx = {sigma_xx}, det = {det})")]
    NotPositiveDefinite { sigma_xx: f64, det: f64 },
    #[error("invalid principal stresses: need sigma1 >= sigma2 > 0, got {sigma1}, {sigma2}")]
    InvalidPrincipalStress { sigma1: f64, sigma2: f64 },
    #[error("non-finite stress component")]
    NonFinite,
    #[error("slope too steep for K: tan(theta) = {tan_theta} >= sqrt(K) = {sqrt_k}")]
    UnstableParameters { tan_theta: f64, sqrt_k: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("grid {nx}x{nz} too small for central differences (need at least 3x3)")]
    GridTooSmall { nx: usize, nz: usize },
    #[error(transparent)]
    Trig(#[from] TrigError),
}

impl StressError {
    pub fn is_numerical(&self) -> bool {
        matches!(self, StressError::Trig(e) if e.is_numerical())
    }
}

/// Symmetric 2×2 stress tensor; the shear component is stored once.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct StressTensor2 {
    pub sigma_xx: f64,
    pub sigma_xz: f64,
    pub sigma_zz: f64,
}

impl StressTensor2 {
    pub const fn new(sigma_xx: f64, sigma_xz: f64, sigma_zz: f64) -> Self {
        StressTensor2 {
            sigma_xx,
            sigma_xz,
            sigma_zz,
        }
    }

    pub fn det(&self) -> f64 {
        self.sigma_xx * self.sigma_zz - self.sigma_xz * self.sigma_xz
    }

    pub fn check_positive_definite(&self) -> Result<(), StressError> {
        if ![self.sigma_xx, self.sigma_xz, self.sigma_zz]
            .iter()
            .all(|v| v.is_finite())
        {
            return Err(StressError::NonFinite);
        }
        let det = self.det();
        if self.sigma_xx > 0.0 && det > 0.0 {
            Ok(())
        } else {
            Err(StressError::NotPositiveDefinite {
                sigma_xx: self.sigma_xx,
                det,
            })
        }
    }

    pub fn to_spd(&self) -> Result<SpdMatrix, StressError> {
        self.check_positive_definite()?;
        Ok(SpdMatrix::from_rows(&[
            vec![self.sigma_xx, self.sigma_xz],
            vec![self.sigma_xz, self.sigma_zz],
        ])?)
    }

    /// `R Σ Rᵀ` for the rotation by `angle`.
    pub fn rotated(&self, angle: f64) -> Self {
        let p = principal_decompose_unchecked(self);
        compose_unchecked(p.psi + angle, p.sigma1, p.sigma2)
    }

    pub fn scaled(&self, c: f64) -> Self {
        StressTensor2::new(c * self.sigma_xx, c * self.sigma_xz, c * self.sigma_zz)
    }
}

/// Principal direction `ψ` and stresses `σ₁ ≥ σ₂`, with
/// `Σ = R(ψ) diag(σ₁, σ₂) R(ψ)ᵀ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrincipalStress {
    /// In `(−π/2, π/2]`; zero for isotropic tensors.
    pub psi: f64,
    pub sigma1: f64,
    pub sigma2: f64,
}

/// Closed-form symmetric 2×2 eigendecomposition.
pub fn principal_decompose(s: &StressTensor2) -> Result<PrincipalStress, StressError> {
    s.check_positive_definite()?;
    Ok(principal_decompose_unchecked(s))
}

fn principal_decompose_unchecked(s: &StressTensor2) -> PrincipalStress {
    let mean = 0.5 * (s.sigma_xx + s.sigma_zz);
    let half_diff = 0.5 * (s.sigma_xx - s.sigma_zz);
    let radius = half_diff.hypot(s.sigma_xz);
    let sigma1 = mean + radius;
    // det/σ₁ avoids cancellation in mean − radius
    let sigma2 = if sigma1 > 0.0 { s.det() / sigma1 } else { mean - radius };
    let mut psi = 0.5 * (2.0 * s.sigma_xz).atan2(s.sigma_xx - s.sigma_zz);
    if psi <= -std::f64::consts::FRAC_PI_2 {
        psi += std::f64::consts::PI;
    }
    PrincipalStress {
        psi,
        sigma1,
        sigma2,
    }
}

/// Rebuilds `Σ = R(ψ) diag(σ₁, σ₂) R(ψ)ᵀ`.
pub fn compose_stress(p: &PrincipalStress) -> Result<StressTensor2, StressError> {
    if !(p.sigma2 > 0.0 && p.sigma1 >= p.sigma2) || !p.psi.is_finite() || !p.sigma1.is_finite() {
        return Err(StressError::InvalidPrincipalStress {
            sigma1: p.sigma1,
            sigma2: p.sigma2,
        });
    }
    Ok(compose_unchecked(p.psi, p.sigma1, p.sigma2))
}

fn compose_unchecked(psi: f64, sigma1: f64, sigma2: f64) -> StressTensor2 {
    let (s, c) = psi.sin_cos();
    StressTensor2 {
        sigma_xx: sigma1 * c * c + sigma2 * s * s,
        sigma_xz: (sigma1 - sigma2) * c * s,
        sigma_zz: sigma1 * s * s + sigma2 * c * c,
    }
}

/// Angle-of-repose analysis of a stress tensor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReposeReport {
    pub principal: PrincipalStress,
    /// σ = (σ₁+σ₂)/2.
    pub mean_stress: f64,
    /// τ = (σ₁−σ₂)/2.
    pub deviator: f64,
    /// τ/σ.
    pub sin_theta: f64,
    /// Angle of repose.
    pub theta: Angle,
    /// Internal friction angle; coincides with θ.
    pub delta: Angle,
    /// Turning angle of Σ from the closed forms on (σ₂, σ₁).
    pub phi: Angle,
    /// ε_m = 2/(σ₁+σ₂).
    pub epsilon_m: f64,
    /// ‖ε Σ − I‖ minimized numerically.
    pub convex_value: f64,
    pub convex_epsilon: f64,
    /// max(|θ − φ|, |convex_value − τ/σ|).
    pub theorem_residual: f64,
}

pub fn repose_report(s: &StressTensor2) -> Result<ReposeReport, StressError> {
    repose_report_with(s, &ConvexOptions::default())
}

pub fn repose_report_with(
    s: &StressTensor2,
    opts: &ConvexOptions,
) -> Result<ReposeReport, StressError> {
    let principal = principal_decompose(s)?;
    let mean_stress = 0.5 * (principal.sigma1 + principal.sigma2);
    let deviator = 0.5 * (principal.sigma1 - principal.sigma2);
    let sin_theta = deviator / mean_stress;
    let theta = sin_theta.asin();

    let spec = trig::SpectralData {
        eigenvalues: vec![principal.sigma2, principal.sigma1],
        eigenvectors: vec![vec![0.0, 1.0], vec![1.0, 0.0]],
    };
    let phi = trig::phi_closed(&spec);
    let epsilon_m = trig::epsilon_min(&spec);

    let cvx = trig::nu1_convex(&s.to_spd()?, opts)?;
    let theorem_residual = (theta - phi).abs().max((cvx.value - sin_theta).abs());

    Ok(ReposeReport {
        principal,
        mean_stress,
        deviator,
        sin_theta,
        theta: Angle::from_radians(theta),
        delta: Angle::from_radians(theta),
        phi: Angle::from_radians(phi),
        epsilon_m,
        convex_value: cvx.value,
        convex_epsilon: cvx.epsilon,
        theorem_residual,
    })
}
