//! Operator trigonometry of symmetric positive definite matrices.
//!
//! For SPD `A` with extreme eigenvalues `λ₁ ≤ λₙ`, the first antieigenvalue
//! `μ₁ = cos φ(A)` is the minimum of `⟨Ax,x⟩/(‖Ax‖‖x‖)` and the companion
//! `ν₁ = sin φ(A)` is the minimum of `‖εA − I‖` over `ε > 0`. Both have closed
//! forms in `λ₁, λₙ` ([`closed`]); [`variational`] and [`convex`] compute them
//! directly from their definitions so that the two routes cross-check.

pub mod closed;
pub mod convex;
mod error;
mod linalg;
pub mod report;
pub mod spd;
pub mod spectral;
pub mod variational;

pub use closed::{
    antieigenvectors, epsilon_min, mu1_closed, nu1_closed, phi_closed,
    product_positivity_sufficient, turning_angle, PositivityCheck,
};
pub use convex::{nu1_convex, spectral_norm, ConvexOptions, ConvexResult, NormMethod};
pub use error::{Result, TrigError};
pub use report::{trig_report, Angle, AntieigenvectorPair, Method, TrigOptions, TrigReport};
pub use spd::{validate_spd, SpdMatrix, Tolerances};
pub use spectral::{spectral_decompose, SpectralData};
pub use variational::{
    mu1_variational, quotient, quotient_gradient, VariationalOptions, VariationalResult,
};
