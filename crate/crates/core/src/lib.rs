//! Antieigenvalue analysis for symmetric positive definite matrices.
//!
//! - [`trig`]: validated SPD matrices, Jacobi eigendecomposition, closed-form
//!   and direct computations of `cos φ(A)`, `sin φ(A)`, the minimizing ε and
//!   the antieigenvectors.
//! - [`granular`]: 2×2 stress tensors, the angle of repose and its equality
//!   with the stress tensor's turning angle; linear-in-depth pile fields.
//! - [`sharpe`]: arithmetic and geometric Sharpe ratios and their ratio.
//! - [`pythagorean`]: Euclid's parametrization of primitive triples as
//!   operator trigonometry of `diag(n², m²)`.
//!
//! Batch work (multi-start restarts, grid sweeps, enumeration) runs on rayon
//! when the default `parallel` feature is enabled; see [`par`].

pub mod granular;
pub mod par;
pub mod pythagorean;
pub mod random;
pub mod sharpe;
pub mod trig;

pub use trig::{SpdMatrix, SpectralData, TrigError, TrigReport};
