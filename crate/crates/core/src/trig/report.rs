use serde::{Deserialize, Serialize};

use super::closed::{antieigenvectors, epsilon_min, mu1_closed, nu1_closed, phi_closed};
use super::convex::{nu1_convex, ConvexOptions};
use super::error::Result;
use super::spd::{SpdMatrix, Tolerances};
use super::variational::{mu1_variational, VariationalOptions};

/// An angle carried in both units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Angle {
    pub radians: f64,
    pub degrees: f64,
}

impl Angle {
    pub fn from_radians(radians: f64) -> Self {
        Angle {
            radians,
            degrees: radians.to_degrees(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    Variational,
    ConvexSearch,
}

/// Which computation produced each headline field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub mu1: Method,
    pub nu1: Method,
    pub phi: Method,
    pub epsilon_min: Method,
    pub antieigenvectors: Method,
    pub mu1_variational: Method,
    pub nu1_convex: Method,
    pub epsilon_convex: Method,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AntieigenvectorPair {
    Pair { plus: Vec<f64>, minus: Vec<f64> },
    /// λ₁ = λₙ: every vector is an eigenvector.
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrigReport {
    pub dim: usize,
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub mu1: f64,
    pub nu1: f64,
    pub phi: Angle,
    pub epsilon_min: f64,
    pub antieigenvectors: AntieigenvectorPair,
    /// |μ₁² + ν₁² − 1|.
    pub identity_residual: f64,
    pub mu1_variational: f64,
    pub variational_argmin: Vec<f64>,
    pub nu1_convex: f64,
    pub epsilon_convex: f64,
    /// Every cross-check landed within its tolerance.
    pub consistent: bool,
    pub method: Provenance,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TrigOptions {
    pub tolerances: Tolerances,
    pub variational: VariationalOptions,
    pub convex: ConvexOptions,
}

/// Runs the closed-form, variational and convex-search paths on `a`.
///
/// A degenerate spectrum is reported, not raised.
pub fn trig_report(a: &SpdMatrix, opts: &TrigOptions) -> Result<TrigReport> {
    let spec = a.spectral();
    let tol = &opts.tolerances;
    let degenerate = spec.is_degenerate(tol.eig_tol);

    let (mu1, nu1, phi, pair) = if degenerate {
        (1.0, 0.0, 0.0, AntieigenvectorPair::Degenerate)
    } else {
        let [plus, minus] = antieigenvectors(spec, tol.eig_tol)?;
        (
            mu1_closed(spec),
            nu1_closed(spec),
            phi_closed(spec),
            AntieigenvectorPair::Pair { plus, minus },
        )
    };
    let eps = epsilon_min(spec);
    let identity_residual = (mu1 * mu1 + nu1 * nu1 - 1.0).abs();

    let var = mu1_variational(a, &opts.variational)?;
    let cvx = nu1_convex(a, &opts.convex)?;

    let consistent = identity_residual <= tol.identity_tol
        && (var.value - mu1).abs() <= tol.opt_tol
        && (cvx.value - nu1).abs() <= tol.opt_tol
        && (cvx.epsilon - eps).abs() <= tol.opt_tol * eps;

    Ok(TrigReport {
        dim: a.dim(),
        lambda_min: spec.lambda_min(),
        lambda_max: spec.lambda_max(),
        mu1,
        nu1,
        phi: Angle::from_radians(phi),
        epsilon_min: eps,
        antieigenvectors: pair,
        identity_residual,
        mu1_variational: var.value,
        variational_argmin: var.argmin,
        nu1_convex: cvx.value,
        epsilon_convex: cvx.epsilon,
        consistent,
        method: Provenance {
            mu1: Method::ClosedForm,
            nu1: Method::ClosedForm,
            phi: Method::ClosedForm,
            epsilon_min: Method::ClosedForm,
            antieigenvectors: Method::ClosedForm,
            mu1_variational: Method::Variational,
            nu1_convex: Method::ConvexSearch,
            epsilon_convex: Method::ConvexSearch,
        },
    })
}

impl TrigReport {
    pub fn is_degenerate(&self) -> bool {
        matches!(self.antieigenvectors, AntieigenvectorPair::Degenerate)
    }
}
