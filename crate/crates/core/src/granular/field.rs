use serde::{Deserialize, Serialize};

use super::{StressError, StressTensor2};
use crate::par;

/// Stresses on a regular `nx × nz` grid; row `j = 0` is the free surface and
/// `z` grows downward. Tensors are stored row by row (`j * nx + i`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StressField {
    pub nx: usize,
    pub nz: usize,
    pub dx: f64,
    pub dz: f64,
    pub tensors: Vec<StressTensor2>,
    pub rho: f64,
    pub g: f64,
    /// Local slope angle in radians.
    pub theta_slope: f64,
}

impl StressField {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        nx: usize,
        nz: usize,
        dx: f64,
        dz: f64,
        tensors: Vec<StressTensor2>,
        rho: f64,
        g: f64,
        theta_slope: f64,
    ) -> Result<Self, StressError> {
        if tensors.len() != nx * nz {
            return Err(StressError::InvalidParameter(format!(
                "expected {} tensors for a {nx}x{nz} grid, got {}",
                nx * nz,
                tensors.len()
            )));
        }
        if !(dx > 0.0 && dz > 0.0) {
            return Err(StressError::InvalidParameter("grid spacing must be positive".into()));
        }
        Ok(StressField {
            nx,
            nz,
            dx,
            dz,
            tensors,
            rho,
            g,
            theta_slope,
        })
    }

    pub fn at(&self, i: usize, j: usize) -> &StressTensor2 {
        &self.tensors[j * self.nx + i]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut StressTensor2 {
        &mut self.tensors[j * self.nx + i]
    }

    pub fn x(&self, i: usize) -> f64 {
        i as f64 * self.dx
    }

    pub fn z(&self, j: usize) -> f64 {
        j as f64 * self.dz
    }

    /// Largest stress magnitude on the surface row.
    pub fn surface_stress(&self) -> f64 {
        self.tensors[..self.nx]
            .iter()
            .flat_map(|t| [t.sigma_xx, t.sigma_xz, t.sigma_zz])
            .fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// Inputs of [`linear_depth_field`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldParams {
    /// Slope angle, radians.
    pub theta_slope: f64,
    pub rho: f64,
    pub g: f64,
    /// Lateral stress ratio σ_xx / σ_zz.
    pub k: f64,
    pub depth: f64,
    pub nx: usize,
    pub nz: usize,
}

impl Default for FieldParams {
    fn default() -> Self {
        FieldParams {
            theta_slope: 0.0,
            rho: 1.0,
            g: 1.0,
            k: 1.0,
            depth: 1.0,
            nx: 50,
            nz: 50,
        }
    }
}

/// Stress field growing linearly with depth under a free surface:
/// `σ_xz = ρgz sin θ`, `σ_zz = ρgz cos θ`, `σ_xx = K ρgz cos θ`.
///
/// Spacing is uniform, `dx = dz = depth / (nz − 1)`. The field balances
/// `∂ₓσ_xx + ∂_zσ_xz = ρg sin θ` and `∂ₓσ_xz + ∂_zσ_zz = ρg cos θ` exactly and
/// is positive definite below the surface iff `tan θ < √K`.
pub fn linear_depth_field(p: &FieldParams) -> Result<StressField, StressError> {
    let positive = |name: &str, v: f64| {
        if v > 0.0 && v.is_finite() {
            Ok(())
        } else {
            Err(StressError::InvalidParameter(format!("{name} must be positive, got {v}")))
        }
    };
    positive("rho", p.rho)?;
    positive("g", p.g)?;
    positive("K", p.k)?;
    positive("depth", p.depth)?;
    if p.nx < 2 || p.nz < 2 {
        return Err(StressError::InvalidParameter(format!(
            "grid needs nx, nz >= 2, got {}x{}",
            p.nx, p.nz
        )));
    }
    if !(p.theta_slope >= 0.0 && p.theta_slope.is_finite()) {
        return Err(StressError::InvalidParameter(format!(
            "slope angle must be non-negative, got {}",
            p.theta_slope
        )));
    }
    let tan_theta = p.theta_slope.tan();
    let sqrt_k = p.k.sqrt();
    if p.theta_slope >= std::f64::consts::FRAC_PI_2 || tan_theta >= sqrt_k {
        return Err(StressError::UnstableParameters { tan_theta, sqrt_k });
    }

    let dz = p.depth / (p.nz - 1) as f64;
    let (sin, cos) = p.theta_slope.sin_cos();
    let rho_g = p.rho * p.g;
    let mut tensors = vec![StressTensor2::default(); p.nx * p.nz];
    par::for_each_chunk_mut(&mut tensors, p.nx, |j, row| {
        let w = rho_g * (j as f64 * dz);
        let t = StressTensor2::new(p.k * w * cos, w * sin, w * cos);
        row.iter_mut().for_each(|c| *c = t);
    });
    StressField::new(p.nx, p.nz, dz, dz, tensors, p.rho, p.g, p.theta_slope)
}

/// Central-difference residual of the momentum balance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumResidual {
    pub nx: usize,
    pub nz: usize,
    /// `(r₁, r₂)` per node, `None` on the boundary.
    pub residuals: Vec<Option<[f64; 2]>>,
    /// Largest |r₁| or |r₂| over interior nodes.
    pub max_norm: f64,
    /// Root mean square over all interior residual components.
    pub rms: f64,
}

impl EquilibriumResidual {
    pub fn at(&self, i: usize, j: usize) -> Option<[f64; 2]> {
        self.residuals[j * self.nx + i]
    }
}

/// `r₁ = ∂ₓσ_xx + ∂_zσ_xz − ρg sin θ`, `r₂ = ∂ₓσ_xz + ∂_zσ_zz − ρg cos θ`
/// at every interior node.
pub fn equilibrium_residual(field: &StressField) -> Result<EquilibriumResidual, StressError> {
    let (nx, nz) = (field.nx, field.nz);
    if nx < 3 || nz < 3 {
        return Err(StressError::GridTooSmall { nx, nz });
    }
    let rho_g = field.rho * field.g;
    let (sin, cos) = field.theta_slope.sin_cos();
    let (hx, hz) = (2.0 * field.dx, 2.0 * field.dz);

    let mut residuals = vec![None; nx * nz];
    par::for_each_chunk_mut(&mut residuals, nx, |j, row| {
        if j == 0 || j == nz - 1 {
            return;
        }
        for (i, out) in row.iter_mut().enumerate().take(nx - 1).skip(1) {
            let east = field.at(i + 1, j);
            let west = field.at(i - 1, j);
            let below = field.at(i, j + 1);
            let above = field.at(i, j - 1);
            let r1 = (east.sigma_xx - west.sigma_xx) / hx + (below.sigma_xz - above.sigma_xz) / hz
                - rho_g * sin;
            let r2 = (east.sigma_xz - west.sigma_xz) / hx + (below.sigma_zz - above.sigma_zz) / hz
                - rho_g * cos;
            *out = Some([r1, r2]);
        }
    });

    let (mut max_norm, mut sum_sq, mut count) = (0.0f64, 0.0, 0usize);
    for [r1, r2] in residuals.iter().flatten() {
        max_norm = max_norm.max(r1.abs()).max(r2.abs());
        sum_sq += r1 * r1 + r2 * r2;
        count += 2;
    }
    Ok(EquilibriumResidual {
        nx,
        nz,
        residuals,
        max_norm,
        rms: (sum_sq / count as f64).sqrt(),
    })
}
