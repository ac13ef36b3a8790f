//! Gauged elasticity: strain from embeddings and gauge fields, stress
//! density and stress vectors, elastic energy, derived moduli.
//!
//! Sign convention: the model's action terms carry negative elastic and
//! gauge prefactors; this crate works with the energies (their negatives) so
//! every piece is bounded below and statics is energy minimization. The
//! Euler-Lagrange equations are unchanged.

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::field::{sym2, ScalarField, SymTensorField};
use crate::gauge::{gauge_covariant_derivative, GaugeField};
use crate::geometry::{Embedding, MetricField};
use crate::grid::{Grid, Parity};
use crate::stencil;

/// Material constants of the membrane model.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MaterialParams {
    /// First Lame coefficient (energy / area).
    pub lambda: f64,
    /// Shear modulus (energy / area).
    pub mu: f64,
    /// Bending rigidity (energy).
    pub kappa: f64,
    /// Gaussian rigidity (energy).
    pub kappa_g: f64,
    /// Gauge coupling strength.
    pub s: f64,
    /// Frank index used by defect-generating helpers.
    pub nu: f64,
}

impl MaterialParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.mu > 0.0) {
            return Err(CoreError::InvalidParams(format!("mu must be > 0, got {}", self.mu)));
        }
        if !(self.lambda + self.mu > 0.0) {
            return Err(CoreError::InvalidParams(format!(
                "lambda + mu must be > 0, got {}",
                self.lambda + self.mu
            )));
        }
        if self.kappa < 0.0 {
            return Err(CoreError::InvalidParams(format!(
                "kappa must be >= 0, got {}",
                self.kappa
            )));
        }
        if !(self.s > 0.0) {
            return Err(CoreError::InvalidParams(format!("s must be > 0, got {}", self.s)));
        }
        Ok(())
    }

    /// Two-dimensional Young-type modulus K0 = 4 mu (lambda + mu) / (lambda + 2 mu).
    pub fn k0(&self) -> Result<f64> {
        k0(self)
    }

    /// Plane-stress Poisson ratio lambda / (lambda + 2 mu).
    pub fn poisson(&self) -> f64 {
        self.lambda / (self.lambda + 2.0 * self.mu)
    }
}

impl Default for MaterialParams {
    fn default() -> Self {
        MaterialParams {
            lambda: 1.0,
            mu: 1.0,
            kappa: 1e-4,
            kappa_g: 0.0,
            s: 1.0,
            nu: 1.0 / 6.0,
        }
    }
}

/// Strain tensor E_ab per node (lower indices, dimensionless).
pub type StrainField = SymTensorField;

/// Stress density rho^ab per node (raised indices, energy / area).
pub type StressField = SymTensorField;

/// The two R^3 stress vectors sigma^b per node.
#[derive(Debug, Clone)]
pub struct StressVectors {
    pub grid: Grid,
    /// sigma[node] = [sigma^u, sigma^v].
    pub sigma: Vec<[Vector3<f64>; 2]>,
}

/// E_ab = nabla_a R . nabla_b R - (g_ref)_ab.
pub fn strain_tensor(g_ref: &MetricField, e: &Embedding, w: &GaugeField) -> StrainField {
    let grid = &e.grid;
    let (tu, tv) = gauge_covariant_derivative(w, e);
    let mut out = SymTensorField::zeros(grid);
    for idx in 0..grid.node_count() {
        let t = [tu.data[idx], tv.data[idx]];
        let gr = g_ref.g[idx];
        out.data[idx] = [
            t[0].dot(&t[0]) - gr[0],
            t[0].dot(&t[1]) - gr[1],
            t[1].dot(&t[1]) - gr[2],
        ];
    }
    out
}

/// Linearized membrane strain on a flat reference:
/// E_ab = d_a u_b + d_b u_a + d_a f d_b f
///        + eps_{alpha a} W_b R0^alpha + eps_{alpha b} W_a R0^alpha,
/// dropping O(u^2, u df, W^2). `w` must be abelian (z component only).
pub fn linearized_membrane_strain(
    ux: &ScalarField,
    uy: &ScalarField,
    f: &ScalarField,
    w: &GaugeField,
    e0: &Embedding,
) -> Result<StrainField> {
    let grid = &e0.grid;
    let (wu, wv) = w.abelian_components()?;
    let dux_u = stencil::deriv_u(grid, &ux.data, Parity::Even);
    let dux_v = stencil::deriv_v(grid, &ux.data, Parity::Even);
    let duy_u = stencil::deriv_u(grid, &uy.data, Parity::Even);
    let duy_v = stencil::deriv_v(grid, &uy.data, Parity::Even);
    let df_u = stencil::deriv_u(grid, &f.data, Parity::Even);
    let df_v = stencil::deriv_v(grid, &f.data, Parity::Even);
    let mut out = SymTensorField::zeros(grid);
    for idx in 0..grid.node_count() {
        let r0 = e0.positions.data[idx];
        // eps_{alpha a} R0^alpha for a = u, v: (-R0_y, R0_x)
        let e1 = -r0.y;
        let e2 = r0.x;
        let w_ = [wu[idx], wv[idx]];
        out.data[idx] = [
            2.0 * dux_u[idx] + df_u[idx] * df_u[idx] + 2.0 * e1 * w_[0],
            dux_v[idx] + duy_u[idx] + df_u[idx] * df_v[idx] + e1 * w_[1] + e2 * w_[0],
            2.0 * duy_v[idx] + df_v[idx] * df_v[idx] + 2.0 * e2 * w_[1],
        ];
    }
    Ok(out)
}

/// rho^ab = lambda g^ab tr E + 2 mu E^ab.
pub fn stress_density(e: &StrainField, m: &MetricField, p: &MaterialParams) -> StressField {
    let mut out = SymTensorField::zeros(&e.grid);
    for idx in 0..e.data.len() {
        let gi = m.g_inv[idx];
        let tr = sym2::trace_with(&gi, &e.data[idx]);
        let up = sym2::raise(&gi, &e.data[idx]);
        out.data[idx] = [
            p.lambda * gi[0] * tr + 2.0 * p.mu * up[0],
            p.lambda * gi[1] * tr + 2.0 * p.mu * up[1],
            p.lambda * gi[2] * tr + 2.0 * p.mu * up[2],
        ];
    }
    out
}

/// sigma^b = (1/2) (nabla_a R) rho^ab.
pub fn stress_vectors(e: &Embedding, w: &GaugeField, rho: &StressField) -> StressVectors {
    let grid = &e.grid;
    let (tu, tv) = gauge_covariant_derivative(w, e);
    let mut sigma = vec![[Vector3::zeros(); 2]; grid.node_count()];
    for idx in 0..grid.node_count() {
        let t = [tu.data[idx], tv.data[idx]];
        let r = rho.data[idx]; // [uu, uv, vv] raised
        sigma[idx][0] = 0.5 * (t[0] * r[0] + t[1] * r[1]);
        sigma[idx][1] = 0.5 * (t[0] * r[1] + t[1] * r[2]);
    }
    StressVectors {
        grid: grid.clone(),
        sigma,
    }
}

/// Elastic energy (1/8) int sqrt(g) [lambda (tr E)^2 + 2 mu tr E^2] du dv,
/// with tr E^2 the full contraction E^a_b E^b_a.
pub fn elastic_energy(e: &StrainField, m: &MetricField, p: &MaterialParams) -> f64 {
    let grid = &e.grid;
    let mut acc = 0.0;
    for j in 0..grid.n_v {
        for i in 0..grid.n_u {
            let idx = grid.index(i, j);
            acc += grid.quad_weight(i, j)
                * m.sqrt_g[idx]
                * elastic_energy_density(&e.data[idx], &m.g_inv[idx], p);
        }
    }
    acc
}

/// Pointwise elastic energy density (per unit reference area).
#[inline]
pub fn elastic_energy_density(e_ab: &[f64; 3], g_inv: &[f64; 3], p: &MaterialParams) -> f64 {
    let tr = sym2::trace_with(g_inv, e_ab);
    let tr2 = sym2::contract_sq(g_inv, e_ab);
    0.125 * (p.lambda * tr * tr + 2.0 * p.mu * tr2)
}

/// Effective von Karman modulus K0 = 4 mu (lambda + mu) / (lambda + 2 mu).
pub fn k0(p: &MaterialParams) -> Result<f64> {
    let denom = p.lambda + 2.0 * p.mu;
    if denom == 0.0 {
        return Err(CoreError::InvalidParams(
            "K0 undefined: lambda + 2 mu = 0".into(),
        ));
    }
    Ok(4.0 * p.mu * (p.lambda + p.mu) / denom)
}

/// Plane-stress energy density in terms of the standard (Airy) stress tensor
/// sigma_ab on a flat metric:
/// e = (1/(2 K0)) [(tr sigma)^2 - 2 (1 + nu_p) det sigma].
///
/// Identical to [`elastic_energy_density`] with E_ab recovered from
/// rho = 2 sigma through the constitutive law.
pub fn plane_stress_energy_density(sigma: &[f64; 3], p: &MaterialParams) -> f64 {
    let k0 = 4.0 * p.mu * (p.lambda + p.mu) / (p.lambda + 2.0 * p.mu);
    let tr = sigma[0] + sigma[2];
    let det = sigma[0] * sigma[2] - sigma[1] * sigma[1];
    ((tr * tr) - 2.0 * (1.0 + p.poisson()) * det) / (2.0 * k0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn energy_density_routes_agree() {
        // flat metric: recover E from sigma and compare the two densities
        let p = MaterialParams {
            lambda: 1.3,
            mu: 0.8,
            ..Default::default()
        };
        let gi = [1.0, 0.0, 1.0];
        for sigma in [[1.0, 0.0, 0.0], [0.4, -0.3, 1.1], [0.0, 0.7, 0.0]] {
            // rho = 2 sigma; trE = tr rho / (2 (lambda + mu));
            // E = (rho - lambda g trE) / (2 mu)
            let tr_rho = 2.0 * (sigma[0] + sigma[2]);
            let tr_e = tr_rho / (2.0 * (p.lambda + p.mu));
            let e = [
                (2.0 * sigma[0] - p.lambda * tr_e) / (2.0 * p.mu),
                (2.0 * sigma[1]) / (2.0 * p.mu),
                (2.0 * sigma[2] - p.lambda * tr_e) / (2.0 * p.mu),
            ];
            let a = elastic_energy_density(&e, &gi, &p);
            let b = plane_stress_energy_density(&sigma, &p);
            assert!((a - b).abs() < 1e-13, "{a} vs {b}");
        }
    }

    #[test]
    fn k0_values() {
        let p = MaterialParams {
            lambda: 1.0,
            mu: 1.0,
            ..Default::default()
        };
        assert!((k0(&p).unwrap() - 8.0 / 3.0).abs() < 1e-15);
    }
}
