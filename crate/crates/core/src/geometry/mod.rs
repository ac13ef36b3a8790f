//! Discrete differential geometry on parametric surfaces: induced metrics,
//! Levi-Civita connections, curvature data, covariant operators and Green
//! functions, all on structured 2D grids.

mod connection;
mod curvature;
mod green;
mod hessian;
mod laplacian;
mod metric;

pub use connection::christoffel;
pub use curvature::{curvature_data, CurvatureData};
pub use green::{covariant_green_function, GreenOpts, GreenSource, Neutralization};
pub use hessian::{hessian_csr, CovariantHessian};
pub use laplacian::{covariant_laplacian, laplacian_csr, LapBc};
pub use metric::induced_metric;

use nalgebra::Vector3;

use crate::error::{CoreError, Result};
use crate::field::Vec3Field;
use crate::grid::{Grid, Parity};
use crate::stencil;

/// A sampled map from the parameter grid into R^3.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub grid: Grid,
    pub positions: Vec3Field,
}

impl Embedding {
    pub fn from_fn(grid: &Grid, f: impl FnMut(f64, f64) -> Vector3<f64>) -> Self {
        Embedding {
            grid: grid.clone(),
            positions: Vec3Field::from_fn(grid, f),
        }
    }

    /// Discrete tangent fields (d_u R, d_v R).
    pub fn tangents(&self) -> (Vec3Field, Vec3Field) {
        let g = &self.grid;
        let mut tu = Vec3Field::zeros(g);
        let mut tv = Vec3Field::zeros(g);
        for k in 0..3 {
            let comp: Vec<f64> = self.positions.data.iter().map(|p| p[k]).collect();
            let du = stencil::deriv_u(g, &comp, Parity::Even);
            let dv = stencil::deriv_v(g, &comp, Parity::Even);
            for idx in 0..g.node_count() {
                tu.data[idx][k] = du[idx];
                tv.data[idx][k] = dv[idx];
            }
        }
        (tu, tv)
    }

    /// Verify the immersion condition d_u R x d_v R != 0 at interior nodes.
    pub fn check_immersion(&self) -> Result<()> {
        let (tu, tv) = self.tangents();
        for j in 0..self.grid.n_v {
            for i in 0..self.grid.n_u {
                if !self.grid.is_interior(i, j) {
                    continue;
                }
                let idx = self.grid.index(i, j);
                let n = tu.data[idx].cross(&tv.data[idx]).norm();
                if n < 1e-12 {
                    return Err(CoreError::DegenerateNormal { i, j, norm: n });
                }
            }
        }
        Ok(())
    }
}

/// Induced metric data per node: g_ab, its inverse, sqrt(det g).
#[derive(Debug, Clone)]
pub struct MetricField {
    pub grid: Grid,
    /// [g_uu, g_uv, g_vv] per node.
    pub g: Vec<[f64; 3]>,
    /// [g^uu, g^uv, g^vv] per node.
    pub g_inv: Vec<[f64; 3]>,
    pub sqrt_g: Vec<f64>,
}

impl MetricField {
    /// Build from lower-index components, checking positive definiteness.
    pub fn from_components(grid: &Grid, g: Vec<[f64; 3]>) -> Result<MetricField> {
        assert_eq!(g.len(), grid.node_count());
        let mut g_inv = Vec::with_capacity(g.len());
        let mut sqrt_g = Vec::with_capacity(g.len());
        for (idx, t) in g.iter().enumerate() {
            let det = crate::field::sym2::det(t);
            if det <= 0.0 || t[0] <= 0.0 {
                let (i, j) = grid.coords_of(idx);
                return Err(CoreError::DegenerateMetric { i, j, det });
            }
            g_inv.push(crate::field::sym2::inv(t));
            sqrt_g.push(det.sqrt());
        }
        Ok(MetricField {
            grid: grid.clone(),
            g,
            g_inv,
            sqrt_g,
        })
    }

    /// Build from a closed-form diagonal-free metric function of (u, v).
    pub fn from_fn(grid: &Grid, mut f: impl FnMut(f64, f64) -> [f64; 3]) -> Result<MetricField> {
        let mut g = Vec::with_capacity(grid.node_count());
        for j in 0..grid.n_v {
            for i in 0..grid.n_u {
                g.push(f(grid.u_coord(i), grid.v_coord(j)));
            }
        }
        MetricField::from_components(grid, g)
    }

    /// Antisymmetric tensor component eps_uv = sqrt(g) (eps_ab = sqrt(g) e_ab).
    #[inline]
    pub fn eps_uv(&self, idx: usize) -> f64 {
        self.sqrt_g[idx]
    }

    /// Surface area: integral of sqrt(g) over the parameter rectangle.
    pub fn area(&self) -> f64 {
        let w = self.grid.quad_weights();
        self.sqrt_g.iter().zip(&w).map(|(s, wi)| s * wi).sum()
    }
}

/// Levi-Civita connection coefficients per node.
#[derive(Debug, Clone)]
pub struct Connection {
    pub grid: Grid,
    /// gamma[node][b][s] with b in {u, v} and s indexing the symmetric lower
    /// pair (uu, uv, vv).
    pub gamma: Vec<[[f64; 3]; 2]>,
}

impl Connection {
    /// Gamma^b_{ac}; a, c, b in {0 = u, 1 = v}.
    #[inline]
    pub fn at(&self, idx: usize, b: usize, a: usize, c: usize) -> f64 {
        self.gamma[idx][b][a + c]
    }
}
