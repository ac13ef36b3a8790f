//! Second fundamental form, mean and Gaussian curvature.

use nalgebra::Vector3;

use super::{Connection, Embedding, MetricField};
use crate::error::{CoreError, Result};
use crate::field::{sym2, Vec3Field};
use crate::grid::{Grid, Parity};
use crate::stencil;

/// Normal, curvature tensor and its two scalar invariants.
#[derive(Debug, Clone)]
pub struct CurvatureData {
    pub grid: Grid,
    /// Unit normal per node.
    pub normal: Vec3Field,
    /// K_ab = N . D_a D_b R, components [K_uu, K_uv, K_vv].
    pub k: Vec<[f64; 3]>,
    /// tr K = g^ab K_ab (mean extrinsic curvature).
    pub mean: Vec<f64>,
    /// det(g^ab K_bc) (Gaussian intrinsic curvature).
    pub gaussian: Vec<f64>,
}

/// Compute normal and curvature data of an embedding on its own metric and
/// connection.
pub fn curvature_data(e: &Embedding, m: &MetricField, c: &Connection) -> Result<CurvatureData> {
    let grid = &e.grid;
    let n = grid.node_count();
    let (tu, tv) = e.tangents();

    // second derivatives of the position components
    let mut ruu = vec![Vector3::zeros(); n];
    let mut ruv = vec![Vector3::zeros(); n];
    let mut rvv = vec![Vector3::zeros(); n];
    for k in 0..3 {
        let comp: Vec<f64> = e.positions.data.iter().map(|p| p[k]).collect();
        let duu = stencil::deriv_uu(grid, &comp, Parity::Even);
        let dvv = stencil::deriv_vv(grid, &comp, Parity::Even);
        let duv = stencil::deriv_uv(grid, &comp, Parity::Even);
        for idx in 0..n {
            ruu[idx][k] = duu[idx];
            ruv[idx][k] = duv[idx];
            rvv[idx][k] = dvv[idx];
        }
    }

    let mut normal = Vec3Field::zeros(grid);
    let mut kt = Vec::with_capacity(n);
    let mut mean = Vec::with_capacity(n);
    let mut gaussian = Vec::with_capacity(n);
    for idx in 0..n {
        let cross = tu.data[idx].cross(&tv.data[idx]);
        let nrm = cross.norm();
        if nrm < 1e-13 {
            let (i, j) = grid.coords_of(idx);
            return Err(CoreError::DegenerateNormal { i, j, norm: nrm });
        }
        let nv = cross / nrm;
        normal.data[idx] = nv;

        // D_a D_b R = dd R - Gamma^c_ab d_c R
        let second = [ruu[idx], ruv[idx], rvv[idx]];
        let mut kab = [0.0; 3];
        for (s, (a, b)) in [(0usize, 0usize), (0, 1), (1, 1)].iter().enumerate() {
            let cov = second[a + b]
                - c.at(idx, 0, *a, *b) * tu.data[idx]
                - c.at(idx, 1, *a, *b) * tv.data[idx];
            kab[s] = nv.dot(&cov);
        }
        kt.push(kab);
        mean.push(sym2::trace_with(&m.g_inv[idx], &kab));
        gaussian.push(sym2::det(&kab) / sym2::det(&m.g[idx]));
    }
    Ok(CurvatureData {
        grid: grid.clone(),
        normal,
        k: kt,
        mean,
        gaussian,
    })
}
