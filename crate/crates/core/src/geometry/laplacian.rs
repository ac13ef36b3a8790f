//! Covariant (Laplace-Beltrami) operator in conservative flux form.
//!
//! Delta f = (1/sqrt g) d_a (sqrt g g^ab d_b f), discretized with face fluxes
//! at half nodes. Face coefficients average the two adjacent node values of
//! sqrt(g) g^ab; faces lying on a coordinate apex (pole) carry zero flux.
//! Cross terms (g^uv) use centered transverse derivatives averaged to the
//! face; the scheme is exactly self-adjoint with respect to the sqrt(g)-
//! weighted quadrature whenever the metric is free of cross terms, which
//! covers every solve grid in this crate. Nodes on open edges fall back to
//! the non-conservative expansion with one-sided stencils.

use super::MetricField;
use crate::field::ScalarField;
use crate::grid::{Grid, Parity};
use crate::sparse::Csr;
use crate::stencil::{self, Deriv};

/// Boundary handling for the assembled operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LapBc {
    /// No rows replaced; caller handles boundary semantics (periodic or
    /// closed grids have none).
    Natural,
    /// Nodes on open edges become symmetrically eliminated Dirichlet rows
    /// (unit diagonal, zero couplings both ways).
    DirichletOpenEdges,
}

/// Assemble the conservative covariant Laplacian as a sparse matrix acting on
/// node values. Rows are (1/sqrt g) flux differences, i.e. the operator maps
/// f to Delta f nodewise.
pub fn laplacian_csr(m: &MetricField, bc: LapBc) -> Csr {
    let grid = &m.grid;
    let n = grid.node_count();
    let h_u = grid.h_u();
    let h_v = grid.h_v();
    let dirichlet = |i: usize, j: usize| {
        bc == LapBc::DirichletOpenEdges && (grid.on_open_u_edge(i) || grid.on_open_v_edge(j))
    };

    let mut trip: Vec<(usize, usize, f64)> = Vec::with_capacity(12 * n);
    let cf = |idx: usize, which: usize| -> f64 {
        // sqrt(g) * g^{which}: 0 -> uu, 1 -> uv, 2 -> vv
        m.sqrt_g[idx] * m.g_inv[idx][which]
    };

    for j in 0..grid.n_v {
        for i in 0..grid.n_u {
            let row = grid.index(i, j);
            if dirichlet(i, j) {
                trip.push((row, row, 1.0));
                continue;
            }
            let inv_sg = 1.0 / m.sqrt_g[row];
            // u faces at i +/- 1/2, v faces at j +/- 1/2
            for (dir, sgn) in [(0usize, 1.0f64), (0, -1.0), (1, 1.0), (1, -1.0)] {
                let (di, dj) = if dir == 0 {
                    (sgn as isize, 0)
                } else {
                    (0, sgn as isize)
                };
                // pole faces carry zero flux
                if dir == 1 {
                    let jj = j as isize + dj;
                    if (jj < 0 && grid.v_pole_lo) || (jj >= grid.n_v as isize && grid.v_pole_hi) {
                        continue;
                    }
                }
                let Some((nb, _)) = grid.offset(i, j, di, dj, Parity::Even) else {
                    continue; // open edge: no face (only hit under Natural bc)
                };
                let (h_n, h_t) = if dir == 0 { (h_u, h_v) } else { (h_v, h_u) };
                let _ = h_t;
                let c_diag = 0.5 * (cf(row, if dir == 0 { 0 } else { 2 }) + cf(nb, if dir == 0 { 0 } else { 2 }));
                let c_cross = 0.5 * (cf(row, 1) + cf(nb, 1));
                let scale = sgn * inv_sg / h_n;
                // diagonal flux: c_diag (f_nb - f_row)/h_n
                if !(bc == LapBc::DirichletOpenEdges && is_edge(grid, nb)) {
                    trip.push((row, nb, scale * c_diag / h_n));
                }
                trip.push((row, row, -scale * c_diag / h_n));
                if c_cross != 0.0 {
                    // cross flux: c_cross * average of transverse derivative
                    // at the two face nodes
                    let tderiv = if dir == 0 { Deriv::V1 } else { Deriv::U1 };
                    for &(node, (ii, jj)) in &[(row, (i, j)), (nb, grid.coords_of(nb))] {
                        let _ = node;
                        let r = stencil::row(grid, tderiv, ii, jj);
                        for &(tdi, tdj, c) in r.terms() {
                            if let Some((idx2, s2)) = grid.offset(ii, jj, tdi, tdj, Parity::Even) {
                                if bc == LapBc::DirichletOpenEdges && is_edge(grid, idx2) {
                                    continue;
                                }
                                trip.push((row, idx2, scale * c_cross * 0.5 * c * s2));
                            }
                        }
                    }
                }
            }
        }
    }
    Csr::from_triplets(n, n, trip)
}

fn is_edge(grid: &Grid, idx: usize) -> bool {
    let (i, j) = grid.coords_of(idx);
    grid.on_open_u_edge(i) || grid.on_open_v_edge(j)
}

/// Pointwise covariant Laplacian of a scalar field.
///
/// Interior nodes use the conservative flux form (identical to
/// [`laplacian_csr`] with natural boundaries); nodes on or next to open edges
/// use the expanded form g^ab dd_ab f + (1/sqrt g) d_a(sqrt g g^ab) d_b f
/// with one-sided stencils.
pub fn covariant_laplacian(m: &MetricField, f: &ScalarField) -> ScalarField {
    let grid = &m.grid;
    assert_eq!(f.data.len(), grid.node_count());
    let n = grid.node_count();

    // conservative part via the assembled operator
    let csr = laplacian_csr(m, LapBc::Natural);
    let mut out = csr.matvec(&f.data);

    // fix up nodes whose flux stencil was truncated by an open edge
    let needs_fallback = |i: usize, j: usize| -> bool {
        for (di, dj) in [(1isize, 0isize), (-1, 0), (0, 1), (0, -1)] {
            if grid.offset(i, j, di, dj, Parity::Even).is_none() {
                return true;
            }
        }
        false
    };
    let any_fallback = (0..n).any(|idx| {
        let (i, j) = grid.coords_of(idx);
        needs_fallback(i, j)
    });
    if any_fallback {
        let fu = stencil::deriv_u(grid, &f.data, Parity::Even);
        let fv = stencil::deriv_v(grid, &f.data, Parity::Even);
        let fuu = stencil::deriv_uu(grid, &f.data, Parity::Even);
        let fvv = stencil::deriv_vv(grid, &f.data, Parity::Even);
        let fuv = stencil::deriv_uv(grid, &f.data, Parity::Even);
        // divergence coefficients d^b = (1/sqrt g) d_a (sqrt g g^{ab})
        let cu: Vec<f64> = (0..n).map(|k| m.sqrt_g[k] * m.g_inv[k][0]).collect();
        let cx: Vec<f64> = (0..n).map(|k| m.sqrt_g[k] * m.g_inv[k][1]).collect();
        let cv: Vec<f64> = (0..n).map(|k| m.sqrt_g[k] * m.g_inv[k][2]).collect();
        let ducu = stencil::deriv_u(grid, &cu, Parity::Even);
        let dvcx = stencil::deriv_v(grid, &cx, Parity::Odd);
        let ducx = stencil::deriv_u(grid, &cx, Parity::Odd);
        let dvcv = stencil::deriv_v(grid, &cv, Parity::Even);
        for idx in 0..n {
            let (i, j) = grid.coords_of(idx);
            if !needs_fallback(i, j) {
                continue;
            }
            let gi = m.g_inv[idx];
            let isg = 1.0 / m.sqrt_g[idx];
            let du_coeff = isg * (ducu[idx] + dvcx[idx]);
            let dv_coeff = isg * (ducx[idx] + dvcv[idx]);
            out[idx] = gi[0] * fuu[idx]
                + 2.0 * gi[1] * fuv[idx]
                + gi[2] * fvv[idx]
                + du_coeff * fu[idx]
                + dv_coeff * fv[idx];
        }
    }
    ScalarField {
        grid: grid.clone(),
        data: out,
    }
}
