//! Levi-Civita connection from discrete metric derivatives.

use super::{Connection, MetricField};
use crate::grid::Parity;
use crate::stencil;

/// Gamma^b_ac = 1/2 g^bd (d_a g_dc + d_c g_ad - d_d g_ac).
///
/// Metric derivatives use the same stencils as every other operator. Across
/// a pole fold the component parities are (g_uu, g_uv, g_vv) = (+, -, +).
pub fn christoffel(m: &MetricField) -> Connection {
    let grid = &m.grid;
    let n = grid.node_count();
    let comps: Vec<Vec<f64>> = (0..3).map(|k| m.g.iter().map(|t| t[k]).collect()).collect();
    let parities = [Parity::Even, Parity::Odd, Parity::Even];
    // dg[a][k]: d_a g_k with k over (uu, uv, vv)
    let mut dg = [[const { Vec::new() }; 3], [const { Vec::new() }; 3]];
    for k in 0..3 {
        dg[0][k] = stencil::deriv_u(grid, &comps[k], parities[k]);
        dg[1][k] = stencil::deriv_v(grid, &comps[k], parities[k]);
    }
    // d_a g_bc accessor: symmetric pair (b, c) -> component index b + c
    let d = |a: usize, b: usize, c: usize, idx: usize| dg[a][b + c][idx];

    let mut gamma = vec![[[0.0; 3]; 2]; n];
    for idx in 0..n {
        let gi = m.g_inv[idx];
        // lower-index symbol gamma_{d,ac} = 1/2 (d_a g_dc + d_c g_ad - d_d g_ac)
        let mut low = [[0.0; 3]; 2]; // [d][a+c]
        for dn in 0..2 {
            for a in 0..2 {
                for c in a..2 {
                    low[dn][a + c] =
                        0.5 * (d(a, dn, c, idx) + d(c, a, dn, idx) - d(dn, a, c, idx));
                }
            }
        }
        for b in 0..2 {
            for s in 0..3 {
                // g^{b d} low[d][s]
                let gbu = if b == 0 { gi[0] } else { gi[1] };
                let gbv = if b == 0 { gi[1] } else { gi[2] };
                gamma[idx][b][s] = gbu * low[0][s] + gbv * low[1][s];
            }
        }
    }
    Connection {
        grid: grid.clone(),
        gamma,
    }
}
