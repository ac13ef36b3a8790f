//! Covariant Hessian components as sparse operators.

use super::{Connection, MetricField};
use crate::sparse::Csr;
use crate::stencil::{self, Deriv};

/// The three components of D_a D_b acting on scalars, assembled as sparse
/// matrices: H_ab f = dd_ab f - Gamma^c_ab d_c f.
#[derive(Debug, Clone)]
pub struct CovariantHessian {
    pub huu: Csr,
    pub huv: Csr,
    pub hvv: Csr,
}

impl CovariantHessian {
    /// Apply all three components at once.
    pub fn apply(&self, f: &[f64]) -> [Vec<f64>; 3] {
        [self.huu.matvec(f), self.huv.matvec(f), self.hvv.matvec(f)]
    }
}

/// Assemble the covariant Hessian operators on the metric's grid.
pub fn hessian_csr(m: &MetricField, conn: &Connection) -> CovariantHessian {
    let grid = &m.grid;
    let n = grid.node_count();
    let du = stencil::to_csr(grid, Deriv::U1);
    let dv = stencil::to_csr(grid, Deriv::V1);
    let duu = stencil::to_csr(grid, Deriv::U2);
    let dvv = stencil::to_csr(grid, Deriv::V2);
    let duv = du.matmul(&dv);

    let gamma = |b: usize, s: usize| -> Vec<f64> { (0..n).map(|k| conn.gamma[k][b][s]).collect() };

    let build = |second: &Csr, s: usize| -> Csr {
        let gu: Vec<f64> = gamma(0, s).iter().map(|x| -x).collect();
        let gv: Vec<f64> = gamma(1, s).iter().map(|x| -x).collect();
        second
            .add_scaled(1.0, &du.scaled_rows(&gu))
            .add_scaled(1.0, &dv.scaled_rows(&gv))
    };

    CovariantHessian {
        huu: build(&duu, 0),
        huv: build(&duv, 1),
        hvv: build(&dvv, 2),
    }
}
