//! Second-order finite-difference stencils, topology aware.
//!
//! Each derivative is described per node as a short list of
//! (offset, coefficient) terms: centered differences wherever a neighbor
//! exists (periodic wrap and pole pass-through count as neighbors),
//! one-sided O(h^2) forms at open edges. The same rows drive both direct
//! field application and sparse-matrix assembly, so the two never diverge.
//! Mixed derivatives compose the two 1D passes, which drops to O(h) only at
//! open corners.

use crate::grid::{Grid, Parity};
use crate::sparse::Csr;

/// One stencil row: up to four (di, dj, coeff) terms.
#[derive(Debug, Clone, Copy)]
pub struct Row {
    terms: [(isize, isize, f64); 4],
    len: usize,
}

impl Row {
    fn new(terms: &[(isize, isize, f64)]) -> Row {
        let mut t = [(0, 0, 0.0); 4];
        t[..terms.len()].copy_from_slice(terms);
        Row {
            terms: t,
            len: terms.len(),
        }
    }

    pub fn terms(&self) -> &[(isize, isize, f64)] {
        &self.terms[..self.len]
    }
}

/// Which 1D derivative a row encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Deriv {
    U1,
    V1,
    U2,
    V2,
}

/// Stencil row for the given derivative at node (i, j).
pub fn row(grid: &Grid, d: Deriv, i: usize, j: usize) -> Row {
    let (h, along_u, second) = match d {
        Deriv::U1 => (grid.h_u(), true, false),
        Deriv::V1 => (grid.h_v(), false, false),
        Deriv::U2 => (grid.h_u(), true, true),
        Deriv::V2 => (grid.h_v(), false, true),
    };
    let step = |k: isize| -> (isize, isize) {
        if along_u {
            (k, 0)
        } else {
            (0, k)
        }
    };
    let exists = |k: isize| {
        let (di, dj) = step(k);
        grid.offset(i, j, di, dj, Parity::Even).is_some()
    };
    let has_minus = exists(-1);
    let has_plus = exists(1);
    let t = |k: isize, c: f64| {
        let (di, dj) = step(k);
        (di, dj, c)
    };
    if !second {
        let s = 2.0 * h;
        match (has_minus, has_plus) {
            (true, true) => Row::new(&[t(-1, -1.0 / s), t(1, 1.0 / s)]),
            (false, true) => Row::new(&[t(0, -3.0 / s), t(1, 4.0 / s), t(2, -1.0 / s)]),
            (true, false) => Row::new(&[t(0, 3.0 / s), t(-1, -4.0 / s), t(-2, 1.0 / s)]),
            (false, false) => unreachable!("grid has at least 3 nodes"),
        }
    } else {
        let h2 = h * h;
        match (has_minus, has_plus) {
            (true, true) => Row::new(&[t(-1, 1.0 / h2), t(0, -2.0 / h2), t(1, 1.0 / h2)]),
            (false, true) => Row::new(&[
                t(0, 2.0 / h2),
                t(1, -5.0 / h2),
                t(2, 4.0 / h2),
                t(3, -1.0 / h2),
            ]),
            (true, false) => Row::new(&[
                t(0, 2.0 / h2),
                t(-1, -5.0 / h2),
                t(-2, 4.0 / h2),
                t(-3, -1.0 / h2),
            ]),
            (false, false) => unreachable!(),
        }
    }
}

/// Apply one derivative to a whole field.
pub fn apply(grid: &Grid, d: Deriv, data: &[f64], parity: Parity) -> Vec<f64> {
    assert_eq!(data.len(), grid.node_count());
    let mut out = Vec::with_capacity(data.len());
    for j in 0..grid.n_v {
        for i in 0..grid.n_u {
            let r = row(grid, d, i, j);
            let mut acc = 0.0;
            for &(di, dj, c) in r.terms() {
                let (idx, s) = grid
                    .offset(i, j, di, dj, parity)
                    .expect("stencil term must resolve");
                acc += c * s * data[idx];
            }
            out.push(acc);
        }
    }
    out
}

/// Assemble one derivative as a sparse matrix (even parity).
pub fn to_csr(grid: &Grid, d: Deriv) -> Csr {
    let n = grid.node_count();
    let mut trip = Vec::with_capacity(4 * n);
    for j in 0..grid.n_v {
        for i in 0..grid.n_u {
            let r = row(grid, d, i, j);
            let node = grid.index(i, j);
            for &(di, dj, c) in r.terms() {
                let (idx, s) = grid.offset(i, j, di, dj, Parity::Even).unwrap();
                trip.push((node, idx, c * s));
            }
        }
    }
    Csr::from_triplets(n, n, trip)
}

pub fn deriv_u(grid: &Grid, data: &[f64], parity: Parity) -> Vec<f64> {
    apply(grid, Deriv::U1, data, parity)
}

pub fn deriv_v(grid: &Grid, data: &[f64], parity: Parity) -> Vec<f64> {
    apply(grid, Deriv::V1, data, parity)
}

pub fn deriv_uu(grid: &Grid, data: &[f64], parity: Parity) -> Vec<f64> {
    apply(grid, Deriv::U2, data, parity)
}

pub fn deriv_vv(grid: &Grid, data: &[f64], parity: Parity) -> Vec<f64> {
    apply(grid, Deriv::V2, data, parity)
}

/// Mixed second derivative d^2/(du dv), composition of the 1D passes.
pub fn deriv_uv(grid: &Grid, data: &[f64], parity: Parity) -> Vec<f64> {
    let dv = deriv_v(grid, data, parity);
    deriv_u(grid, &dv, parity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;

    fn sample(grid: &Grid, f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
        (0..grid.node_count())
            .map(|idx| {
                let (i, j) = grid.coords_of(idx);
                f(grid.u_coord(i), grid.v_coord(j))
            })
            .collect()
    }

    #[test]
    fn quadratic_derivatives_exact() {
        let grid = Grid::open_patch(9, 9, (0.0, 1.0), (0.0, 1.0)).unwrap();
        let f = sample(&grid, |u, v| u * u + 3.0 * u * v + 2.0 * v * v);
        let fu = deriv_u(&grid, &f, Parity::Even);
        let fvv = deriv_vv(&grid, &f, Parity::Even);
        let fuv = deriv_uv(&grid, &f, Parity::Even);
        for idx in 0..grid.node_count() {
            let (i, j) = grid.coords_of(idx);
            let (u, v) = (grid.u_coord(i), grid.v_coord(j));
            assert!((fu[idx] - (2.0 * u + 3.0 * v)).abs() < 1e-11);
            assert!((fvv[idx] - 4.0).abs() < 1e-10);
            assert!((fuv[idx] - 3.0).abs() < 1e-10);
        }
    }

    #[test]
    fn csr_agrees_with_apply() {
        let grid = Grid::disk_polar(8, 7, 1.0).unwrap();
        let f = sample(&grid, |u, v| (v * v) * (1.0 + 0.3 * u.cos()));
        for d in [Deriv::U1, Deriv::V1, Deriv::U2, Deriv::V2] {
            let a = apply(&grid, d, &f, Parity::Even);
            let m = to_csr(&grid, d);
            let b = m.matvec(&f);
            for k in 0..f.len() {
                assert!((a[k] - b[k]).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn periodic_trig_second_order() {
        let tau = std::f64::consts::TAU;
        let mut errs = Vec::new();
        for n in [16, 32] {
            let grid = Grid::periodic_both(n, n, (0.0, tau), (0.0, tau)).unwrap();
            let f = sample(&grid, |u, v| u.sin() * v.cos());
            let fu = deriv_u(&grid, &f, Parity::Even);
            let mut err = 0.0_f64;
            for idx in 0..grid.node_count() {
                let (i, j) = grid.coords_of(idx);
                let exact = grid.u_coord(i).cos() * grid.v_coord(j).cos();
                err = err.max((fu[idx] - exact).abs());
            }
            errs.push(err);
        }
        let ratio = errs[0] / errs[1];
        assert!(ratio > 3.5 && ratio < 4.5, "ratio {ratio}");
    }

    #[test]
    fn pole_pass_through_smooth_function() {
        // f = r^2 is smooth through the apex; d/dv at the first ring is 2r
        // exactly for the centered stencil.
        let grid = Grid::disk_polar(16, 24, 1.0).unwrap();
        let f = sample(&grid, |_, v| v * v);
        let fv = deriv_v(&grid, &f, Parity::Even);
        for i in 0..grid.n_u {
            let idx = grid.index(i, 0);
            assert!((fv[idx] - 2.0 * grid.v_coord(0)).abs() < 1e-12);
        }
    }
}
