//! Node-major field containers.

use nalgebra::Vector3;

use crate::error::{CoreError, Result};
use crate::grid::Grid;

/// A scalar sampled at every grid node.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    pub grid: Grid,
    pub data: Vec<f64>,
}

impl ScalarField {
    pub fn zeros(grid: &Grid) -> Self {
        ScalarField {
            grid: grid.clone(),
            data: vec![0.0; grid.node_count()],
        }
    }

    pub fn from_fn(grid: &Grid, mut f: impl FnMut(f64, f64) -> f64) -> Self {
        let mut data = Vec::with_capacity(grid.node_count());
        for j in 0..grid.n_v {
            for i in 0..grid.n_u {
                data.push(f(grid.u_coord(i), grid.v_coord(j)));
            }
        }
        ScalarField {
            grid: grid.clone(),
            data,
        }
    }

    pub fn from_vec(grid: &Grid, data: Vec<f64>) -> Result<Self> {
        if data.len() != grid.node_count() {
            return Err(CoreError::ShapeMismatch {
                context: "scalar field",
                expected: grid.node_count(),
                got: data.len(),
            });
        }
        Ok(ScalarField {
            grid: grid.clone(),
            data,
        })
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.data[self.grid.index(i, j)]
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }
}

/// An R^3 vector sampled at every grid node (Cartesian components).
#[derive(Debug, Clone, PartialEq)]
pub struct Vec3Field {
    pub grid: Grid,
    pub data: Vec<Vector3<f64>>,
}

impl Vec3Field {
    pub fn zeros(grid: &Grid) -> Self {
        Vec3Field {
            grid: grid.clone(),
            data: vec![Vector3::zeros(); grid.node_count()],
        }
    }

    pub fn from_fn(grid: &Grid, mut f: impl FnMut(f64, f64) -> Vector3<f64>) -> Self {
        let mut data = Vec::with_capacity(grid.node_count());
        for j in 0..grid.n_v {
            for i in 0..grid.n_u {
                data.push(f(grid.u_coord(i), grid.v_coord(j)));
            }
        }
        Vec3Field {
            grid: grid.clone(),
            data,
        }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Vector3<f64> {
        self.data[self.grid.index(i, j)]
    }

    /// One Cartesian component as a scalar field.
    pub fn component(&self, k: usize) -> ScalarField {
        ScalarField {
            grid: self.grid.clone(),
            data: self.data.iter().map(|v| v[k]).collect(),
        }
    }
}

/// A symmetric 2x2 tensor (uu, uv, vv) sampled at every grid node.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTensorField {
    pub grid: Grid,
    /// Components ordered [t_uu, t_uv, t_vv].
    pub data: Vec<[f64; 3]>,
}

impl SymTensorField {
    pub fn zeros(grid: &Grid) -> Self {
        SymTensorField {
            grid: grid.clone(),
            data: vec![[0.0; 3]; grid.node_count()],
        }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> [f64; 3] {
        self.data[self.grid.index(i, j)]
    }

    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .flat_map(|t| t.iter())
            .fold(0.0_f64, |m, x| m.max(x.abs()))
    }
}

/// Symmetric 2x2 matrix helpers on the [uu, uv, vv] layout.
pub mod sym2 {
    /// Determinant.
    #[inline]
    pub fn det(t: &[f64; 3]) -> f64 {
        t[0] * t[2] - t[1] * t[1]
    }

    /// Inverse; caller checks the determinant.
    #[inline]
    pub fn inv(t: &[f64; 3]) -> [f64; 3] {
        let d = det(t);
        [t[2] / d, -t[1] / d, t[0] / d]
    }

    /// Trace of g^{-1} t for a metric inverse `gi` and tensor `t`:
    /// g^{ab} t_ab.
    #[inline]
    pub fn trace_with(gi: &[f64; 3], t: &[f64; 3]) -> f64 {
        gi[0] * t[0] + 2.0 * gi[1] * t[1] + gi[2] * t[2]
    }

    /// Full contraction t^a_b t^b_a with indices raised by `gi`.
    #[inline]
    pub fn contract_sq(gi: &[f64; 3], t: &[f64; 3]) -> f64 {
        // mixed tensor m = gi * t (2x2, generally non-symmetric storage)
        let m00 = gi[0] * t[0] + gi[1] * t[1];
        let m01 = gi[0] * t[1] + gi[1] * t[2];
        let m10 = gi[1] * t[0] + gi[2] * t[1];
        let m11 = gi[1] * t[1] + gi[2] * t[2];
        m00 * m00 + 2.0 * m01 * m10 + m11 * m11
    }

    /// Raise both indices: t^{ab} = g^{ac} g^{bd} t_cd.
    #[inline]
    pub fn raise(gi: &[f64; 3], t: &[f64; 3]) -> [f64; 3] {
        let m00 = gi[0] * t[0] + gi[1] * t[1];
        let m01 = gi[0] * t[1] + gi[1] * t[2];
        let m10 = gi[1] * t[0] + gi[2] * t[1];
        let m11 = gi[1] * t[1] + gi[2] * t[2];
        [
            m00 * gi[0] + m01 * gi[1],
            m00 * gi[1] + m01 * gi[2],
            m10 * gi[1] + m11 * gi[2],
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;

    #[test]
    fn sym2_roundtrip() {
        let g = [2.0, 0.3, 1.5];
        let gi = sym2::inv(&g);
        let id = [
            g[0] * gi[0] + g[1] * gi[1],
            g[0] * gi[1] + g[1] * gi[2],
            g[1] * gi[1] + g[2] * gi[2],
        ];
        assert!((id[0] - 1.0).abs() < 1e-14);
        assert!(id[1].abs() < 1e-14);
        assert!((id[2] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn from_fn_layout() {
        let grid = Grid::open_patch(3, 3, (0.0, 1.0), (0.0, 1.0)).unwrap();
        let f = ScalarField::from_fn(&grid, |u, v| u + 10.0 * v);
        assert_eq!(f.at(2, 0), 1.0);
        assert_eq!(f.at(0, 2), 10.0);
    }
}
