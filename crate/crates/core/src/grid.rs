//! Structured 2D parameter grids.
//!
//! All fields in this crate live on a [`Grid`]: a tensor-product sampling of a
//! rectangle in the (u, v) parameter plane. The topology flag selects how
//! stencils behave at the edges of that rectangle:
//!
//! * `OpenPatch` — both directions open; one-sided stencils at all edges.
//! * `PeriodicU` — u wraps (angle-like), v open. With v staggering and pole
//!   closure flags this also models closed surfaces of revolution (sphere).
//! * `PeriodicBoth` — torus-like wrap in both directions.
//! * `DiskPolar` — u is the angle (periodic), v the radius, sampled at cell
//!   centers v_j = (j + 1/2) h_v so the coordinate singularity r = 0 carries
//!   no node. Stencils reaching past the apex use the pass-through-origin
//!   identification (r, u) ~ (-r, u + pi), which requires an even `n_u`.
//!
//! Node storage is u-fastest: `index = j * n_u + i`.

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

/// Edge behaviour of the parameter rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Topology {
    OpenPatch,
    PeriodicU,
    PeriodicBoth,
    DiskPolar,
}

/// Parity of a sampled quantity under the pass-through-origin map
/// (r, u) -> (-r, u + pi). Scalars and Cartesian components of R^3-valued
/// fields are even; the radial (dv) component of a one-form is odd, the
/// angular (du) component even.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// A structured grid on a 2D parameter rectangle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub n_u: usize,
    pub n_v: usize,
    pub u_range: (f64, f64),
    pub v_range: (f64, f64),
    pub topology: Topology,
    /// v nodes sit at cell centers (j + 1/2) h_v instead of j h_v.
    pub v_staggered: bool,
    /// Pass-through-origin closure at the lower v edge (apex / pole).
    pub v_pole_lo: bool,
    /// Pass-through-origin closure at the upper v edge (second pole).
    pub v_pole_hi: bool,
}

impl Grid {
    fn validate(self) -> Result<Self> {
        if self.n_u < 3 || self.n_v < 3 {
            return Err(CoreError::InvalidGrid(format!(
                "need at least 3 nodes per direction, got {} x {}",
                self.n_u, self.n_v
            )));
        }
        if self.h_u() <= 0.0 || self.h_v() <= 0.0 {
            return Err(CoreError::InvalidGrid("node spacing must be positive".into()));
        }
        if (self.v_pole_lo || self.v_pole_hi) && self.n_u % 2 != 0 {
            return Err(CoreError::InvalidGrid(
                "pole pass-through requires an even angular node count".into(),
            ));
        }
        Ok(self)
    }

    /// Open rectangle, endpoints included in both directions.
    pub fn open_patch(n_u: usize, n_v: usize, u_range: (f64, f64), v_range: (f64, f64)) -> Result<Self> {
        Grid {
            n_u,
            n_v,
            u_range,
            v_range,
            topology: Topology::OpenPatch,
            v_staggered: false,
            v_pole_lo: false,
            v_pole_hi: false,
        }
        .validate()
    }

    /// u periodic (endpoint excluded), v open with endpoints included.
    pub fn periodic_u(n_u: usize, n_v: usize, u_range: (f64, f64), v_range: (f64, f64)) -> Result<Self> {
        Grid {
            n_u,
            n_v,
            u_range,
            v_range,
            topology: Topology::PeriodicU,
            v_staggered: false,
            v_pole_lo: false,
            v_pole_hi: false,
        }
        .validate()
    }

    /// Periodic in both directions (flat torus parameter domain).
    pub fn periodic_both(n_u: usize, n_v: usize, u_range: (f64, f64), v_range: (f64, f64)) -> Result<Self> {
        Grid {
            n_u,
            n_v,
            u_range,
            v_range,
            topology: Topology::PeriodicBoth,
            v_staggered: false,
            v_pole_lo: false,
            v_pole_hi: false,
        }
        .validate()
    }

    /// Polar disk of the given radius: u = angle in [0, 2pi), v = radius
    /// sampled at cell centers in (0, radius). The apex r = 0 is excised.
    pub fn disk_polar(n_u: usize, n_v: usize, radius: f64) -> Result<Self> {
        Grid {
            n_u,
            n_v,
            u_range: (0.0, std::f64::consts::TAU),
            v_range: (0.0, radius),
            topology: Topology::DiskPolar,
            v_staggered: true,
            v_pole_lo: true,
            v_pole_hi: false,
        }
        .validate()
    }

    /// Closed surface of revolution: u = azimuth in [0, 2pi), v in (v0, v1)
    /// cell-centered with pole closure at both ends. Used for whole spheres.
    pub fn closed_revolution(n_u: usize, n_v: usize, v_range: (f64, f64)) -> Result<Self> {
        Grid {
            n_u,
            n_v,
            u_range: (0.0, std::f64::consts::TAU),
            v_range,
            topology: Topology::PeriodicU,
            v_staggered: true,
            v_pole_lo: true,
            v_pole_hi: true,
        }
        .validate()
    }

    pub fn node_count(&self) -> usize {
        self.n_u * self.n_v
    }

    pub fn u_periodic(&self) -> bool {
        matches!(
            self.topology,
            Topology::PeriodicU | Topology::PeriodicBoth | Topology::DiskPolar
        )
    }

    pub fn v_periodic(&self) -> bool {
        self.topology == Topology::PeriodicBoth
    }

    pub fn h_u(&self) -> f64 {
        let len = self.u_range.1 - self.u_range.0;
        if self.u_periodic() {
            len / self.n_u as f64
        } else {
            len / (self.n_u - 1) as f64
        }
    }

    pub fn h_v(&self) -> f64 {
        let len = self.v_range.1 - self.v_range.0;
        if self.v_periodic() || self.v_staggered {
            len / self.n_v as f64
        } else {
            len / (self.n_v - 1) as f64
        }
    }

    pub fn u_coord(&self, i: usize) -> f64 {
        self.u_range.0 + i as f64 * self.h_u()
    }

    pub fn v_coord(&self, j: usize) -> f64 {
        let off = if self.v_staggered { 0.5 } else { 0.0 };
        self.v_range.0 + (j as f64 + off) * self.h_v()
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.n_u + i
    }

    #[inline]
    pub fn coords_of(&self, idx: usize) -> (usize, usize) {
        (idx % self.n_u, idx / self.n_u)
    }

    /// Resolve a stencil offset (possibly out of range) to a node index and a
    /// parity sign. Returns `None` when the offset falls off an open edge.
    pub fn offset(&self, i: usize, j: usize, di: isize, dj: isize, parity: Parity) -> Option<(usize, f64)> {
        let n_u = self.n_u as isize;
        let n_v = self.n_v as isize;
        let mut ii = i as isize + di;
        let mut jj = j as isize + dj;
        let mut sign = 1.0;

        if self.u_periodic() {
            ii = ii.rem_euclid(n_u);
        } else if ii < 0 || ii >= n_u {
            return None;
        }

        // Pole pass-through: reflect in v, advance u by half a turn.
        if jj < 0 {
            if self.v_pole_lo {
                jj = -jj - 1; // staggered: v_{-1-k} = -(k+1/2) h  ->  (k+1/2) h
                ii = (ii + n_u / 2).rem_euclid(n_u);
                if parity == Parity::Odd {
                    sign = -sign;
                }
            } else if self.v_periodic() {
                jj = jj.rem_euclid(n_v);
            } else {
                return None;
            }
        } else if jj >= n_v {
            if self.v_pole_hi {
                jj = 2 * n_v - jj - 1;
                ii = (ii + n_u / 2).rem_euclid(n_u);
                if parity == Parity::Odd {
                    sign = -sign;
                }
            } else if self.v_periodic() {
                jj = jj.rem_euclid(n_v);
            } else {
                return None;
            }
        }
        if jj < 0 || jj >= n_v {
            // A second fold would be required; stencils never reach that far.
            return None;
        }
        Some((self.index(ii as usize, jj as usize), sign))
    }

    /// True if node (i, j) lies on an open u edge.
    pub fn on_open_u_edge(&self, i: usize) -> bool {
        !self.u_periodic() && (i == 0 || i == self.n_u - 1)
    }

    /// True if node (i, j) lies on an open v edge (no wrap, no pole closure).
    pub fn on_open_v_edge(&self, j: usize) -> bool {
        if self.v_periodic() {
            return false;
        }
        (j == 0 && !self.v_pole_lo) || (j == self.n_v - 1 && !self.v_pole_hi)
    }

    /// Interior nodes: centered stencils valid in both directions.
    pub fn is_interior(&self, i: usize, j: usize) -> bool {
        !self.on_open_u_edge(i) && !self.on_open_v_edge(j)
    }

    /// Quadrature weight of node (i, j) for integrals over the parameter
    /// rectangle: h_u h_v, halved on open edges (trapezoid rule).
    pub fn quad_weight(&self, i: usize, j: usize) -> f64 {
        let mut w = self.h_u() * self.h_v();
        if self.on_open_u_edge(i) {
            w *= 0.5;
        }
        if self.on_open_v_edge(j) {
            w *= 0.5;
        }
        w
    }

    /// All quadrature weights, node-major.
    pub fn quad_weights(&self) -> Vec<f64> {
        let mut w = Vec::with_capacity(self.node_count());
        for j in 0..self.n_v {
            for i in 0..self.n_u {
                w.push(self.quad_weight(i, j));
            }
        }
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn open_patch_coords_include_endpoints() {
        let g = Grid::open_patch(5, 4, (0.0, 1.0), (2.0, 3.0)).unwrap();
        assert_eq!(g.u_coord(0), 0.0);
        assert_eq!(g.u_coord(4), 1.0);
        assert_eq!(g.v_coord(0), 2.0);
        assert!((g.v_coord(3) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn disk_polar_excises_apex() {
        let g = Grid::disk_polar(8, 4, 1.0).unwrap();
        assert!(g.v_coord(0) > 0.0);
        assert!((g.v_coord(0) - 0.125).abs() < 1e-15);
        // pass-through: (i=0, j=-1) folds to (i=n_u/2, j=0)
        let (idx, s) = g.offset(0, 0, 0, -1, Parity::Even).unwrap();
        assert_eq!(idx, g.index(4, 0));
        assert_eq!(s, 1.0);
        let (_, s) = g.offset(0, 0, 0, -1, Parity::Odd).unwrap();
        assert_eq!(s, -1.0);
    }

    #[test]
    fn periodic_wrap() {
        let g = Grid::periodic_both(6, 5, (0.0, 1.0), (0.0, 1.0)).unwrap();
        let (idx, s) = g.offset(5, 4, 1, 1, Parity::Even).unwrap();
        assert_eq!(idx, g.index(0, 0));
        assert_eq!(s, 1.0);
    }

    #[test]
    fn odd_angular_count_rejected_for_poles() {
        assert!(Grid::disk_polar(7, 4, 1.0).is_err());
    }
}
