//! Covariant Green functions: discrete solves of
//! D_a D^a G = 2 pi delta^2(x, y) / sqrt(g).

use super::{laplacian_csr, LapBc, MetricField};
use crate::error::Result;
use crate::field::ScalarField;
use crate::grid::Grid;
use crate::iterative::{cg, IterOpts, IterReport};
use crate::sparse::Csr;

/// Where the unit of 2 pi source flux is deposited.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GreenSource {
    /// A single grid node.
    Node(usize, usize),
    /// The excised lower-v apex (disk center, north pole): the load is
    /// distributed uniformly over the first node ring, which is equivalent
    /// to a point charge at the apex outside the first cell.
    PoleLo,
    /// The excised upper-v apex (south pole).
    PoleHi,
}

/// Charge compensation on closed surfaces, where the bare point source has
/// no solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Neutralization {
    /// No compensation (open patches with Dirichlet boundary).
    None,
    /// Uniform background density -2 pi / Area.
    Uniform,
    /// Point sink of equal strength at another location.
    Sink(GreenSource),
}

#[derive(Debug, Clone)]
pub struct GreenOpts {
    pub neutralization: Neutralization,
    pub iter: IterOpts,
}

impl GreenOpts {
    /// Defaults appropriate for the grid: Dirichlet + no compensation on
    /// grids with an open edge, uniform background on closed grids.
    pub fn for_grid(grid: &Grid) -> GreenOpts {
        let closed = grid_is_closed(grid);
        GreenOpts {
            neutralization: if closed {
                Neutralization::Uniform
            } else {
                Neutralization::None
            },
            iter: IterOpts::default(),
        }
    }
}

pub(crate) fn grid_is_closed(grid: &Grid) -> bool {
    let u_closed = grid.u_periodic();
    let v_closed = grid.v_periodic() || (grid.v_pole_lo && grid.v_pole_hi);
    u_closed && v_closed
}

/// Deposit total flux `strength` into the rhs density field (units of the
/// equation right-hand side, i.e. flux / (sqrt g h_u h_v) at each carrier).
fn deposit(grid: &Grid, m: &MetricField, rhs: &mut [f64], src: GreenSource, strength: f64) {
    let mut put = |i: usize, j: usize, amount: f64| {
        let idx = grid.index(i, j);
        rhs[idx] += amount / (m.sqrt_g[idx] * grid.quad_weight(i, j));
    };
    match src {
        GreenSource::Node(i, j) => put(i, j, strength),
        GreenSource::PoleLo => {
            for i in 0..grid.n_u {
                put(i, 0, strength / grid.n_u as f64);
            }
        }
        GreenSource::PoleHi => {
            for i in 0..grid.n_u {
                put(i, grid.n_v - 1, strength / grid.n_u as f64);
            }
        }
    }
}

/// Solve the covariant Poisson problem for a unit 2 pi point source.
///
/// Open grids get homogeneous Dirichlet edges; closed grids require a
/// neutralization and the result is gauged to zero sqrt(g)-weighted mean in
/// all cases.
pub fn covariant_green_function(
    m: &MetricField,
    source: GreenSource,
    opts: &GreenOpts,
) -> Result<(ScalarField, IterReport)> {
    let grid = &m.grid;
    let n = grid.node_count();
    let closed = grid_is_closed(grid);

    let mut rhs_density = vec![0.0; n];
    deposit(grid, m, &mut rhs_density, source, std::f64::consts::TAU);
    match opts.neutralization {
        Neutralization::None => {}
        Neutralization::Uniform => {
            let area = m.area();
            for x in rhs_density.iter_mut() {
                *x -= std::f64::consts::TAU / area;
            }
        }
        Neutralization::Sink(s) => {
            deposit(grid, m, &mut rhs_density, s, -std::f64::consts::TAU);
        }
    }

    let bc = if closed {
        LapBc::Natural
    } else {
        LapBc::DirichletOpenEdges
    };
    let lap = laplacian_csr(m, bc);

    // weighted, sign-flipped system: A = -W lap (positive semidefinite),
    // b = -W rhs, with W = diag(quad weight * sqrt g); Dirichlet rows keep
    // their unit diagonal.
    let w: Vec<f64> = {
        let qw = grid.quad_weights();
        (0..n).map(|k| qw[k] * m.sqrt_g[k]).collect()
    };
    let mut trip = Vec::with_capacity(lap.values.len());
    for r in 0..n {
        let edge = {
            let (i, j) = grid.coords_of(r);
            !closed && (grid.on_open_u_edge(i) || grid.on_open_v_edge(j))
        };
        for k in lap.row_ptr[r]..lap.row_ptr[r + 1] {
            let c = lap.col_idx[k];
            let v = lap.values[k];
            if edge {
                trip.push((r, c, v)); // identity row
            } else {
                trip.push((r, c, -w[r] * v));
            }
        }
    }
    let a = Csr::from_triplets(n, n, trip);
    let b: Vec<f64> = (0..n)
        .map(|r| {
            let (i, j) = grid.coords_of(r);
            if !closed && (grid.on_open_u_edge(i) || grid.on_open_v_edge(j)) {
                0.0
            } else {
                -w[r] * rhs_density[r]
            }
        })
        .collect();

    let mut diag = a.diagonal();
    for d in diag.iter_mut() {
        if *d == 0.0 {
            *d = 1.0;
        }
    }
    let ones = vec![1.0; n];
    let (mut x, rep) = cg(
        |v, out| a.matvec_into(v, out),
        &diag,
        &b,
        if closed { Some(&ones) } else { None },
        &opts.iter,
    )?;

    // zero sqrt(g)-weighted mean gauge
    let wsum: f64 = w.iter().sum();
    let mean: f64 = x.iter().zip(&w).map(|(xi, wi)| xi * wi).sum::<f64>() / wsum;
    for xi in x.iter_mut() {
        *xi -= mean;
    }
    Ok((
        ScalarField {
            grid: grid.clone(),
            data: x,
        },
        rep,
    ))
}
