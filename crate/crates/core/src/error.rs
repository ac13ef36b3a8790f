//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by geometry, gauge and solver operations.
#[derive(Debug, Error)]
pub enum CoreError {
    /// The induced or supplied metric stopped being positive definite.
    #[error("degenerate metric at node ({i}, {j}): det g = {det:.6e}")]
    DegenerateMetric { i: usize, j: usize, det: f64 },

    /// Surface normal undefined because the tangent vectors are parallel.
    #[error("degenerate normal at node ({i}, {j}): |t_u x t_v| = {norm:.6e}")]
    DegenerateNormal { i: usize, j: usize, norm: f64 },

    /// Two fields that must share a grid do not.
    #[error("shape mismatch: {context} (expected {expected} nodes, got {got})")]
    ShapeMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    /// An iterative solver ran out of iterations.
    #[error("{solver} did not converge: residual {residual:.6e} after {iterations} iterations (tol {tol:.6e})")]
    SolverDidNotConverge {
        solver: &'static str,
        residual: f64,
        iterations: usize,
        tol: f64,
    },

    /// A direct factorization hit a zero pivot.
    #[error("singular system in {context} (pivot {pivot:.6e} at row {row})")]
    SingularSystem {
        context: &'static str,
        pivot: f64,
        row: usize,
    },

    /// Operation defined only for abelian (z-only) gauge fields.
    #[error("gauge field is not abelian: max in-plane component {max_inplane:.6e}")]
    NonAbelianGauge { max_inplane: f64 },

    /// Division by zero in a closed-form parameter expression.
    #[error("invalid material parameters: {0}")]
    InvalidParams(String),

    /// Grid constructor preconditions violated.
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
