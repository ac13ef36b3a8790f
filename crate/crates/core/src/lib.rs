//! Gauge-theoretic disclination mechanics on parametric elastic surfaces.
//!
//! The crate models rotational defects (disclinations) on deformable 2D
//! surfaces embedded in R^3 through an SO(3) gauge field coupled to the
//! elastic strain, a Yang-Mills self-energy for the defects, and a
//! Helfrich-Canham bending energy. It provides:
//!
//! * discrete differential geometry on structured parameter grids
//!   ([`geometry`]),
//! * the gauge sector: field strength, vortex potentials, defect densities
//!   and defect-deformed reference metrics ([`gauge`]),
//! * gauged elasticity: strains, stresses and elastic energy ([`elastic`]),
//! * a flat-membrane solver recovering the von Karman equations with a
//!   disclination source ([`vonkarman`]),
//! * the covariant single-disclination system on curved backgrounds
//!   ([`covariant`]),
//! * full nonlinear energy minimization over embeddings ([`minimizer`]).

pub mod covariant;
pub mod elastic;
pub mod error;
pub mod field;
pub mod gauge;
pub mod geometry;
pub mod grid;
pub mod io;
pub mod iterative;
pub mod lbfgs;
pub mod minimizer;
pub mod modal;
pub mod sparse;
pub mod stencil;
pub mod vonkarman;

pub use elastic::MaterialParams;
pub use error::{CoreError, Result};
pub use field::{ScalarField, SymTensorField, Vec3Field};
pub use gauge::{DisclinationSpec, FieldStrength, GaugeField};
pub use geometry::{Connection, CurvatureData, Embedding, MetricField};
pub use grid::{Grid, Topology};
