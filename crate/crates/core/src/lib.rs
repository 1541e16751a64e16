//! High-order finite-volume solver for the 1-D/2-D compressible Euler and
//! Navier-Stokes equations with adaptive stencil extension and discontinuity
//! feedback (ASE-DF) reconstruction.

pub mod cases;
pub mod diagnostics;
pub mod error;
pub mod flux_lf;
pub mod gks;
pub mod grid;
pub mod operator;
pub mod output;
pub mod quadrature;
pub mod reconstruction;
pub mod runner;
pub mod solver;
pub mod state;
pub mod time;

pub use cases::{CaseConfig, CaseSpec, DtRule, Problem};
pub use error::{Result, SolverError};
pub use grid::{fill_ghosts, Boundary, BoundarySpec, Field, Mesh, GHOST};
pub use operator::{FluxKind, Scheme, SpatialOperator};
pub use reconstruction::SchemeConfig;
pub use runner::{convergence_suite, run_case, timing_harness, CaseRun, ConvergenceRow, RunReport, TimingRow};
pub use solver::{RunStats, Solver};
pub use state::{Conserved, GasModel, Primitive};
