//! Spatial discretization of the coupled operator, the elliptic constraint
//! solver, and the analytic spectrum of the uncontrolled system.

mod grid;
mod operators;
mod params;
mod spectral;

pub use grid::{Grid, MIN_INTERVALS};
pub use operators::{
    boundary_injection, check_discrete_shift, neumann_eigenvalue, neumann_laplacian,
    CoupledState, DiscreteOperators, ELLIPTIC_RESIDUAL_TOL,
};
pub use params::{check_admissible, SystemParams, RESONANCE_TOL};
pub use spectral::{
    eigenvalue_analytic, is_open_loop_stable, rayleigh_check, Stability, StabilityReport,
};
