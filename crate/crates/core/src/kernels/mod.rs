//! Backstepping kernels: closed forms, a numerical Goursat oracle, norm
//! bounds, Volterra transforms and the boundary gains derived from them.
//!
//! Tables are immutable once built and can be shared between simulations.

mod bounds;
mod closed_form;
mod gains;
mod goursat;
mod table;
mod volterra;

pub use bounds::{
    bound_norm_ka, bound_norm_kax1, bound_norm_la, norm_kax1_quadrature, KernelNorms,
};
pub use closed_form::{kernel_ka, kernel_ka_dx, kernel_kb, kernel_kb_dy, kernel_la, kernel_lb};
pub use gains::GainVector;
pub use goursat::{solve_kernel_numeric, ITERATION_TOL, MAX_ITERATIONS};
pub use table::{KernelKind, KernelTable, Orientation};
pub use volterra::{
    volterra_lower, volterra_lower_inverse, volterra_lower_solve, volterra_upper,
    volterra_upper_inverse, volterra_upper_solve,
};
