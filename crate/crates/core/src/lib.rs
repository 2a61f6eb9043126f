//! Simulation, backstepping boundary control and observer design for the
//! coupled parabolic-elliptic system
//!
//! ```text
//! w_t = w_xx - rho w + alpha v,     w_x(0) = 0, w_x(1) = u(t)
//!   0 = v_xx - gamma v + beta w,    v_x(0) = v_x(1) = 0
//! ```
//!
//! on `x in [0, 1]`.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod analysis;
pub mod cli;
pub mod error;
pub mod kernels;
pub mod linalg;
pub mod model;
pub mod sim;
pub mod specfun;

pub use error::{Error, Result};

/// Formats a float with 17 significant digits, enough to round-trip any `f64`.
pub fn fmt_f64(v: f64) -> String {
    format!("{:.16e}", v + 0.0)
}
