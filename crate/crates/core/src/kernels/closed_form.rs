//! Pointwise closed-form kernels.
//!
//! Every kernel is written through the squared argument
//! `s = gain (x^2 - y^2) = gain (x - y)(x + y)` so that the diagonal limit is
//! reached by the ratio series rather than by dividing two small numbers.

use crate::error::{Error, Result};
use crate::specfun::{ratio_i1_sq, ratio_i2_sq, ratio_j1_sq};

/// Slack on the triangle inequality `y <= x` (or `x <= y`).
const DOMAIN_SLACK: f64 = 1e-12;

fn check_gain(gain: f64) -> Result<()> {
    if !(gain >= 0.0) || !gain.is_finite() {
        return Err(Error::invalid("gain", format!("must be finite and nonnegative, got {gain}")));
    }
    Ok(())
}

/// `gain (hi^2 - lo^2)` after checking `0 <= lo <= hi <= 1`.
fn squared_argument(
    function: &'static str,
    hi: f64,
    lo: f64,
    gain: f64,
    expected: &'static str,
    (x, y): (f64, f64),
) -> Result<f64> {
    check_gain(gain)?;
    let inside = lo >= -DOMAIN_SLACK
        && hi <= 1.0 + DOMAIN_SLACK
        && lo <= hi + DOMAIN_SLACK
        && x.is_finite()
        && y.is_finite();
    if !inside {
        return Err(Error::KernelDomain {
            function,
            x,
            y,
            expected,
        });
    }
    Ok((gain * (hi - lo) * (hi + lo)).max(0.0))
}

const LOWER: &str = "0 <= y <= x <= 1";
const UPPER: &str = "0 <= x <= y <= 1";

/// Forward kernel `k^a(x, y) = -gain x I_1(z)/z`, `z = sqrt(gain (x^2 - y^2))`.
pub fn kernel_ka(x: f64, y: f64, gain: f64) -> Result<f64> {
    let s = squared_argument("kernel_ka", x, y, gain, LOWER, (x, y))?;
    Ok(-gain * x * ratio_i1_sq(s)?)
}

/// Inverse kernel `l^a(x, y) = -gain x J_1(z)/z`.
pub fn kernel_la(x: f64, y: f64, gain: f64) -> Result<f64> {
    let s = squared_argument("kernel_la", x, y, gain, LOWER, (x, y))?;
    Ok(-gain * x * ratio_j1_sq(s)?)
}

/// `d k^a / dx = -gain I_1(z)/z - gain^2 x^2 I_2(z)/z^2`.
///
/// On the diagonal this is `-gain/2 - gain^2 x^2 / 8`.
pub fn kernel_ka_dx(x: f64, y: f64, gain: f64) -> Result<f64> {
    let s = squared_argument("kernel_ka_dx", x, y, gain, LOWER, (x, y))?;
    Ok(-gain * ratio_i1_sq(s)? - gain * gain * x * x * ratio_i2_sq(s)?)
}

/// Observer kernel on the upper triangle. Swapping the arguments maps its
/// Goursat problem onto the forward kernel's with the same gain, so
/// `k^b(x, y) = k^a(y, x)`.
pub fn kernel_kb(x: f64, y: f64, gain: f64) -> Result<f64> {
    let s = squared_argument("kernel_kb", y, x, gain, UPPER, (x, y))?;
    Ok(-gain * y * ratio_i1_sq(s)?)
}

/// `d k^b / dy (x, y)`, i.e. [`kernel_ka_dx`] at `(y, x)`.
pub fn kernel_kb_dy(x: f64, y: f64, gain: f64) -> Result<f64> {
    let s = squared_argument("kernel_kb_dy", y, x, gain, UPPER, (x, y))?;
    Ok(-gain * ratio_i1_sq(s)? - gain * gain * y * y * ratio_i2_sq(s)?)
}

/// Inverse of the upper-triangle transform with kernel `k^b`: `l^b(x, y) = l^a(y, x)`.
pub fn kernel_lb(x: f64, y: f64, gain: f64) -> Result<f64> {
    let s = squared_argument("kernel_lb", y, x, gain, UPPER, (x, y))?;
    Ok(-gain * y * ratio_j1_sq(s)?)
}
