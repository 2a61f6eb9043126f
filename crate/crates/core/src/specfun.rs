//! Ascending-series evaluation of the special functions used by the kernels
//! and their norm bounds.
//!
//! Every routine sums its power series until the next term falls below
//! `rel_tol` times the running sum. The arguments produced by this crate stay
//! of order `sqrt(gain)`, where the ascending series is accurate to a few ulps.

use crate::error::{Error, Result};

/// Below this argument the `I_1(z)/z` and `J_1(z)/z` ratios are summed
/// directly instead of dividing.
pub const RATIO_CROSSOVER: f64 = 1e-4;

const FRAC_2_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;

/// Truncation policy for the ascending series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            rel_tol: 1e-16,
            max_terms: 200,
        }
    }
}

impl SeriesControl {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0) {
            return Err(Error::invalid("rel_tol", "must be positive"));
        }
        if max_terms == 0 {
            return Err(Error::invalid("max_terms", "must be at least 1"));
        }
        Ok(Self { rel_tol, max_terms })
    }
}

/// Sums `sum_m first * prod_{k<m} ratio(k)` with the stopping rule above.
///
/// `ratio(m)` maps term `m` to term `m + 1`.
fn sum_series(
    function: &'static str,
    first: f64,
    ratio: impl Fn(usize) -> f64,
    ctl: SeriesControl,
) -> Result<f64> {
    let mut term = first;
    let mut sum = first;
    if first == 0.0 {
        return Ok(0.0);
    }
    for m in 0..ctl.max_terms {
        term *= ratio(m);
        if term.abs() < ctl.rel_tol * sum.abs() {
            return Ok(sum);
        }
        sum += term;
    }
    Err(Error::SeriesNonConvergence {
        function,
        terms: ctl.max_terms,
        last_term: term.abs(),
    })
}

fn check_arg(function: &'static str, x: f64) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::invalid("x", format!("{function}: argument must be finite")));
    }
    Ok(())
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// `sum_m (sign * q)^m / (m! (m + order)!)`, the common core of the
/// `I_n(z)/z^n` and `J_n(z)/z^n` ratios with `q = z^2 / 4`.
fn scaled_series(
    function: &'static str,
    order: usize,
    q: f64,
    sign: f64,
    ctl: SeriesControl,
) -> Result<f64> {
    let first = 1.0 / factorial(order);
    let n = order as f64;
    sum_series(
        function,
        first,
        |m| {
            let m = m as f64;
            sign * q / ((m + 1.0) * (m + 1.0 + n))
        },
        ctl,
    )
}

/// Modified Bessel function of the first kind, `I_n(x)` for `n` in `{0, 1, 2}`.
pub fn bessel_i(order: u32, x: f64) -> Result<f64> {
    bessel_i_with(order, x, SeriesControl::default())
}

pub fn bessel_i_with(order: u32, x: f64, ctl: SeriesControl) -> Result<f64> {
    check_arg("bessel_i", x)?;
    if order > 2 {
        return Err(Error::invalid("order", "only orders 0, 1 and 2 are supported"));
    }
    if x < 0.0 {
        return Err(Error::invalid("x", "bessel_i: argument must be nonnegative"));
    }
    let half = 0.5 * x;
    let series = scaled_series("bessel_i", order as usize, half * half, 1.0, ctl)?;
    Ok(half.powi(order as i32) * series)
}

/// Bessel function of the first kind, `J_1(x)`.
pub fn bessel_j1(x: f64) -> Result<f64> {
    bessel_j1_with(x, SeriesControl::default())
}

pub fn bessel_j1_with(x: f64, ctl: SeriesControl) -> Result<f64> {
    check_arg("bessel_j1", x)?;
    let half = 0.5 * x;
    Ok(half * scaled_series("bessel_j1", 1, half * half, -1.0, ctl)?)
}

/// Maclaurin series of erfi; all terms are positive for `x > 0`.
fn erfi_series(x: f64) -> Result<f64> {
    let (function, sign) = ("erfi", 1.0);
    check_arg(function, x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    let x2 = x * x;
    let ctl = SeriesControl::default();
    // term_m = (sign x^2)^m x / (m! (2m + 1))
    let mut power = x;
    let mut sum = x;
    for m in 1..=ctl.max_terms {
        power *= sign * x2 / m as f64;
        let term = power / (2 * m + 1) as f64;
        if term.abs() < ctl.rel_tol * sum.abs() {
            return Ok(FRAC_2_SQRT_PI * sum);
        }
        sum += term;
    }
    Err(Error::SeriesNonConvergence {
        function,
        terms: ctl.max_terms,
        last_term: (power / (2 * ctl.max_terms + 1) as f64).abs(),
    })
}

/// Error function `2/sqrt(pi) * int_0^x exp(-t^2) dt`.
///
/// Summed as `2/sqrt(pi) e^{-x^2} sum_n 2^n x^{2n+1} / (2n+1)!!`, whose terms
/// share one sign, so accuracy does not degrade with `|x|`.
pub fn erf(x: f64) -> Result<f64> {
    check_arg("erf", x)?;
    let a = x.abs();
    if a > 6.0 {
        // 1 - erf(6) is below 1e-16.
        return Ok(x.signum());
    }
    let ctl = SeriesControl::default();
    let q = 2.0 * a * a;
    let mut term = a;
    let mut sum = a;
    for n in 1..=ctl.max_terms {
        term *= q / (2 * n + 1) as f64;
        sum += term;
        if term <= ctl.rel_tol * sum {
            return Ok(x.signum() * FRAC_2_SQRT_PI * (-a * a).exp() * sum);
        }
    }
    Err(Error::SeriesNonConvergence {
        function: "erf",
        terms: ctl.max_terms,
        last_term: term,
    })
}

/// Imaginary error function `2/sqrt(pi) * int_0^x exp(t^2) dt`.
pub fn erfi(x: f64) -> Result<f64> {
    erfi_series(x)
}

/// `I_1(z) / z`, equal to `1/2` at the origin.
pub fn ratio_i1(z: f64) -> Result<f64> {
    check_arg("ratio_i1", z)?;
    if z < 0.0 {
        return Err(Error::invalid("z", "ratio_i1: argument must be nonnegative"));
    }
    if z < RATIO_CROSSOVER {
        ratio_i1_sq(z * z)
    } else {
        Ok(bessel_i(1, z)? / z)
    }
}

/// `J_1(z) / z`, equal to `1/2` at the origin.
pub fn ratio_j1(z: f64) -> Result<f64> {
    check_arg("ratio_j1", z)?;
    if z < 0.0 {
        return Err(Error::invalid("z", "ratio_j1: argument must be nonnegative"));
    }
    if z < RATIO_CROSSOVER {
        ratio_j1_sq(z * z)
    } else {
        Ok(bessel_j1(z)? / z)
    }
}

/// `I_1(z)/z` as a function of `s = z^2`. Avoids forming a square root of a
/// difference near the kernel diagonal.
pub fn ratio_i1_sq(s: f64) -> Result<f64> {
    Ok(0.5 * scaled_series("ratio_i1", 1, 0.25 * s, 1.0, SeriesControl::default())?)
}

/// `J_1(z)/z` as a function of `s = z^2`.
pub fn ratio_j1_sq(s: f64) -> Result<f64> {
    Ok(0.5 * scaled_series("ratio_j1", 1, 0.25 * s, -1.0, SeriesControl::default())?)
}

/// `I_2(z)/z^2` as a function of `s = z^2`; tends to `1/8`.
pub fn ratio_i2_sq(s: f64) -> Result<f64> {
    Ok(0.25 * scaled_series("ratio_i2", 2, 0.25 * s, 1.0, SeriesControl::default())?)
}
