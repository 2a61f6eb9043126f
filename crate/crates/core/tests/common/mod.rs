//! Independent reference computations for the integration tests.
//!
//! Nothing here calls into the library's special functions: Bessel functions
//! come from their integral representations over a period (trapezoid rule is
//! spectrally accurate there) and the error functions from composite
//! Gauss-Legendre quadrature.

#![allow(dead_code)]

use std::f64::consts::PI;

const PERIOD_POINTS: usize = 400;

/// `I_n(x) = (1/pi) int_0^pi exp(x cos t) cos(n t) dt`.
pub fn bessel_i_oracle(n: u32, x: f64) -> f64 {
    periodic_mean(|t| (x * t.cos()).exp() * (n as f64 * t).cos())
}

/// `J_n(x) = (1/pi) int_0^pi cos(n t - x sin t) dt`.
pub fn bessel_j_oracle(n: u32, x: f64) -> f64 {
    periodic_mean(|t| (n as f64 * t - x * t.sin()).cos())
}

/// Trapezoid mean over `[0, pi]` of an even, `2 pi`-periodic integrand.
fn periodic_mean(f: impl Fn(f64) -> f64) -> f64 {
    let m = PERIOD_POINTS;
    let h = PI / m as f64;
    let mut s = 0.5 * (f(0.0) + f(PI));
    for k in 1..m {
        s += f(k as f64 * h);
    }
    s * h / PI
}

const GL_NODES: [f64; 5] = [
    0.0,
    -0.538_469_310_105_683_1,
    0.538_469_310_105_683_1,
    -0.906_179_845_938_664,
    0.906_179_845_938_664,
];
const GL_WEIGHTS: [f64; 5] = [
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
    0.236_926_885_056_189_1,
];

/// Composite 5-point Gauss-Legendre on `[a, b]` with `panels` panels.
pub fn gauss_legendre(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let mut s = 0.0;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS) {
            s += w * f(mid + 0.5 * h * x);
        }
    }
    0.5 * h * s
}

pub fn erf_oracle(x: f64) -> f64 {
    2.0 / PI.sqrt() * gauss_legendre(|t| (-t * t).exp(), 0.0, x, 200)
}

pub fn erfi_oracle(x: f64) -> f64 {
    2.0 / PI.sqrt() * gauss_legendre(|t| (t * t).exp(), 0.0, x, 200)
}

/// Least-squares slope of `log err` against `log h`.
pub fn fitted_order(hs: &[f64], errs: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = hs.iter().zip(errs).map(|(h, e)| (h.ln(), e.ln())).collect();
    let n = pts.len() as f64;
    let xm = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let ym = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - xm) * (p.1 - ym)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - xm).powi(2)).sum();
    sxy / sxx
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
