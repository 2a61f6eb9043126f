//! Numerical solution of the kernel Goursat problems by successive
//! approximation. Serves as an independent check of the closed forms.
//!
//! Lower triangle: `k_yy - k_xx + g k = 0`, `k_y(x, 0) = 0`, `k(x, x) = -g x / 2`.
//! With `xi = x + y`, `eta = x - y` and `G(xi, eta) = k(x, y)` this becomes
//! `G_{xi eta} = (g/4) G` with `G(xi, 0) = -g xi / 4` and `G_xi = G_eta` on
//! `xi = eta`. Integrating first in `eta`, then in `xi`, and using the edge
//! condition to recover `G(eta, eta)` gives
//!
//! ```text
//! G(xi, eta) = -(g/4)(xi + eta)
//!            + (g/2) int_0^eta int_0^tau G(tau, s) ds dtau
//!            + (g/4) int_eta^xi int_0^eta G(tau, s) ds dtau
//! ```
//!
//! Upper triangle: `k_xx - k_yy + g k = 0`, `k_x(0, y) = 0`, `k(x, x) = -g x / 2`.
//! With `xi = y + x`, `eta = y - x` the problem is the same integral
//! equation, so one solver serves both; only the node-to-characteristic map
//! differs.

use super::table::{KernelKind, KernelTable, Orientation};
use crate::error::{Error, Result};
use crate::model::Grid;

pub const MAX_ITERATIONS: usize = 50;
pub const ITERATION_TOL: f64 = 1e-12;

/// Characteristic-grid refinements combined by Richardson extrapolation.
const COARSE_REFINEMENT: usize = 2;
const FINE_REFINEMENT: usize = 4;

/// Triangle `0 <= eta <= min(xi, 2M - xi)` sampled with step `delta`.
struct CharacteristicGrid {
    m: usize,
    delta: f64,
    offsets: Vec<usize>,
}

impl CharacteristicGrid {
    fn new(m: usize) -> Self {
        let mut offsets = Vec::with_capacity(2 * m + 2);
        let mut acc = 0;
        for a in 0..=2 * m {
            offsets.push(acc);
            acc += Self::bmax_of(m, a) + 1;
        }
        offsets.push(acc);
        Self {
            m,
            delta: 1.0 / m as f64,
            offsets,
        }
    }

    fn bmax_of(m: usize, a: usize) -> usize {
        a.min(2 * m - a)
    }

    fn bmax(&self, a: usize) -> usize {
        Self::bmax_of(self.m, a)
    }

    fn len(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    #[inline]
    fn idx(&self, a: usize, b: usize) -> usize {
        self.offsets[a] + b
    }
}

/// Solves the integral equation on a characteristic grid with `m` steps per
/// unit length. Returns `G` in the ragged layout of [`CharacteristicGrid`].
fn solve_characteristic(gain: f64, m: usize) -> Result<(CharacteristicGrid, Vec<f64>)> {
    let cg = CharacteristicGrid::new(m);
    let d = cg.delta;
    let q = gain / 4.0;
    let datum: Vec<f64> = (0..=2 * m)
        .flat_map(|a| (0..=cg.bmax(a)).map(move |b| -q * (a + b) as f64 * d))
        .collect();
    let mut g = datum.clone();
    let mut p = vec![0.0; cg.len()];
    let mut next = vec![0.0; cg.len()];
    let mut diag_cum = vec![0.0; m + 1];
    let mut r_row = vec![0.0; 2 * m + 1];

    for iteration in 1..=MAX_ITERATIONS {
        // P(a, b) = int_0^{b d} G(a d, s) ds
        for a in 0..=2 * m {
            let base = cg.idx(a, 0);
            p[base] = 0.0;
            for b in 1..=cg.bmax(a) {
                p[base + b] = p[base + b - 1] + 0.5 * d * (g[base + b - 1] + g[base + b]);
            }
        }
        // Q(b) = int_0^{b d} P(tau, tau) dtau
        diag_cum[0] = 0.0;
        for b in 1..=m {
            diag_cum[b] = diag_cum[b - 1] + 0.5 * d * (p[cg.idx(b - 1, b - 1)] + p[cg.idx(b, b)]);
        }
        // R(a, b) = int_{b d}^{a d} P(tau, b) dtau, accumulated along a for fixed b.
        let mut update = 0.0f64;
        for b in 0..=m {
            let a_hi = 2 * m - b;
            r_row[b] = 0.0;
            for a in b + 1..=a_hi {
                r_row[a] = r_row[a - 1] + 0.5 * d * (p[cg.idx(a - 1, b)] + p[cg.idx(a, b)]);
            }
            for a in b..=a_hi {
                let k = cg.idx(a, b);
                let value = datum[k] + 2.0 * q * diag_cum[b] + q * r_row[a];
                update = update.max((value - g[k]).abs());
                next[k] = value;
            }
        }
        std::mem::swap(&mut g, &mut next);
        if update < ITERATION_TOL {
            return Ok((cg, g));
        }
        if iteration == MAX_ITERATIONS {
            return Err(Error::KernelNonConvergence {
                iterations: MAX_ITERATIONS,
                last_update: update,
            });
        }
    }
    unreachable!()
}

/// Tabulates the numerical Goursat solution on `grid` for the given triangle.
///
/// Two characteristic refinements are combined by Richardson extrapolation,
/// which removes the `O(delta^2)` trapezoid error.
///
/// Negative gains are accepted: by linearity the lower solution at `-g` is
/// `-l^a` at `g`.
pub fn solve_kernel_numeric(gain: f64, grid: &Grid, orientation: Orientation) -> Result<KernelTable> {
    if !gain.is_finite() {
        return Err(Error::invalid("gain", format!("must be finite, got {gain}")));
    }
    let n = grid.n_intervals();
    let coarse = solve_characteristic(gain, n * COARSE_REFINEMENT)?;
    let fine = solve_characteristic(gain, n * FINE_REFINEMENT)?;
    let ratio = (FINE_REFINEMENT * FINE_REFINEMENT) as f64
        / (COARSE_REFINEMENT * COARSE_REFINEMENT) as f64;
    let sample = |(cg, g): &(CharacteristicGrid, Vec<f64>), r: usize, i: usize, j: usize| {
        // node (x_i, x_j) sits at xi = (i + j) h, eta = |i - j| h
        let a = (i + j) * r;
        let b = i.abs_diff(j) * r;
        g[cg.idx(a, b)]
    };
    let mut values = Vec::with_capacity(grid.len() * (grid.len() + 1) / 2);
    for i in 0..=n {
        let range = match orientation {
            Orientation::Lower => 0..=i,
            Orientation::Upper => i..=n,
        };
        for j in range {
            if i == j {
                values.push(-0.5 * gain * grid.x(i));
                continue;
            }
            let c = sample(&coarse, COARSE_REFINEMENT, i, j);
            let f = sample(&fine, FINE_REFINEMENT, i, j);
            values.push(f + (f - c) / (ratio - 1.0));
        }
    }
    Ok(KernelTable::from_values(grid, orientation, KernelKind::Numeric, gain, values))
}
