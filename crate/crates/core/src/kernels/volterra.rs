//! Volterra transforms `I - K` and `I + L` on either triangle, by trapezoid
//! quadrature over the grid.

use super::table::{KernelTable, Orientation};
use crate::error::{Error, Result};

fn check(kernel: &KernelTable, f: &[f64], orientation: Orientation) -> Result<()> {
    if kernel.orientation() != orientation {
        return Err(Error::Orientation(match orientation {
            Orientation::Lower => "lower-triangle transform needs a lower-triangle kernel",
            Orientation::Upper => "upper-triangle transform needs an upper-triangle kernel",
        }));
    }
    kernel.grid().check(f)
}

/// `sum_j w_j k(x_i, y_j) f_j` over the triangle row `i`.
fn row_integral(kernel: &KernelTable, f: &[f64], i: usize) -> f64 {
    let grid = kernel.grid();
    let n = grid.n_intervals();
    let (lo, hi) = match kernel.orientation() {
        Orientation::Lower => (0, i),
        Orientation::Upper => (i, n),
    };
    kernel
        .row(i)
        .iter()
        .zip(&f[lo..=hi])
        .enumerate()
        .map(|(c, (k, v))| grid.partial_weight(lo, hi, lo + c) * k * v)
        .sum()
}

fn apply(kernel: &KernelTable, f: &[f64], orientation: Orientation, sign: f64) -> Result<Vec<f64>> {
    check(kernel, f, orientation)?;
    Ok((0..f.len())
        .map(|i| f[i] + sign * row_integral(kernel, f, i))
        .collect())
}

/// `g(x) = f(x) - int_0^x k(x, y) f(y) dy`.
pub fn volterra_lower(kernel: &KernelTable, f: &[f64]) -> Result<Vec<f64>> {
    apply(kernel, f, Orientation::Lower, -1.0)
}

/// `f(x) = g(x) + int_0^x l(x, y) g(y) dy`.
pub fn volterra_lower_inverse(kernel_l: &KernelTable, g: &[f64]) -> Result<Vec<f64>> {
    apply(kernel_l, g, Orientation::Lower, 1.0)
}

/// `g(x) = f(x) - int_x^1 k(x, y) f(y) dy`.
pub fn volterra_upper(kernel: &KernelTable, f: &[f64]) -> Result<Vec<f64>> {
    apply(kernel, f, Orientation::Upper, -1.0)
}

/// `f(x) = g(x) + int_x^1 l(x, y) g(y) dy`.
pub fn volterra_upper_inverse(kernel_l: &KernelTable, g: &[f64]) -> Result<Vec<f64>> {
    apply(kernel_l, g, Orientation::Upper, 1.0)
}

/// Exact inverse of the discrete [`volterra_lower`] map by forward
/// substitution (the quadrature matrix is lower triangular).
pub fn volterra_lower_solve(kernel: &KernelTable, g: &[f64]) -> Result<Vec<f64>> {
    check(kernel, g, Orientation::Lower)?;
    let grid = kernel.grid();
    let mut f = vec![0.0; g.len()];
    for i in 0..g.len() {
        let row = kernel.row(i);
        let acc: f64 = (0..i).map(|j| grid.partial_weight(0, i, j) * row[j] * f[j]).sum();
        let pivot = 1.0 - grid.partial_weight(0, i, i) * row[i];
        if pivot == 0.0 {
            return Err(Error::SingularMatrix { what: "discrete Volterra operator", row: i });
        }
        f[i] = (g[i] + acc) / pivot;
    }
    Ok(f)
}

/// Exact inverse of the discrete [`volterra_upper`] map by back substitution.
pub fn volterra_upper_solve(kernel: &KernelTable, g: &[f64]) -> Result<Vec<f64>> {
    check(kernel, g, Orientation::Upper)?;
    let grid = kernel.grid();
    let n = grid.n_intervals();
    let mut f = vec![0.0; g.len()];
    for i in (0..=n).rev() {
        let row = kernel.row(i);
        let acc: f64 = (i + 1..=n)
            .map(|j| grid.partial_weight(i, n, j) * row[j - i] * f[j])
            .sum();
        let pivot = 1.0 - grid.partial_weight(i, n, i) * row[0];
        if pivot == 0.0 {
            return Err(Error::SingularMatrix { what: "discrete Volterra operator", row: i });
        }
        f[i] = (g[i] + acc) / pivot;
    }
    Ok(f)
}
