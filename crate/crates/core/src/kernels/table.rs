use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::closed_form::{kernel_ka, kernel_kb, kernel_la, kernel_lb};
use crate::error::Result;
use crate::model::Grid;

/// Which half of the unit square a kernel lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// `0 <= y <= x <= 1`
    Lower,
    /// `0 <= x <= y <= 1`
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelKind {
    /// Forward controller kernel (modified Bessel).
    Ka,
    /// Inverse controller kernel (Bessel).
    La,
    /// Forward observer kernel on the upper triangle.
    Kb,
    /// Inverse of the observer transform.
    Lb,
    /// Numerical Goursat solution.
    Numeric,
}

impl KernelKind {
    pub fn orientation(self) -> Option<Orientation> {
        match self {
            KernelKind::Ka | KernelKind::La => Some(Orientation::Lower),
            KernelKind::Kb | KernelKind::Lb => Some(Orientation::Upper),
            KernelKind::Numeric => None,
        }
    }
}

/// A kernel sampled on the grid triangle, diagonal included.
///
/// Rows are stored contiguously: for the lower triangle row `i` holds
/// `j = 0..=i`, for the upper triangle row `i` holds `j = i..=N`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelTable {
    grid: Grid,
    orientation: Orientation,
    kind: KernelKind,
    gain: f64,
    values: Vec<f64>,
}

impl KernelTable {
    pub fn from_fn(
        grid: &Grid,
        orientation: Orientation,
        kind: KernelKind,
        gain: f64,
        mut f: impl FnMut(f64, f64) -> Result<f64>,
    ) -> Result<Self> {
        let n = grid.n_intervals();
        let mut values = Vec::with_capacity((n + 1) * (n + 2) / 2);
        for i in 0..=n {
            let range = match orientation {
                Orientation::Lower => 0..=i,
                Orientation::Upper => i..=n,
            };
            for j in range {
                values.push(f(grid.x(i), grid.x(j))?);
            }
        }
        Ok(Self {
            grid: grid.clone(),
            orientation,
            kind,
            gain,
            values,
        })
    }

    pub(crate) fn from_values(
        grid: &Grid,
        orientation: Orientation,
        kind: KernelKind,
        gain: f64,
        values: Vec<f64>,
    ) -> Self {
        debug_assert_eq!(values.len(), (grid.len()) * (grid.len() + 1) / 2);
        Self {
            grid: grid.clone(),
            orientation,
            kind,
            gain,
            values,
        }
    }

    /// `k^a` on the lower triangle.
    pub fn ka(gain: f64, grid: &Grid) -> Result<Self> {
        Self::from_fn(grid, Orientation::Lower, KernelKind::Ka, gain, |x, y| {
            kernel_ka(x, y.min(x), gain)
        })
    }

    /// `l^a` on the lower triangle.
    pub fn la(gain: f64, grid: &Grid) -> Result<Self> {
        Self::from_fn(grid, Orientation::Lower, KernelKind::La, gain, |x, y| {
            kernel_la(x, y.min(x), gain)
        })
    }

    /// `k^b` on the upper triangle.
    pub fn kb(gain: f64, grid: &Grid) -> Result<Self> {
        Self::from_fn(grid, Orientation::Upper, KernelKind::Kb, gain, |x, y| {
            kernel_kb(x, y.max(x), gain)
        })
    }

    /// `l^b` on the upper triangle.
    pub fn lb(gain: f64, grid: &Grid) -> Result<Self> {
        Self::from_fn(grid, Orientation::Upper, KernelKind::Lb, gain, |x, y| {
            kernel_lb(x, y.max(x), gain)
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    pub fn gain(&self) -> f64 {
        self.gain
    }

    fn offset(&self, i: usize) -> usize {
        let n = self.grid.n_intervals();
        match self.orientation {
            Orientation::Lower => i * (i + 1) / 2,
            // rows 0..i hold (n+1) + n + ... + (n+2-i) entries
            Orientation::Upper => i * (n + 1) - i * (i.saturating_sub(1)) / 2,
        }
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        let n = self.grid.n_intervals();
        i <= n
            && j <= n
            && match self.orientation {
                Orientation::Lower => j <= i,
                Orientation::Upper => j >= i,
            }
    }

    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        if !self.contains(i, j) {
            return None;
        }
        let col = match self.orientation {
            Orientation::Lower => j,
            Orientation::Upper => j - i,
        };
        Some(self.values[self.offset(i) + col])
    }

    /// Value at node pair `(i, j)`; panics outside the triangle.
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.get(i, j)
            .unwrap_or_else(|| panic!("({i}, {j}) outside the {:?} triangle", self.orientation))
    }

    /// Row `i` of the triangle, in increasing `j`.
    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.grid.n_intervals();
        let len = match self.orientation {
            Orientation::Lower => i + 1,
            Orientation::Upper => n + 1 - i,
        };
        let start = self.offset(i);
        &self.values[start..start + len]
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.grid.len()).map(|i| self.at(i, i)).collect()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Largest deviation of the diagonal from `-gain x / 2`.
    pub fn diagonal_defect(&self) -> f64 {
        (0..self.grid.len())
            .map(|i| (self.at(i, i) + 0.5 * self.gain * self.grid.x(i)).abs())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &KernelTable) -> Option<f64> {
        if self.orientation != other.orientation || self.grid != other.grid {
            return None;
        }
        Some(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max),
        )
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `L2` norm over the triangle by iterated trapezoid quadrature.
    pub fn l2_norm(&self) -> f64 {
        let n = self.grid.n_intervals();
        let inner: Vec<f64> = (0..=n)
            .map(|i| {
                let (lo, hi) = match self.orientation {
                    Orientation::Lower => (0, i),
                    Orientation::Upper => (i, n),
                };
                self.row(i)
                    .iter()
                    .enumerate()
                    .map(|(c, v)| self.grid.partial_weight(lo, hi, lo + c) * v * v)
                    .sum()
            })
            .collect();
        self.grid.integrate(&inner).sqrt()
    }

    /// CSV dump with header `x,y,value`, row-major over the triangle.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y,value\n");
        let n = self.grid.n_intervals();
        for i in 0..=n {
            let range = match self.orientation {
                Orientation::Lower => 0..=i,
                Orientation::Upper => i..=n,
            };
            for j in range {
                let _ = writeln!(
                    out,
                    "{},{},{}",
                    crate::fmt_f64(self.grid.x(i)),
                    crate::fmt_f64(self.grid.x(j)),
                    crate::fmt_f64(self.at(i, j))
                );
            }
        }
        out
    }
}
