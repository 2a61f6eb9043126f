use super::closed_form::{kernel_ka, kernel_ka_dx, kernel_kb, kernel_kb_dy};
use crate::error::{Error, Result};
use crate::model::Grid;

/// A boundary-gain function sampled on the grid plus one scalar boundary gain.
///
/// * state feedback: `samples = k^a_x(1, y)`, `scalar = k^a(1, 1)`
/// * two-measurement observer: `samples = eta_1 = eta_2 = -k^b_y(x, 1)`,
///   `scalar = eta_3 = eta_4 = -k^b(1, 1)`
/// * single-measurement observer: `samples = eta_1 = 0`, `scalar = eta_2 = -k^a(1, 1)`
#[derive(Debug, Clone, PartialEq)]
pub struct GainVector {
    pub samples: Vec<f64>,
    pub scalar: f64,
}

fn positive_gain(name: &'static str, g: f64) -> Result<()> {
    if !(g > 0.0) || !g.is_finite() {
        return Err(Error::invalid(name, format!("must be finite and positive, got {g}")));
    }
    Ok(())
}

impl GainVector {
    /// Controller gains for `u = int_0^1 k^a_x(1,y) w(y) dy + k^a(1,1) w(1)`.
    pub fn state_feedback(c2: f64, grid: &Grid) -> Result<Self> {
        positive_gain("c2", c2)?;
        let samples = grid
            .nodes()
            .iter()
            .map(|&y| kernel_ka_dx(1.0, y, c2))
            .collect::<Result<_>>()?;
        Ok(Self {
            samples,
            scalar: kernel_ka(1.0, 1.0, c2)?,
        })
    }

    /// Output injections of the observer driven by `w(1,t)` and `v(1,t)`.
    pub fn two_measurement(o2: f64, grid: &Grid) -> Result<Self> {
        positive_gain("o2", o2)?;
        let samples = grid
            .nodes()
            .iter()
            .map(|&x| kernel_kb_dy(x, 1.0, o2).map(|v| -v))
            .collect::<Result<_>>()?;
        Ok(Self {
            samples,
            scalar: -kernel_kb(1.0, 1.0, o2)?,
        })
    }

    /// Output injection of the observer driven by `w(1,t)` only.
    pub fn one_measurement(o2: f64, grid: &Grid) -> Result<Self> {
        positive_gain("o2", o2)?;
        Ok(Self {
            samples: vec![0.0; grid.len()],
            scalar: -kernel_ka(1.0, 1.0, o2)?,
        })
    }

    /// Row vector `r` with `r . w = int_0^1 samples(y) w(y) dy + scalar w(1)`
    /// under trapezoid quadrature.
    pub fn feedback_row(&self, grid: &Grid) -> Vec<f64> {
        let mut row: Vec<f64> = grid
            .weights()
            .iter()
            .zip(&self.samples)
            .map(|(w, k)| w * k)
            .collect();
        row[grid.n_intervals()] += self.scalar;
        row
    }
}
