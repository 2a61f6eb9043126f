//! Closed-form upper bounds on kernel norms and their quadrature counterparts.

use std::f64::consts::PI;

use super::closed_form::kernel_ka_dx;
use super::table::KernelTable;
use crate::error::{Error, Result};
use crate::model::Grid;
use crate::specfun::{erf, erfi};

fn positive(name: &'static str, v: f64) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::invalid(name, format!("must be finite and positive, got {v}")));
    }
    Ok(())
}

/// `sqrt(g pi / 8) * sqrt(erfi(sqrt(g/2)) erf(sqrt(g/2)))`, a bound on `||k^a||`.
pub fn bound_norm_ka(gain: f64) -> Result<f64> {
    positive("gain", gain)?;
    let r = (0.5 * gain).sqrt();
    Ok((gain * PI / 8.0).sqrt() * (erfi(r)? * erf(r)?).sqrt())
}

/// Same expression as [`bound_norm_ka`]; bounds `||l^a||`.
pub fn bound_norm_la(gain: f64) -> Result<f64> {
    bound_norm_ka(gain)
}

/// `(g/2)(1 + g/2) e^{g/4} (sqrt(pi / 2g) erf(sqrt(g/2)))^{1/2}`, a bound on
/// `||k^a_x(1, .)||`.
pub fn bound_norm_kax1(gain: f64) -> Result<f64> {
    positive("gain", gain)?;
    let r = (0.5 * gain).sqrt();
    let tail = ((PI / (2.0 * gain)).sqrt() * erf(r)?).sqrt();
    Ok(0.5 * gain * (1.0 + 0.5 * gain) * (0.25 * gain).exp() * tail)
}

/// Trapezoid `L2` norm of `y -> k^a_x(1, y)`.
pub fn norm_kax1_quadrature(gain: f64, grid: &Grid) -> Result<f64> {
    let samples = grid
        .nodes()
        .iter()
        .map(|&y| kernel_ka_dx(1.0, y, gain))
        .collect::<Result<Vec<_>>>()?;
    Ok(grid.norm(&samples))
}

/// Quadrature norms of the controller (or single-measurement observer)
/// kernels at one gain.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct KernelNorms {
    pub ka: f64,
    pub la: f64,
    pub kax1: f64,
}

impl KernelNorms {
    pub fn quadrature(gain: f64, grid: &Grid) -> Result<Self> {
        Ok(Self {
            ka: KernelTable::ka(gain, grid)?.l2_norm(),
            la: KernelTable::la(gain, grid)?.l2_norm(),
            kax1: norm_kax1_quadrature(gain, grid)?,
        })
    }

    pub fn bounds(gain: f64) -> Result<Self> {
        Ok(Self {
            ka: bound_norm_ka(gain)?,
            la: bound_norm_la(gain)?,
            kax1: bound_norm_kax1(gain)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_agree_and_vanish_at_zero() {
        for &c in &[0.1, 1.0, 3.0] {
            assert_eq!(bound_norm_ka(c).unwrap(), bound_norm_la(c).unwrap());
        }
        assert!(bound_norm_ka(1e-6).unwrap() < 1e-6);
        assert!(bound_norm_ka(0.0).is_err());
        assert!(bound_norm_kax1(-1.0).is_err());
    }

    #[test]
    fn kax1_bound_monotone() {
        let v: Vec<f64> = (0..10)
            .map(|k| bound_norm_kax1(0.1 + k as f64 * (4.9 / 9.0)).unwrap())
            .collect();
        assert!(v.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn kax1_bound_snapshot() {
        let b = bound_norm_kax1(0.5).unwrap();
        assert!(b.is_finite() && b > 0.0);
        assert!((b - 0.340_121_915_317_383_4).abs() < 1e-12, "{b:.17}");
    }
}
