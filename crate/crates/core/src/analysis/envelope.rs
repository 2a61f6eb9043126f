use serde::Serialize;

use super::conditions::target_decay_bound;
use crate::error::{Error, Result};
use crate::kernels::{volterra_lower, KernelTable};
use crate::model::SystemParams;
use crate::sim::TimeSeries;

/// Relative slack on the Lyapunov envelope for discretization error.
pub const LYAPUNOV_TOL: f64 = 0.05;

/// A record where a bound failed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Violation {
    pub t: f64,
    pub lhs: f64,
    pub rhs: f64,
}

/// Result of checking a pointwise-in-time inequality along a trajectory.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnvelopeReport {
    pub name: String,
    pub holds: bool,
    pub records: usize,
    /// Largest `lhs / rhs` over records with `rhs > 0`.
    pub worst_ratio: f64,
    pub violations: Vec<Violation>,
    /// Rate constant used, where one applies.
    pub rate: Option<f64>,
}

impl EnvelopeReport {
    fn from_pairs(name: &str, rate: Option<f64>, pairs: impl Iterator<Item = (f64, f64, f64)>) -> Self {
        let mut records = 0;
        let mut worst = 0.0f64;
        let mut violations = Vec::new();
        for (t, lhs, rhs) in pairs {
            records += 1;
            if rhs > 0.0 {
                worst = worst.max(lhs / rhs);
            }
            if lhs > rhs {
                violations.push(Violation { t, lhs, rhs });
            }
        }
        Self {
            name: name.into(),
            holds: violations.is_empty(),
            records,
            worst_ratio: worst,
            violations,
            rate,
        }
    }
}

/// Target-system states `w~ = w - int_0^x k^a(x,y) w(y) dy` for every record.
fn transformed(series: &TimeSeries, c2: f64) -> Result<Vec<Vec<f64>>> {
    let ka = KernelTable::ka(c2, &series.grid)?;
    series.samples.iter().map(|s| volterra_lower(&ka, &s.w)).collect()
}

/// Checks `V(t) <= V(0) e^{-2 c3 t} (1 + tol)` with `V = ||w~||^2 / 2` and `c3`
/// from [`target_decay_bound`].
pub fn lyapunov_check(series: &TimeSeries, c2: f64, params: &SystemParams) -> Result<EnvelopeReport> {
    let c3 = target_decay_bound(c2, params)?;
    let grid = &series.grid;
    let v: Vec<f64> = transformed(series, c2)?
        .iter()
        .map(|w| 0.5 * grid.inner(w, w))
        .collect();
    let v0 = v.first().copied().unwrap_or(0.0);
    let pairs = series
        .samples
        .iter()
        .zip(&v)
        .map(|(s, &vt)| (s.t, vt, v0 * (-2.0 * c3 * s.t).exp() * (1.0 + LYAPUNOV_TOL)));
    Ok(EnvelopeReport::from_pairs("lyapunov", Some(c3), pairs))
}

/// Checks `||v|| <= |beta| / gamma (1 + ||l^a||) ||w~||` at every record, with
/// the quadrature norm of `l^a`.
pub fn elliptic_bound_check(series: &TimeSeries, c2: f64, params: &SystemParams) -> Result<EnvelopeReport> {
    if !(params.gamma > 0.0) {
        return Err(Error::invalid("gamma", "the elliptic bound needs gamma > 0"));
    }
    let grid = &series.grid;
    let la = KernelTable::la(c2, grid)?.l2_norm();
    let factor = params.beta.abs() / params.gamma * (1.0 + la);
    let wt = transformed(series, c2)?;
    // Allow for rounding when both sides vanish.
    let pairs = series
        .samples
        .iter()
        .zip(&wt)
        .map(|(s, w)| (s.t, s.norm_v, factor * grid.norm(w) * (1.0 + 1e-12) + 1e-300));
    Ok(EnvelopeReport::from_pairs("elliptic-bound", None, pairs))
}
