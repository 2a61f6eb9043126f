use serde::Serialize;

use crate::error::{Error, Result};

/// Exponential rate from a log-linear least-squares fit; positive means decay.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecayEstimate {
    pub fitted_rate: f64,
    pub window: (f64, f64),
    pub r_squared: f64,
    pub points: usize,
}

/// Window covering the last half of the sampled horizon.
pub fn tail_window(times: &[f64]) -> Option<(f64, f64)> {
    let (first, last) = (*times.first()?, *times.last()?);
    Some((first + 0.5 * (last - first), last))
}

/// Fits `log norm(t) ~ a - rate t` over samples with `t` in `window`
/// (default: [`tail_window`]).
pub fn fit_decay_rate(
    times: &[f64],
    norms: &[f64],
    window: Option<(f64, f64)>,
) -> Result<DecayEstimate> {
    if times.len() != norms.len() {
        return Err(Error::DecayFit(format!(
            "{} times but {} norms",
            times.len(),
            norms.len()
        )));
    }
    let window = window
        .or_else(|| tail_window(times))
        .ok_or_else(|| Error::DecayFit("empty series".into()))?;
    let mut pts = Vec::new();
    for (&t, &v) in times.iter().zip(norms) {
        if t < window.0 || t > window.1 {
            continue;
        }
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::DecayFit(format!("nonpositive norm {v} at t = {t}")));
        }
        pts.push((t, v.ln()));
    }
    if pts.len() < 2 {
        return Err(Error::DecayFit(format!(
            "need at least two samples in [{}, {}], found {}",
            window.0,
            window.1,
            pts.len()
        )));
    }
    let n = pts.len() as f64;
    let tm = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let ym = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - tm).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - tm) * (p.1 - ym)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - ym).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::DecayFit("all samples at one instant".into()));
    }
    let slope = sxy / sxx;
    let ss_res: f64 = pts
        .iter()
        .map(|p| (p.1 - ym - slope * (p.0 - tm)).powi(2))
        .sum();
    // A flat series is fit perfectly by a zero slope.
    let r_squared = if syy <= f64::EPSILON * ym.abs().max(1.0) * n {
        1.0
    } else {
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    };
    Ok(DecayEstimate {
        fitted_rate: -slope,
        window,
        r_squared,
        points: pts.len(),
    })
}
