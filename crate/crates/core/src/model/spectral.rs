use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::{DiscreteOperators, SystemParams, RESONANCE_TOL};
use crate::error::{Error, Result};

/// Modes scanned when locating the largest open-loop eigenvalue.
const STABILITY_SCAN_MODES: usize = 1000;

/// `lambda_n = -rho + alpha beta / (gamma + (n pi)^2) - (n pi)^2`.
pub fn eigenvalue_analytic(n: usize, params: &SystemParams) -> Result<f64> {
    let npi2 = (n as f64 * PI).powi(2);
    let denom = params.gamma + npi2;
    if denom.abs() <= RESONANCE_TOL {
        return Err(Error::Resonance {
            gamma: params.gamma,
            mode: n,
            residual: denom,
        });
    }
    Ok(-params.rho + params.coupling() / denom - npi2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stability {
    Stable,
    Unstable,
}

/// Open-loop classification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub stability: Stability,
    /// Largest eigenvalue; the exponential growth/decay bound.
    pub lambda_max: f64,
    pub argmax_mode: usize,
    pub lambda_0: f64,
    /// `rho - alpha beta / gamma`, reported only for `gamma > 0` where the
    /// sign test is equivalent to the eigenvalue test.
    pub margin: Option<f64>,
}

/// Classifies the uncontrolled system by its largest eigenvalue.
pub fn is_open_loop_stable(params: &SystemParams) -> Result<StabilityReport> {
    let mut lambda_max = f64::NEG_INFINITY;
    let mut argmax = 0;
    for n in 0..=STABILITY_SCAN_MODES {
        let l = eigenvalue_analytic(n, params)?;
        if l > lambda_max {
            lambda_max = l;
            argmax = n;
        }
    }
    let lambda_0 = eigenvalue_analytic(0, params)?;
    let margin = (params.gamma > 0.0).then(|| params.rho - params.coupling() / params.gamma);
    Ok(StabilityReport {
        stability: if lambda_max < 0.0 {
            Stability::Stable
        } else {
            Stability::Unstable
        },
        lambda_max,
        argmax_mode: argmax,
        lambda_0,
        margin,
    })
}

/// Rayleigh quotient `<A_h phi, phi> / <phi, phi>` of the discrete reduced
/// generator on `phi = cos(n pi x)`.
pub fn rayleigh_check(n: usize, ops: &DiscreteOperators) -> Result<f64> {
    let grid = ops.grid();
    if 4 * n > grid.n_intervals() {
        return Err(Error::invalid(
            "n",
            format!("mode {n} is not resolved on {} intervals", grid.n_intervals()),
        ));
    }
    let npi = n as f64 * PI;
    let phi = grid.sample(|x| (npi * x).cos());
    let a_phi = ops.apply_a(&phi)?;
    Ok(grid.inner(&a_phi, &phi) / grid.inner(&phi, &phi))
}
