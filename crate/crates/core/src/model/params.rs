use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Distance from a resonance `-(n pi)^2` below which `gamma` is rejected.
pub const RESONANCE_TOL: f64 = 1e-9;

/// Coefficients of the coupled system
///
/// ```text
/// w_t = w_xx - rho w + alpha v
///   0 = v_xx - gamma v + beta w
/// ```
///
/// Fields are public so degenerate cases (`alpha = 0`, `beta = 0`) can be
/// built for unit checks; [`SystemParams::new`] enforces the full invariants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemParams {
    pub rho: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl SystemParams {
    pub fn new(rho: f64, alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let p = Self {
            rho,
            alpha,
            beta,
            gamma,
        };
        p.validate(None)?;
        Ok(p)
    }

    /// Checks finiteness, nonzero couplings and admissibility of `gamma`
    /// against the Neumann modes `n = 0..=max_mode` (default 1024).
    pub fn validate(&self, max_mode: Option<usize>) -> Result<()> {
        for (name, v) in [
            ("rho", self.rho),
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("gamma", self.gamma),
        ] {
            if !v.is_finite() {
                return Err(Error::invalid(name, "must be finite"));
            }
        }
        if self.alpha == 0.0 {
            return Err(Error::invalid("alpha", "coupling must be nonzero"));
        }
        if self.beta == 0.0 {
            return Err(Error::invalid("beta", "coupling must be nonzero"));
        }
        check_admissible(self.gamma, max_mode.unwrap_or(1024))
    }

    pub fn coupling(&self) -> f64 {
        self.alpha * self.beta
    }
}

/// Rejects shifts within [`RESONANCE_TOL`] of `-(n pi)^2`, `0 <= n <= max_mode`.
pub fn check_admissible(gamma: f64, max_mode: usize) -> Result<()> {
    if gamma > 0.0 {
        return Ok(());
    }
    for n in 0..=max_mode {
        let npi = n as f64 * std::f64::consts::PI;
        let residual = gamma + npi * npi;
        if residual.abs() <= RESONANCE_TOL {
            return Err(Error::Resonance {
                gamma,
                mode: n,
                residual,
            });
        }
        if residual > RESONANCE_TOL {
            break;
        }
    }
    Ok(())
}
