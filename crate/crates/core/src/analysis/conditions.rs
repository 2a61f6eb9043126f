use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernels::{bound_norm_ka, bound_norm_kax1, KernelNorms};
use crate::model::{check_admissible, Grid, SystemParams};
use crate::specfun::{erf, erfi};

/// Outcome of one sufficient-condition test `lhs > rhs`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
    pub margin: f64,
}

impl ConditionReport {
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        Self {
            name: name.into(),
            lhs,
            rhs,
            satisfied: lhs > rhs,
            margin: lhs - rhs,
        }
    }
}

fn require_positive_gamma(params: &SystemParams) -> Result<()> {
    if !(params.gamma > 0.0) {
        return Err(Error::invalid(
            "gamma",
            format!("the norm-based conditions need gamma > 0, got {}", params.gamma),
        ));
    }
    Ok(())
}

fn require_gain(name: &'static str, g: f64) -> Result<()> {
    if !(g > 0.0) || !g.is_finite() {
        return Err(Error::invalid(name, format!("must be finite and positive, got {g}")));
    }
    Ok(())
}

/// `|alpha beta| / gamma`.
fn coupling_ratio(alpha: f64, beta: f64, gamma: f64) -> f64 {
    (alpha * beta).abs() / gamma
}

/// Right-hand side of the controller gain condition with the closed-form
/// norm bounds: `|ab|/g [1 + sqrt(c pi/8) erfi(sqrt(c/2))^1/2 erf(sqrt(c/2))^1/2]^2`.
pub fn controller_rhs(c2: f64, alpha: f64, beta: f64, gamma: f64) -> Result<f64> {
    require_gain("c2", c2)?;
    let b = 1.0 + bound_norm_ka(c2)?;
    Ok(coupling_ratio(alpha, beta, gamma) * b * b)
}

/// `c2 + rho > |ab|/g (1 + B(c2))^2` with `B` the closed-form norm bound.
pub fn check_controller_condition(c2: f64, params: &SystemParams) -> Result<ConditionReport> {
    require_positive_gamma(params)?;
    let rhs = controller_rhs(c2, params.alpha, params.beta, params.gamma)?;
    Ok(ConditionReport::new("controller-bounds", c2 + params.rho, rhs))
}

/// The same condition with quadrature norms `(1 + ||l^a||)(1 + ||k^a||)`.
pub fn check_controller_condition_norms(
    c2: f64,
    params: &SystemParams,
    grid: &Grid,
) -> Result<ConditionReport> {
    require_positive_gamma(params)?;
    require_gain("c2", c2)?;
    let n = KernelNorms::quadrature(c2, grid)?;
    let rhs = coupling_ratio(params.alpha, params.beta, params.gamma) * (1.0 + n.la) * (1.0 + n.ka);
    Ok(ConditionReport::new("controller-quadrature", c2 + params.rho, rhs))
}

fn decay_bound(c2: f64, params: &SystemParams, norms: KernelNorms) -> f64 {
    c2 + params.rho
        - coupling_ratio(params.alpha, params.beta, params.gamma) * (1.0 + norms.la) * (1.0 + norms.ka)
}

/// `c3 = (c2 + rho) - |ab|/g (1 + ||l^a||)(1 + ||k^a||)` with closed-form bounds.
///
/// A nonpositive value is returned as is: the condition is only sufficient.
pub fn target_decay_bound(c2: f64, params: &SystemParams) -> Result<f64> {
    require_positive_gamma(params)?;
    Ok(decay_bound(c2, params, KernelNorms::bounds(c2)?))
}

/// `c3` with quadrature norms; never below [`target_decay_bound`].
pub fn target_decay_bound_quadrature(c2: f64, params: &SystemParams, grid: &Grid) -> Result<f64> {
    require_positive_gamma(params)?;
    require_gain("c2", c2)?;
    Ok(decay_bound(c2, params, KernelNorms::quadrature(c2, grid)?))
}

/// `(o2 + rho)(o2 + gamma) > alpha beta` for the two-measurement observer.
///
/// Fails with [`Error::Resonance`] when `o2 + gamma` hits a Neumann
/// eigenvalue `-(n pi)^2`, where the observer's target system is ill-posed.
pub fn check_observer2_condition(o2: f64, params: &SystemParams) -> Result<ConditionReport> {
    require_gain("o2", o2)?;
    check_admissible(o2 + params.gamma, 1024)?;
    Ok(ConditionReport::new(
        "observer-two-measurement",
        (o2 + params.rho) * (o2 + params.gamma),
        params.alpha * params.beta,
    ))
}

/// The three readings of the single-measurement observer condition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Observer1Reports {
    /// Norm condition with quadrature norms.
    pub quadrature: ConditionReport,
    /// Norm condition with every norm replaced by its closed-form bound.
    pub bounds_form: ConditionReport,
    /// Compact closed form with larger constants than the norm condition.
    pub compact: ConditionReport,
}

fn observer1_rhs_from_norms(ratio: f64, norms: KernelNorms) -> f64 {
    ratio * (1.0 + norms.ka) * (1.0 + norms.la)
        + ((1.0 + norms.la).powi(2) * norms.kax1 * norms.kax1 + 2.0) / 2.0
}

/// Right-hand side of the compact single-measurement condition:
/// `(|a||b|/g + ||k^a_x(1,.)||^2/2) [1 + sqrt(o pi/2) erfi(sqrt(o/2))^1/2 erf(sqrt(o/2))^1/2]^2 + 1`
/// with `||k^a_x(1,.)||` replaced by its closed-form bound.
pub fn observer1_compact_rhs(o2: f64, alpha: f64, beta: f64, gamma: f64) -> Result<f64> {
    require_gain("o2", o2)?;
    let r = (0.5 * o2).sqrt();
    let kx = bound_norm_kax1(o2)?;
    let bracket = 1.0 + (0.5 * o2 * PI).sqrt() * erfi(r)?.sqrt() * erf(r)?.sqrt();
    Ok((coupling_ratio(alpha, beta, gamma) + 0.5 * kx * kx) * bracket * bracket + 1.0)
}

/// Norm-condition right-hand side with closed-form bounds for all three norms.
pub fn observer1_bounds_rhs(o2: f64, alpha: f64, beta: f64, gamma: f64) -> Result<f64> {
    Ok(observer1_rhs_from_norms(coupling_ratio(alpha, beta, gamma), KernelNorms::bounds(o2)?))
}

pub fn check_observer1_condition(o2: f64, params: &SystemParams, grid: &Grid) -> Result<Observer1Reports> {
    require_positive_gamma(params)?;
    require_gain("o2", o2)?;
    let lhs = o2 + params.rho;
    let ratio = coupling_ratio(params.alpha, params.beta, params.gamma);
    let quad = observer1_rhs_from_norms(ratio, KernelNorms::quadrature(o2, grid)?);
    let (a, b, g) = (params.alpha, params.beta, params.gamma);
    Ok(Observer1Reports {
        quadrature: ConditionReport::new("observer-one-measurement-quadrature", lhs, quad),
        bounds_form: ConditionReport::new(
            "observer-one-measurement-bounds",
            lhs,
            observer1_bounds_rhs(o2, a, b, g)?,
        ),
        compact: ConditionReport::new(
            "observer-one-measurement-compact",
            lhs,
            observer1_compact_rhs(o2, a, b, g)?,
        ),
    })
}
