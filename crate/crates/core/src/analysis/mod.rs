//! Sufficient stability conditions, decay-rate fits and trajectory checks.

mod conditions;
mod decay;
mod envelope;
mod sweep;

pub use conditions::{
    check_controller_condition, check_controller_condition_norms, check_observer1_condition,
    check_observer2_condition, controller_rhs, observer1_compact_rhs,
    observer1_bounds_rhs, target_decay_bound, target_decay_bound_quadrature,
    ConditionReport, Observer1Reports,
};
pub use decay::{fit_decay_rate, tail_window, DecayEstimate};
pub use envelope::{elliptic_bound_check, lyapunov_check, EnvelopeReport, Violation, LYAPUNOV_TOL};
pub use sweep::{sweep_conditions, Crossing, SweepKind, SweepRow, SweepSpec, SweepTable};

use crate::error::Result;
use crate::model::{Grid, SystemParams};
use crate::sim::{Scenario, ScenarioKind};

/// Every condition relevant to a scenario.
pub fn scenario_conditions(
    scenario: &Scenario,
    params: &SystemParams,
    grid: &Grid,
) -> Result<Vec<ConditionReport>> {
    let mut out = Vec::new();
    if params.gamma > 0.0 {
        if let Some(c2) = scenario.control_gain() {
            out.push(check_controller_condition(c2, params)?);
            out.push(check_controller_condition_norms(c2, params, grid)?);
        }
    }
    match (scenario.tag, scenario.o2) {
        (ScenarioKind::ObserverTwoMeas | ScenarioKind::OutputFeedback, Some(o2)) => {
            out.push(check_observer2_condition(o2, params)?);
        }
        (ScenarioKind::ObserverOneMeas, Some(o2)) if params.gamma > 0.0 => {
            let r = check_observer1_condition(o2, params, grid)?;
            out.extend([r.quadrature, r.bounds_form, r.compact]);
        }
        _ => {}
    }
    Ok(out)
}

/// Human-readable notes for conditions that fail or cannot be evaluated.
pub fn scenario_warnings(scenario: &Scenario, params: &SystemParams, grid: &Grid) -> Result<Vec<String>> {
    let mut out: Vec<String> = scenario_conditions(scenario, params, grid)?
        .into_iter()
        .filter(|c| !c.satisfied)
        .map(|c| {
            format!(
                "sufficient condition `{}` not met (lhs {} <= rhs {}); stability is not guaranteed",
                c.name, c.lhs, c.rhs
            )
        })
        .collect();
    let needs_gamma = scenario.control_gain().is_some() || scenario.tag == ScenarioKind::ObserverOneMeas;
    if needs_gamma && !(params.gamma > 0.0) {
        out.push(format!(
            "gamma = {} is not positive; the norm-based conditions cannot be evaluated",
            params.gamma
        ));
    }
    Ok(out)
}
