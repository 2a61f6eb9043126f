use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use super::config::{Scenario, ScenarioKind, SimConfig};
use super::observer::{
    OneMeasurementObserver, TwoMeasurementObserver, INPUT_U, INPUT_V1, INPUT_W1,
};
use super::series::{Sample, TimeSeries};
use crate::analysis::scenario_warnings;
use crate::error::Result;
use crate::kernels::GainVector;
use crate::linalg::Propagator;
use crate::model::{DiscreteOperators, Grid, SystemParams};

/// `u = int_0^1 k^a_x(1,y) w(y) dy + k^a(1,1) w(1)` by trapezoid quadrature.
pub fn control_state_feedback(w: &[f64], c2: f64, grid: &Grid) -> Result<f64> {
    grid.check(w)?;
    let row = GainVector::state_feedback(c2, grid)?.feedback_row(grid);
    Ok(row.iter().zip(w).map(|(r, x)| r * x).sum())
}

/// The same law applied to the observer estimate.
pub fn control_output_feedback(w_hat: &[f64], c2: f64, grid: &Grid) -> Result<f64> {
    control_state_feedback(w_hat, c2, grid)
}

enum ObserverModel {
    Two(TwoMeasurementObserver),
    One(OneMeasurementObserver),
}

impl ObserverModel {
    fn matrices(&self) -> (&DMatrix<f64>, &DMatrix<f64>) {
        match self {
            ObserverModel::Two(o) => (o.generator(), o.input_matrix()),
            ObserverModel::One(o) => (o.generator(), o.input_matrix()),
        }
    }

    fn estimate_v(&self, w_hat: &[f64], v1: f64) -> Result<Vec<f64>> {
        match self {
            ObserverModel::Two(o) => o.estimate_v(w_hat, v1),
            ObserverModel::One(o) => o.estimate_v(w_hat),
        }
    }
}

/// Runs a scenario on a fresh set of operators.
pub fn simulate(
    scenario: &Scenario,
    params: &SystemParams,
    grid: &Grid,
    config: &SimConfig,
) -> Result<TimeSeries> {
    let ops = Arc::new(DiscreteOperators::new(params, grid)?);
    simulate_with(&ops, scenario, config)
}

/// Runs a scenario on shared operators.
///
/// Plant, observer and feedback law form one linear system that is advanced
/// by the configured theta scheme. The feedback is part of that system, so
/// the control is evaluated implicitly along with the states rather than held
/// over each step.
pub fn simulate_with(
    ops: &Arc<DiscreteOperators>,
    scenario: &Scenario,
    config: &SimConfig,
) -> Result<TimeSeries> {
    config.validate()?;
    let grid = ops.grid();
    scenario.validate(grid)?;
    let params = *ops.params();
    let warnings = scenario_warnings(scenario, &params, grid)?;

    let n = grid.len();
    let last = grid.n_intervals();
    let inj = 2.0 / grid.h();

    let observer = match scenario.tag {
        ScenarioKind::OpenLoop | ScenarioKind::StateFeedback => None,
        ScenarioKind::ObserverTwoMeas | ScenarioKind::OutputFeedback => Some(ObserverModel::Two(
            TwoMeasurementObserver::new(ops.clone(), scenario.o2.unwrap_or_default())?,
        )),
        ScenarioKind::ObserverOneMeas => Some(ObserverModel::One(OneMeasurementObserver::new(
            ops.clone(),
            scenario.o2.unwrap_or_default(),
        )?)),
    };
    let dim = if observer.is_some() { 2 * n } else { n };

    // Row vector of the feedback law and the block it reads from.
    let feedback = match scenario.control_gain() {
        Some(c2) => {
            let src = if scenario.tag == ScenarioKind::OutputFeedback { n } else { 0 };
            Some((GainVector::state_feedback(c2, grid)?.feedback_row(grid), src))
        }
        None => None,
    };

    let mut m = DMatrix::zeros(dim, dim);
    m.view_mut((0, 0), (n, n)).copy_from(ops.a_open());
    if let Some((row, src)) = &feedback {
        for j in 0..n {
            m[(last, src + j)] += inj * row[j];
        }
    }
    if let Some(obs) = &observer {
        let (gen, input) = obs.matrices();
        m.view_mut((n, n), (n, n)).copy_from(gen);
        let s = ops.elliptic_inverse();
        for i in 0..n {
            m[(n + i, last)] += input[(i, INPUT_W1)];
            let bv = input[(i, INPUT_V1)];
            if bv != 0.0 {
                for j in 0..n {
                    m[(n + i, j)] += bv * params.beta * s[(last, j)];
                }
            }
            if let Some((row, src)) = &feedback {
                let bu = input[(i, INPUT_U)];
                if bu != 0.0 {
                    for j in 0..n {
                        m[(n + i, src + j)] += bu * row[j];
                    }
                }
            }
        }
    }
    let propagator = Propagator::new(&m, &DMatrix::zeros(dim, 0), config.dt, config.integrator)?;

    let mut x = DVector::zeros(dim);
    x.rows_mut(0, n).copy_from_slice(&scenario.initial_w.sample(grid)?);
    if observer.is_some() {
        x.rows_mut(n, n).copy_from_slice(&scenario.initial_w_hat.sample(grid)?);
    }

    let record = |t: f64, x: &DVector<f64>| -> Result<Sample> {
        let w = x.rows(0, n).as_slice().to_vec();
        let v = ops.elliptic_solve(&w)?;
        let u = feedback
            .as_ref()
            .map(|(row, src)| row.iter().zip(x.rows(*src, n).iter()).map(|(r, v)| r * v).sum());
        let (w_hat, v_hat, norm_ew, norm_ev) = match &observer {
            Some(obs) => {
                let w_hat = x.rows(n, n).as_slice().to_vec();
                let v_hat = obs.estimate_v(&w_hat, v[last])?;
                let ew: Vec<f64> = w.iter().zip(&w_hat).map(|(a, b)| a - b).collect();
                let ev: Vec<f64> = v.iter().zip(&v_hat).map(|(a, b)| a - b).collect();
                (Some(w_hat), Some(v_hat), Some(grid.norm(&ew)), Some(grid.norm(&ev)))
            }
            None => (None, None, None, None),
        };
        Ok(Sample {
            t,
            norm_w: grid.norm(&w),
            norm_v: grid.norm(&v),
            w,
            v,
            w_hat,
            v_hat,
            u,
            norm_ew,
            norm_ev,
        })
    };

    let steps = config.n_steps();
    let mut samples = Vec::with_capacity(steps / config.record_every + 2);
    samples.push(record(0.0, &x)?);
    for k in 1..=steps {
        x = propagator.step_autonomous(&x);
        if k % config.record_every == 0 || k == steps {
            samples.push(record(k as f64 * config.dt, &x)?);
        }
    }

    Ok(TimeSeries {
        kind: scenario.tag,
        grid: grid.clone(),
        samples,
        warnings,
    })
}
