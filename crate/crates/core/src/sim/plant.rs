use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::error::Result;
use crate::linalg::{Integrator, Propagator};
use crate::model::{boundary_injection, CoupledState, DiscreteOperators};

/// The uncontrolled plant advanced by a fixed step with the boundary flux
/// `u` held constant over the step.
#[derive(Debug, Clone)]
pub struct Plant {
    ops: Arc<DiscreteOperators>,
    propagator: Propagator,
    dt: f64,
}

impl Plant {
    pub fn new(ops: Arc<DiscreteOperators>, dt: f64, integrator: Integrator) -> Result<Self> {
        let b = DMatrix::from_column_slice(ops.grid().len(), 1, &boundary_injection(ops.grid()));
        let propagator = Propagator::new(ops.a_open(), &b, dt, integrator)?;
        Ok(Self { ops, propagator, dt })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn operators(&self) -> &DiscreteOperators {
        &self.ops
    }

    /// Advances `w` by one step and re-solves the elliptic constraint.
    pub fn step(&self, state: &CoupledState, u: f64) -> Result<CoupledState> {
        self.ops.grid().check(&state.w)?;
        let x = DVector::from_column_slice(&state.w);
        let next = self.propagator.step(&x, &DVector::from_element(1, u));
        CoupledState::from_w(next.as_slice().to_vec(), &self.ops)
    }
}

/// One plant step without caching the propagator; convenient for single
/// steps, wasteful in loops (use [`Plant`] there).
pub fn plant_step(
    ops: &Arc<DiscreteOperators>,
    state: &CoupledState,
    u: f64,
    dt: f64,
    integrator: Integrator,
) -> Result<CoupledState> {
    Plant::new(ops.clone(), dt, integrator)?.step(state, u)
}
