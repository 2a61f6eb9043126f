//! Boundary observers as linear systems `w_hat' = M w_hat + B (w1, v1, u)`.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::kernels::GainVector;
use crate::linalg::{Integrator, Propagator};
use crate::model::{boundary_injection, CoupledState, DiscreteOperators};

/// Boundary measurements at `x = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Measurement {
    pub w1: f64,
    pub v1: f64,
}

impl Measurement {
    pub fn of(state: &CoupledState) -> Self {
        Self {
            w1: *state.w.last().unwrap_or(&0.0),
            v1: *state.v.last().unwrap_or(&0.0),
        }
    }
}

/// Input column indices of the observer `B` matrix.
pub const INPUT_W1: usize = 0;
pub const INPUT_V1: usize = 1;
pub const INPUT_U: usize = 2;

#[derive(Debug, Clone)]
struct LinearObserver {
    generator: DMatrix<f64>,
    input: DMatrix<f64>,
    propagator: Option<Propagator>,
}

impl LinearObserver {
    fn step(&self, w_hat: &[f64], y: Measurement, u: f64) -> Result<Vec<f64>> {
        let prop = self
            .propagator
            .as_ref()
            .ok_or_else(|| Error::invalid("observer", "no time step configured"))?;
        let x = DVector::from_column_slice(w_hat);
        let d = DVector::from_vec(vec![y.w1, y.v1, u]);
        Ok(prop.step(&x, &d).as_slice().to_vec())
    }

    fn discretize(&mut self, dt: f64, integrator: Integrator) -> Result<()> {
        self.propagator = Some(Propagator::new(&self.generator, &self.input, dt, integrator)?);
        Ok(())
    }
}

/// Observer using `w(1,t)` and `v(1,t)`.
///
/// The copy of the elliptic equation carries the injection
/// `eta_2(x) (v1 - v_hat(1))` in the domain and `eta_4 (v1 - v_hat(1))` in its
/// boundary flux. Eliminating `v_hat` leaves the matrix
/// `E = gamma I - D2 + c e_N^T`, `c = eta_2 + (2/h) eta_4 e_N`, handled by
/// Sherman-Morrison on the tridiagonal part.
#[derive(Debug, Clone)]
pub struct TwoMeasurementObserver {
    ops: Arc<DiscreteOperators>,
    gains: GainVector,
    column: Vec<f64>,
    shifted_column: Vec<f64>,
    denom: f64,
    inner: LinearObserver,
}

impl TwoMeasurementObserver {
    pub fn new(ops: Arc<DiscreteOperators>, o2: f64) -> Result<Self> {
        let grid = ops.grid().clone();
        let n = grid.len();
        let last = grid.n_intervals();
        let two_h = 2.0 / grid.h();
        let gains = GainVector::two_measurement(o2, &grid)?;
        let p = *ops.params();

        let mut column = gains.samples.clone();
        column[last] += two_h * gains.scalar;
        let shifted_column = ops.solve_shifted(&column)?;
        let denom = 1.0 + shifted_column[last];
        if denom.abs() < 1e-12 {
            return Err(Error::SingularMatrix { what: "observer elliptic operator", row: last });
        }

        // E^-1 = S - z S_N / (1 + z_N)
        let s = ops.elliptic_inverse();
        let mut e_inv = s.clone();
        for i in 0..n {
            let zi = shifted_column[i] / denom;
            for j in 0..n {
                e_inv[(i, j)] -= zi * s[(last, j)];
            }
        }

        let mut generator = ops.d2().to_dense() + e_inv * p.coupling();
        for i in 0..n {
            generator[(i, i)] -= p.rho;
            generator[(i, last)] -= gains.samples[i];
        }
        generator[(last, last)] -= two_h * gains.scalar;

        let mut input = DMatrix::zeros(n, 3);
        for i in 0..n {
            input[(i, INPUT_W1)] = gains.samples[i];
            input[(i, INPUT_V1)] = p.alpha * shifted_column[i] / denom;
        }
        input[(last, INPUT_W1)] += two_h * gains.scalar;
        input[(last, INPUT_U)] = two_h;

        Ok(Self {
            ops,
            gains,
            column,
            shifted_column,
            denom,
            inner: LinearObserver { generator, input, propagator: None },
        })
    }

    pub fn with_step(mut self, dt: f64, integrator: Integrator) -> Result<Self> {
        self.inner.discretize(dt, integrator)?;
        Ok(self)
    }

    pub fn gains(&self) -> &GainVector {
        &self.gains
    }

    pub fn generator(&self) -> &DMatrix<f64> {
        &self.inner.generator
    }

    /// Columns for `w1`, `v1`, `u`.
    pub fn input_matrix(&self) -> &DMatrix<f64> {
        &self.inner.input
    }

    /// Solves the observer's elliptic equation for `v_hat`.
    pub fn estimate_v(&self, w_hat: &[f64], v1: f64) -> Result<Vec<f64>> {
        let beta = self.ops.params().beta;
        let rhs: Vec<f64> = w_hat
            .iter()
            .zip(&self.column)
            .map(|(w, c)| beta * w + c * v1)
            .collect();
        let t = self.ops.solve_shifted(&rhs)?;
        let scale = t[t.len() - 1] / self.denom;
        Ok(t.iter()
            .zip(&self.shifted_column)
            .map(|(ti, zi)| ti - zi * scale)
            .collect())
    }

    pub fn step(&self, w_hat: &[f64], y: Measurement, u: f64) -> Result<CoupledState> {
        self.ops.grid().check(w_hat)?;
        let w = self.inner.step(w_hat, y, u)?;
        let v = self.estimate_v(&w, y.v1)?;
        Ok(CoupledState { w, v })
    }
}

/// Observer using `w(1,t)` only; `v_hat` solves the plain elliptic equation.
#[derive(Debug, Clone)]
pub struct OneMeasurementObserver {
    ops: Arc<DiscreteOperators>,
    gains: GainVector,
    inner: LinearObserver,
}

impl OneMeasurementObserver {
    pub fn new(ops: Arc<DiscreteOperators>, o2: f64) -> Result<Self> {
        let grid = ops.grid().clone();
        let n = grid.len();
        let last = grid.n_intervals();
        let gains = GainVector::one_measurement(o2, &grid)?;
        let inj = boundary_injection(&grid);

        let mut generator = ops.a_open().clone();
        generator[(last, last)] -= inj[last] * gains.scalar;
        let mut input = DMatrix::zeros(n, 3);
        input[(last, INPUT_W1)] = inj[last] * gains.scalar;
        input[(last, INPUT_U)] = inj[last];
        Ok(Self {
            ops,
            gains,
            inner: LinearObserver { generator, input, propagator: None },
        })
    }

    pub fn with_step(mut self, dt: f64, integrator: Integrator) -> Result<Self> {
        self.inner.discretize(dt, integrator)?;
        Ok(self)
    }

    pub fn gains(&self) -> &GainVector {
        &self.gains
    }

    pub fn generator(&self) -> &DMatrix<f64> {
        &self.inner.generator
    }

    pub fn input_matrix(&self) -> &DMatrix<f64> {
        &self.inner.input
    }

    pub fn estimate_v(&self, w_hat: &[f64]) -> Result<Vec<f64>> {
        self.ops.elliptic_solve(w_hat)
    }

    pub fn step(&self, w_hat: &[f64], y: Measurement, u: f64) -> Result<CoupledState> {
        self.ops.grid().check(w_hat)?;
        let w = self.inner.step(w_hat, y, u)?;
        let v = self.estimate_v(&w)?;
        Ok(CoupledState { w, v })
    }
}
