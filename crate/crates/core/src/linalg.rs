//! Small linear-algebra helpers: a factored tridiagonal solver and dense
//! propagators for linear time-invariant systems.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Tridiagonal matrix stored by diagonals. `lower[i]` multiplies `x[i-1]` in
/// row `i` (so `lower[0]` is unused), `upper[i]` multiplies `x[i+1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    pub lower: Vec<f64>,
    pub diag: Vec<f64>,
    pub upper: Vec<f64>,
}

impl Tridiagonal {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut acc = self.diag[i] * x[i];
                if i > 0 {
                    acc += self.lower[i] * x[i - 1];
                }
                if i + 1 < n {
                    acc += self.upper[i] * x[i + 1];
                }
                acc
            })
            .collect()
    }

    /// `shift * I + scale * self`.
    pub fn shifted(&self, shift: f64, scale: f64) -> Self {
        Self {
            lower: self.lower.iter().map(|v| scale * v).collect(),
            diag: self.diag.iter().map(|v| shift + scale * v).collect(),
            upper: self.upper.iter().map(|v| scale * v).collect(),
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.len();
        DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                self.diag[i]
            } else if j + 1 == i {
                self.lower[i]
            } else if i + 1 == j {
                self.upper[i]
            } else {
                0.0
            }
        })
    }

    pub fn factor(&self, what: &'static str) -> Result<TridiagonalLu> {
        TridiagonalLu::new(self, what)
    }
}

/// Thomas-algorithm factorization, reusable across right-hand sides.
#[derive(Debug, Clone)]
pub struct TridiagonalLu {
    lower: Vec<f64>,
    upper_mod: Vec<f64>,
    inv_pivot: Vec<f64>,
}

impl TridiagonalLu {
    fn new(m: &Tridiagonal, what: &'static str) -> Result<Self> {
        let n = m.len();
        let mut upper_mod = vec![0.0; n];
        let mut inv_pivot = vec![0.0; n];
        let scale = m
            .diag
            .iter()
            .chain(&m.lower)
            .chain(&m.upper)
            .fold(0.0f64, |a, v| a.max(v.abs()));
        for i in 0..n {
            let pivot = if i == 0 {
                m.diag[0]
            } else {
                m.diag[i] - m.lower[i] * upper_mod[i - 1]
            };
            if pivot.abs() <= 1e-14 * scale {
                return Err(Error::SingularMatrix { what, row: i });
            }
            inv_pivot[i] = 1.0 / pivot;
            if i + 1 < n {
                upper_mod[i] = m.upper[i] * inv_pivot[i];
            }
        }
        Ok(Self {
            lower: m.lower.clone(),
            upper_mod,
            inv_pivot,
        })
    }

    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let n = self.inv_pivot.len();
        let mut y = vec![0.0; n];
        for i in 0..n {
            let prev = if i == 0 { 0.0 } else { self.lower[i] * y[i - 1] };
            y[i] = (rhs[i] - prev) * self.inv_pivot[i];
        }
        for i in (0..n.saturating_sub(1)).rev() {
            y[i] -= self.upper_mod[i] * y[i + 1];
        }
        y
    }
}

/// Time integrator family for linear systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Integrator {
    #[default]
    CrankNicolson,
    BackwardEuler,
}

impl Integrator {
    /// Implicitness weight of the theta scheme.
    pub fn theta(self) -> f64 {
        match self {
            Integrator::CrankNicolson => 0.5,
            Integrator::BackwardEuler => 1.0,
        }
    }
}

/// One-step map of `x' = M x + B d` under the theta scheme with `d` held
/// constant over the step:
///
/// `x+ = P x + G d`, `P = (I - theta dt M)^-1 (I + (1 - theta) dt M)`,
/// `G = dt (I - theta dt M)^-1 B`.
#[derive(Debug, Clone)]
pub struct Propagator {
    state: DMatrix<f64>,
    input: DMatrix<f64>,
}

impl Propagator {
    pub fn new(
        m: &DMatrix<f64>,
        b: &DMatrix<f64>,
        dt: f64,
        integrator: Integrator,
    ) -> Result<Self> {
        let n = m.nrows();
        let theta = integrator.theta();
        let identity = DMatrix::<f64>::identity(n, n);
        let lhs = &identity - m * (theta * dt);
        let explicit = &identity + m * ((1.0 - theta) * dt);
        let lu = lhs.lu();
        let state = lu
            .solve(&explicit)
            .ok_or(Error::SingularMatrix { what: "theta-scheme matrix", row: 0 })?;
        let input = if b.ncols() == 0 {
            DMatrix::zeros(n, 0)
        } else {
            lu.solve(&(b * dt))
                .ok_or(Error::SingularMatrix { what: "theta-scheme matrix", row: 0 })?
        };
        Ok(Self { state, input })
    }

    pub fn dim(&self) -> usize {
        self.state.nrows()
    }

    pub fn step(&self, x: &DVector<f64>, d: &DVector<f64>) -> DVector<f64> {
        let mut out = &self.state * x;
        if self.input.ncols() > 0 {
            out.gemv(1.0, &self.input, d, 1.0);
        }
        out
    }

    pub fn step_autonomous(&self, x: &DVector<f64>) -> DVector<f64> {
        &self.state * x
    }
}
