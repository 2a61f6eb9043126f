use nalgebra::{DMatrix, DVector};

use super::{Grid, SystemParams};
use crate::error::{Error, Result};
use crate::linalg::{Tridiagonal, TridiagonalLu};

/// Maximum-norm residual tolerated for the elliptic constraint.
pub const ELLIPTIC_RESIDUAL_TOL: f64 = 1e-10;

/// Second-difference operator with homogeneous Neumann ghost closure.
///
/// Row 0 is `(2/h^2)(w_1 - w_0)`, row `N` is `(2/h^2)(w_{N-1} - w_N)`; a flux
/// `w_x(1) = u` enters as `(2/h) u` at node `N` (see [`boundary_injection`]).
pub fn neumann_laplacian(grid: &Grid) -> Tridiagonal {
    let n = grid.len();
    let h2 = grid.h() * grid.h();
    let mut lower = vec![1.0 / h2; n];
    let diag = vec![-2.0 / h2; n];
    let mut upper = vec![1.0 / h2; n];
    lower[0] = 0.0;
    upper[n - 1] = 0.0;
    upper[0] = 2.0 / h2;
    lower[n - 1] = 2.0 / h2;
    Tridiagonal { lower, diag, upper }
}

/// Eigenvalues of `-D2`: `(4/h^2) sin^2(k pi / 2N)`, `k = 0..=N`, eigenvectors
/// `cos(k pi x_i)`.
pub fn neumann_eigenvalue(grid: &Grid, k: usize) -> f64 {
    let s = (k as f64 * std::f64::consts::PI / (2.0 * grid.n_intervals() as f64)).sin();
    4.0 * s * s / (grid.h() * grid.h())
}

/// `(2/h) e_N`: how a boundary flux enters the semi-discrete equations.
pub fn boundary_injection(grid: &Grid) -> Vec<f64> {
    let mut b = vec![0.0; grid.len()];
    b[grid.n_intervals()] = 2.0 / grid.h();
    b
}

/// Fails if `shift I - D2` is (numerically) singular, naming the mode.
pub fn check_discrete_shift(grid: &Grid, shift: f64) -> Result<()> {
    for k in 0..=grid.n_intervals() {
        let mu = neumann_eigenvalue(grid, k);
        if (shift + mu).abs() <= 1e-9 * mu.max(1.0) {
            return Err(Error::SingularElliptic {
                mode: k,
                shift,
                eigenvalue: -mu,
            });
        }
    }
    Ok(())
}

/// Cached spatial operators for one `(params, grid)` pair.
///
/// Holds the Neumann Laplacian `D2`, a factorization of `gamma I - D2`, its
/// dense inverse `S`, and the reduced open-loop generator
/// `A = D2 - rho I + alpha beta S` obtained by eliminating `v`.
#[derive(Debug, Clone)]
pub struct DiscreteOperators {
    grid: Grid,
    params: SystemParams,
    d2: Tridiagonal,
    elliptic: Tridiagonal,
    elliptic_lu: TridiagonalLu,
    inverse: DMatrix<f64>,
    a_open: DMatrix<f64>,
}

impl DiscreteOperators {
    pub fn new(params: &SystemParams, grid: &Grid) -> Result<Self> {
        check_discrete_shift(grid, params.gamma)?;
        let d2 = neumann_laplacian(grid);
        let elliptic = d2.shifted(params.gamma, -1.0);
        let elliptic_lu = elliptic.factor("elliptic operator")?;
        let n = grid.len();
        let mut inverse = DMatrix::zeros(n, n);
        let mut unit = vec![0.0; n];
        for j in 0..n {
            unit[j] = 1.0;
            let col = elliptic_lu.solve(&unit);
            inverse.set_column(j, &DVector::from_vec(col));
            unit[j] = 0.0;
        }
        let mut a_open = d2.to_dense() + &inverse * params.coupling();
        for i in 0..n {
            a_open[(i, i)] -= params.rho;
        }
        Ok(Self {
            grid: grid.clone(),
            params: *params,
            d2,
            elliptic,
            elliptic_lu,
            inverse,
            a_open,
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn params(&self) -> &SystemParams {
        &self.params
    }

    pub fn d2(&self) -> &Tridiagonal {
        &self.d2
    }

    /// `gamma I - D2`.
    pub fn elliptic_operator(&self) -> &Tridiagonal {
        &self.elliptic
    }

    /// Dense `(gamma I - D2)^-1`.
    pub fn elliptic_inverse(&self) -> &DMatrix<f64> {
        &self.inverse
    }

    /// Reduced generator `D2 - rho I + alpha beta (gamma I - D2)^-1`.
    pub fn a_open(&self) -> &DMatrix<f64> {
        &self.a_open
    }

    /// `(gamma I - D2)^-1 f`.
    pub fn solve_shifted(&self, f: &[f64]) -> Result<Vec<f64>> {
        self.grid.check(f)?;
        Ok(self.elliptic_lu.solve(f))
    }

    /// Solves `(gamma I - D2) v = beta w`.
    pub fn elliptic_solve(&self, w: &[f64]) -> Result<Vec<f64>> {
        self.grid.check(w)?;
        let rhs: Vec<f64> = w.iter().map(|x| self.params.beta * x).collect();
        Ok(self.elliptic_lu.solve(&rhs))
    }

    /// Max-norm residual of `(gamma I - D2) v - beta w`.
    pub fn elliptic_residual(&self, w: &[f64], v: &[f64]) -> f64 {
        self.elliptic
            .apply(v)
            .iter()
            .zip(w)
            .map(|(lhs, wi)| (lhs - self.params.beta * wi).abs())
            .fold(0.0, f64::max)
    }

    /// Action of the reduced generator, computed with a fresh elliptic solve.
    pub fn apply_a(&self, w: &[f64]) -> Result<Vec<f64>> {
        let s = self.solve_shifted(w)?;
        let d = self.d2.apply(w);
        let ab = self.params.coupling();
        Ok(d.iter()
            .zip(w.iter().zip(&s))
            .map(|(di, (wi, si))| di - self.params.rho * wi + ab * si)
            .collect())
    }
}

/// Parabolic field `w` and elliptic field `v` at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct CoupledState {
    pub w: Vec<f64>,
    pub v: Vec<f64>,
}

impl CoupledState {
    /// Builds a consistent state by solving the elliptic constraint for `v`.
    pub fn from_w(w: Vec<f64>, ops: &DiscreteOperators) -> Result<Self> {
        let v = ops.elliptic_solve(&w)?;
        Ok(Self { w, v })
    }

    pub fn zeros(grid: &Grid) -> Self {
        Self {
            w: vec![0.0; grid.len()],
            v: vec![0.0; grid.len()],
        }
    }
}
