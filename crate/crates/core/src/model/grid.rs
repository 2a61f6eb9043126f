use crate::error::{Error, Result};

/// Smallest mesh accepted.
pub const MIN_INTERVALS: usize = 8;

/// Uniform mesh on `[0, 1]` with `n` intervals and `n + 1` nodes.
///
/// All inner products and norms in the crate use the composite trapezoid
/// weights of this mesh, so discrete `L2` quantities approximate their
/// continuous counterparts to second order.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    n: usize,
    h: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Grid {
    pub fn new(n_intervals: usize) -> Result<Self> {
        if n_intervals < MIN_INTERVALS {
            return Err(Error::invalid(
                "n_intervals",
                format!("need at least {MIN_INTERVALS} intervals, got {n_intervals}"),
            ));
        }
        let h = 1.0 / n_intervals as f64;
        let nodes = (0..=n_intervals).map(|i| i as f64 * h).collect();
        let mut weights = vec![h; n_intervals + 1];
        weights[0] = 0.5 * h;
        weights[n_intervals] = 0.5 * h;
        Ok(Self {
            n: n_intervals,
            h,
            nodes,
            weights,
        })
    }

    pub fn n_intervals(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.n + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn x(&self, i: usize) -> f64 {
        self.nodes[i]
    }

    /// Trapezoid weights over the whole interval.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Trapezoid weight of node `j` for an integral over `[x_lo, x_hi]`
    /// where `lo <= j <= hi` are node indices.
    #[inline]
    pub fn partial_weight(&self, lo: usize, hi: usize, j: usize) -> f64 {
        if lo == hi {
            0.0
        } else if j == lo || j == hi {
            0.5 * self.h
        } else {
            self.h
        }
    }

    pub fn sample(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        self.nodes.iter().map(|&x| f(x)).collect()
    }

    pub fn check(&self, f: &[f64]) -> Result<()> {
        if f.len() != self.len() {
            return Err(Error::GridMismatch {
                expected: self.len(),
                actual: f.len(),
            });
        }
        Ok(())
    }

    pub fn integrate(&self, f: &[f64]) -> f64 {
        self.weights.iter().zip(f).map(|(w, v)| w * v).sum()
    }

    pub fn inner(&self, f: &[f64], g: &[f64]) -> f64 {
        self.weights
            .iter()
            .zip(f.iter().zip(g))
            .map(|(w, (a, b))| w * a * b)
            .sum()
    }

    pub fn norm(&self, f: &[f64]) -> f64 {
        self.inner(f, f).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_coarse_meshes() {
        assert!(Grid::new(7).is_err());
        assert!(Grid::new(8).is_ok());
    }

    #[test]
    fn nodes_span_unit_interval() {
        let g = Grid::new(16).unwrap();
        assert_eq!(g.len(), 17);
        assert_eq!(g.x(0), 0.0);
        assert_eq!(g.x(16), 1.0);
        assert!(g.nodes().windows(2).all(|w| w[1] > w[0]));
        assert!((g.weights().iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn trapezoid_norm_is_second_order() {
        let exact = 0.2f64.sqrt();
        let err = |n| {
            let g = Grid::new(n).unwrap();
            (g.norm(&g.sample(|x| x * x)) - exact).abs()
        };
        let ratio = err(32) / err(64);
        assert!(ratio > 3.8 && ratio < 4.2, "ratio {ratio}");
    }

    #[test]
    fn mismatch_detected() {
        let g = Grid::new(8).unwrap();
        assert!(g.check(&[0.0; 9]).is_ok());
        assert!(matches!(
            g.check(&[0.0; 5]),
            Err(Error::GridMismatch { expected: 9, actual: 5 })
        ));
    }
}
