use serde::{Deserialize, Serialize};

use super::conditions::{controller_rhs, observer1_compact_rhs, observer1_bounds_rhs};
use crate::error::{Error, Result};
use crate::fmt_f64;

/// Which gain restriction to tabulate. Each has the form `g + rho > rhs(g)`
/// with `rhs` independent of `rho`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepKind {
    /// Controller gain `c2`, closed-form norm bounds.
    Controller,
    /// Single-measurement observer gain `o2`, compact closed-form condition.
    ObserverSingle,
    /// Single-measurement observer gain `o2`, norm condition with closed-form bounds.
    ObserverSingleBounds,
}

impl SweepKind {
    pub fn rhs(self, gain: f64, alpha: f64, beta: f64, gamma: f64) -> Result<f64> {
        match self {
            SweepKind::Controller => controller_rhs(gain, alpha, beta, gamma),
            SweepKind::ObserverSingle => observer1_compact_rhs(gain, alpha, beta, gamma),
            SweepKind::ObserverSingleBounds => observer1_bounds_rhs(gain, alpha, beta, gamma),
        }
    }
}

/// Inputs of a condition sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub kind: SweepKind,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub rhos: Vec<f64>,
    pub gain_min: f64,
    pub gain_max: f64,
    pub points: usize,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        let finite = [self.alpha, self.beta, self.gamma, self.gain_min, self.gain_max]
            .iter()
            .chain(&self.rhos)
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::invalid("sweep", "all values must be finite"));
        }
        if !(self.gamma > 0.0) {
            return Err(Error::invalid("sweep.gamma", "must be positive"));
        }
        if !(self.gain_min > 0.0) || self.gain_max < self.gain_min {
            return Err(Error::invalid("sweep.gain_min", "need 0 < gain_min <= gain_max"));
        }
        if self.points == 0 || (self.points == 1 && self.gain_max != self.gain_min) {
            return Err(Error::invalid(
                "sweep.points",
                "need at least one point, and two for a nonempty range",
            ));
        }
        Ok(())
    }

    pub fn gains(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.gain_min];
        }
        let step = (self.gain_max - self.gain_min) / (self.points - 1) as f64;
        (0..self.points)
            .map(|k| {
                if k + 1 == self.points {
                    self.gain_max
                } else {
                    self.gain_min + k as f64 * step
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub gain: f64,
    pub rhs: f64,
    /// `gain + rho` for each `rho`.
    pub lhs: Vec<f64>,
    pub satisfied: Vec<bool>,
}

/// Where `gain + rho - rhs(gain)` changes sign, by linear interpolation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Crossing {
    pub rho: f64,
    pub gain: f64,
    /// True when the condition becomes satisfied as the gain increases.
    pub entering: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub kind: SweepKind,
    pub rhos: Vec<f64>,
    pub rows: Vec<SweepRow>,
}

pub fn sweep_conditions(spec: &SweepSpec) -> Result<SweepTable> {
    spec.validate()?;
    let rows = spec
        .gains()
        .into_iter()
        .map(|g| {
            let rhs = spec.kind.rhs(g, spec.alpha, spec.beta, spec.gamma)?;
            let lhs: Vec<f64> = spec.rhos.iter().map(|r| g + r).collect();
            let satisfied = lhs.iter().map(|&l| l > rhs).collect();
            Ok(SweepRow { gain: g, rhs, lhs, satisfied })
        })
        .collect::<Result<_>>()?;
    Ok(SweepTable {
        kind: spec.kind,
        rhos: spec.rhos.clone(),
        rows,
    })
}

impl SweepTable {
    /// Header `param,rhs,lhs_rho_<v>...,satisfied_<v>...`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("param,rhs");
        for r in &self.rhos {
            out.push_str(&format!(",lhs_rho_{r}"));
        }
        for r in &self.rhos {
            out.push_str(&format!(",satisfied_{r}"));
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(&fmt_f64(row.gain));
            out.push(',');
            out.push_str(&fmt_f64(row.rhs));
            for l in &row.lhs {
                out.push(',');
                out.push_str(&fmt_f64(*l));
            }
            for s in &row.satisfied {
                out.push_str(if *s { ",1" } else { ",0" });
            }
            out.push('\n');
        }
        out
    }

    pub fn crossings(&self) -> Vec<Crossing> {
        let mut out = Vec::new();
        for (k, &rho) in self.rhos.iter().enumerate() {
            for pair in self.rows.windows(2) {
                let m0 = pair[0].lhs[k] - pair[0].rhs;
                let m1 = pair[1].lhs[k] - pair[1].rhs;
                if (m0 > 0.0) != (m1 > 0.0) {
                    let s = m0 / (m0 - m1);
                    out.push(Crossing {
                        rho,
                        gain: pair[0].gain + s * (pair[1].gain - pair[0].gain),
                        entering: m1 > 0.0,
                    });
                }
            }
        }
        out
    }
}
