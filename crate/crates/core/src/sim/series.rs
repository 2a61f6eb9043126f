use serde::Serialize;

use super::config::ScenarioKind;
use crate::model::Grid;

/// One stored instant of a simulation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sample {
    pub t: f64,
    pub w: Vec<f64>,
    pub v: Vec<f64>,
    pub w_hat: Option<Vec<f64>>,
    pub v_hat: Option<Vec<f64>>,
    /// Applied boundary flux; `None` when no feedback is active.
    pub u: Option<f64>,
    pub norm_w: f64,
    pub norm_v: f64,
    pub norm_ew: Option<f64>,
    pub norm_ev: Option<f64>,
}

/// A recorded trajectory plus any warnings raised while setting it up.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub kind: ScenarioKind,
    pub grid: Grid,
    pub samples: Vec<Sample>,
    pub warnings: Vec<String>,
}

impl TimeSeries {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn times(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.t).collect()
    }

    pub fn norm_w(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.norm_w).collect()
    }

    pub fn norm_v(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.norm_v).collect()
    }

    /// Observer error norms; empty when the scenario has no observer.
    pub fn norm_ew(&self) -> Vec<f64> {
        self.samples.iter().filter_map(|s| s.norm_ew).collect()
    }

    pub fn norm_ev(&self) -> Vec<f64> {
        self.samples.iter().filter_map(|s| s.norm_ev).collect()
    }

    pub fn controls(&self) -> Vec<f64> {
        self.samples.iter().filter_map(|s| s.u).collect()
    }

    pub fn has_observer(&self) -> bool {
        self.samples.first().is_some_and(|s| s.w_hat.is_some())
    }

    pub fn has_control(&self) -> bool {
        self.samples.first().is_some_and(|s| s.u.is_some())
    }

    pub fn last(&self) -> Option<&Sample> {
        self.samples.last()
    }
}
