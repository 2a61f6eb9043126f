use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
pub use crate::linalg::Integrator;
use crate::model::Grid;

fn default_dt() -> f64 {
    1e-3
}
fn default_t_final() -> f64 {
    10.0
}
fn default_record_every() -> usize {
    50
}

/// Time-integration settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    #[serde(default = "default_dt")]
    pub dt: f64,
    #[serde(default = "default_t_final")]
    pub t_final: f64,
    /// Store every k-th step (the first and last steps are always stored).
    #[serde(default = "default_record_every")]
    pub record_every: usize,
    #[serde(default)]
    pub integrator: Integrator,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            dt: default_dt(),
            t_final: default_t_final(),
            record_every: default_record_every(),
            integrator: Integrator::default(),
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::invalid("sim.dt", "must be positive"));
        }
        if !(self.t_final >= self.dt) || !self.t_final.is_finite() {
            return Err(Error::invalid("sim.t_final", "must be at least dt"));
        }
        if self.record_every == 0 {
            return Err(Error::invalid("sim.record_every", "must be at least 1"));
        }
        Ok(())
    }

    pub fn n_steps(&self) -> usize {
        (self.t_final / self.dt).round() as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioKind {
    OpenLoop,
    StateFeedback,
    ObserverTwoMeas,
    ObserverOneMeas,
    OutputFeedback,
}

impl ScenarioKind {
    pub fn has_observer(self) -> bool {
        matches!(
            self,
            ScenarioKind::ObserverTwoMeas | ScenarioKind::ObserverOneMeas | ScenarioKind::OutputFeedback
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioKind::OpenLoop => "open-loop",
            ScenarioKind::StateFeedback => "state-feedback",
            ScenarioKind::ObserverTwoMeas => "observer-two-meas",
            ScenarioKind::ObserverOneMeas => "observer-one-meas",
            ScenarioKind::OutputFeedback => "output-feedback",
        }
    }
}

/// Named initial profiles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum NamedProfile {
    Zero,
    Constant {
        value: f64,
    },
    /// `amplitude * sin(mode pi x)`
    Sin {
        #[serde(default = "one_usize")]
        mode: usize,
        #[serde(default = "one_f64")]
        amplitude: f64,
    },
    /// `amplitude * cos(mode pi x)`
    Cos {
        #[serde(default = "one_usize")]
        mode: usize,
        #[serde(default = "one_f64")]
        amplitude: f64,
    },
}

fn one_usize() -> usize {
    1
}
fn one_f64() -> f64 {
    1.0
}

/// An initial field: a named profile or explicit nodal samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InitialProfile {
    Samples(Vec<f64>),
    Named(NamedProfile),
}

impl InitialProfile {
    pub fn sin(mode: usize) -> Self {
        InitialProfile::Named(NamedProfile::Sin { mode, amplitude: 1.0 })
    }

    pub fn cos(mode: usize) -> Self {
        InitialProfile::Named(NamedProfile::Cos { mode, amplitude: 1.0 })
    }

    pub fn zero() -> Self {
        InitialProfile::Named(NamedProfile::Zero)
    }

    pub fn sample(&self, grid: &Grid) -> Result<Vec<f64>> {
        let v = match self {
            InitialProfile::Samples(s) => {
                grid.check(s)?;
                s.clone()
            }
            InitialProfile::Named(NamedProfile::Zero) => vec![0.0; grid.len()],
            InitialProfile::Named(NamedProfile::Constant { value }) => vec![*value; grid.len()],
            InitialProfile::Named(NamedProfile::Sin { mode, amplitude }) => {
                let k = *mode as f64 * PI;
                grid.sample(|x| amplitude * (k * x).sin())
            }
            InitialProfile::Named(NamedProfile::Cos { mode, amplitude }) => {
                let k = *mode as f64 * PI;
                grid.sample(|x| amplitude * (k * x).cos())
            }
        };
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("initial profile", "samples must be finite"));
        }
        Ok(v)
    }

    /// The same profile multiplied by `a`, as explicit samples.
    pub fn scaled(&self, a: f64, grid: &Grid) -> Result<Self> {
        Ok(InitialProfile::Samples(
            self.sample(grid)?.into_iter().map(|v| a * v).collect(),
        ))
    }
}

fn default_w0() -> InitialProfile {
    InitialProfile::sin(1)
}

/// One experiment: which loop is closed, with which gains, from which data.
///
/// Observer scenarios apply state feedback `u = K w` when `c2` is given and
/// `u = 0` otherwise; output feedback applies `u = K w_hat`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub tag: ScenarioKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub o2: Option<f64>,
    #[serde(default = "default_w0")]
    pub initial_w: InitialProfile,
    #[serde(default = "InitialProfile::zero")]
    pub initial_w_hat: InitialProfile,
}

impl Scenario {
    pub fn new(tag: ScenarioKind) -> Self {
        Self {
            tag,
            c2: None,
            o2: None,
            initial_w: default_w0(),
            initial_w_hat: InitialProfile::zero(),
        }
    }

    pub fn with_c2(mut self, c2: f64) -> Self {
        self.c2 = Some(c2);
        self
    }

    pub fn with_o2(mut self, o2: f64) -> Self {
        self.o2 = Some(o2);
        self
    }

    pub fn with_initial(mut self, w: InitialProfile, w_hat: InitialProfile) -> Self {
        self.initial_w = w;
        self.initial_w_hat = w_hat;
        self
    }

    pub fn validate(&self, grid: &Grid) -> Result<()> {
        let need_c2 = matches!(self.tag, ScenarioKind::StateFeedback | ScenarioKind::OutputFeedback);
        let need_o2 = self.tag.has_observer();
        let check = |name: &'static str, v: Option<f64>, required: bool| -> Result<()> {
            match v {
                None if required => Err(Error::invalid(name, format!("required by `{}`", self.tag.as_str()))),
                Some(g) if !(g > 0.0) || !g.is_finite() => {
                    Err(Error::invalid(name, format!("must be positive, got {g}")))
                }
                _ => Ok(()),
            }
        };
        check("scenario.c2", self.c2, need_c2)?;
        check("scenario.o2", self.o2, need_o2)?;
        self.initial_w.sample(grid)?;
        self.initial_w_hat.sample(grid)?;
        Ok(())
    }

    /// Controller gain actually applied, if any.
    pub fn control_gain(&self) -> Option<f64> {
        match self.tag {
            ScenarioKind::OpenLoop => None,
            _ => self.c2,
        }
    }
}
