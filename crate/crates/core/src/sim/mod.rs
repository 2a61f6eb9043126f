//! Time stepping of the plant, the boundary observers and the closed loops.

mod closed_loop;
mod config;
mod observer;
mod plant;
mod series;

pub use closed_loop::{control_output_feedback, control_state_feedback, simulate, simulate_with};
pub use config::{InitialProfile, Integrator, NamedProfile, Scenario, ScenarioKind, SimConfig};
pub use observer::{Measurement, OneMeasurementObserver, TwoMeasurementObserver};
pub use plant::{plant_step, Plant};
pub use series::{Sample, TimeSeries};
