use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::config::RunConfig;
use crate::analysis::{
    elliptic_bound_check, fit_decay_rate, lyapunov_check, scenario_conditions, ConditionReport,
    DecayEstimate, EnvelopeReport,
};
use crate::error::{Error, Result};
use crate::fmt_f64;
use crate::model::{is_open_loop_stable, StabilityReport};
use crate::sim::{ScenarioKind, TimeSeries};

/// `t,norm_w,norm_v[,norm_ew,norm_ev][,u]`.
pub fn norms_csv(series: &TimeSeries) -> String {
    let obs = series.has_observer();
    let ctl = series.has_control();
    let mut out = String::from("t,norm_w,norm_v");
    if obs {
        out.push_str(",norm_ew,norm_ev");
    }
    if ctl {
        out.push_str(",u");
    }
    out.push('\n');
    for s in &series.samples {
        let _ = write!(out, "{},{},{}", fmt_f64(s.t), fmt_f64(s.norm_w), fmt_f64(s.norm_v));
        if obs {
            let _ = write!(
                out,
                ",{},{}",
                fmt_f64(s.norm_ew.unwrap_or(f64::NAN)),
                fmt_f64(s.norm_ev.unwrap_or(f64::NAN))
            );
        }
        if ctl {
            let _ = write!(out, ",{}", fmt_f64(s.u.unwrap_or(f64::NAN)));
        }
        out.push('\n');
    }
    out
}

/// Long format `t,x,w,v[,w_hat,v_hat]`, one line per record and node.
pub fn states_csv(series: &TimeSeries) -> String {
    let obs = series.has_observer();
    let mut out = String::from(if obs { "t,x,w,v,w_hat,v_hat\n" } else { "t,x,w,v\n" });
    for s in &series.samples {
        let t = fmt_f64(s.t);
        for (i, x) in series.grid.nodes().iter().enumerate() {
            let _ = write!(out, "{t},{},{},{}", fmt_f64(*x), fmt_f64(s.w[i]), fmt_f64(s.v[i]));
            if let (Some(wh), Some(vh)) = (&s.w_hat, &s.v_hat) {
                let _ = write!(out, ",{},{}", fmt_f64(wh[i]), fmt_f64(vh[i]));
            }
            out.push('\n');
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct DecaySummary {
    pub norm_w: Option<DecayEstimate>,
    pub norm_v: Option<DecayEstimate>,
    pub norm_ew: Option<DecayEstimate>,
    pub norm_ev: Option<DecayEstimate>,
}

impl DecaySummary {
    pub fn of(series: &TimeSeries) -> Self {
        let t = series.times();
        let fit = |v: Vec<f64>| {
            if v.len() == t.len() {
                fit_decay_rate(&t, &v, None).ok()
            } else {
                None
            }
        };
        Self {
            norm_w: fit(series.norm_w()),
            norm_v: fit(series.norm_v()),
            norm_ew: fit(series.norm_ew()),
            norm_ev: fit(series.norm_ev()),
        }
    }
}

/// Contents of `report.json`.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub config: RunConfig,
    pub open_loop: StabilityReport,
    pub conditions: Vec<ConditionReport>,
    pub decay: DecaySummary,
    pub lyapunov: Option<EnvelopeReport>,
    pub elliptic_bound: Option<EnvelopeReport>,
    pub warnings: Vec<String>,
}

impl RunReport {
    pub fn build(config: &RunConfig, series: &TimeSeries) -> Result<Self> {
        let grid = config.grid()?;
        let p = &config.params;
        let (lyapunov, elliptic_bound) = match (config.scenario.tag, config.scenario.c2) {
            (ScenarioKind::StateFeedback, Some(c2)) if p.gamma > 0.0 => (
                Some(lyapunov_check(series, c2, p)?),
                Some(elliptic_bound_check(series, c2, p)?),
            ),
            _ => (None, None),
        };
        Ok(Self {
            config: config.clone(),
            open_loop: is_open_loop_stable(p)?,
            conditions: scenario_conditions(&config.scenario, p, &grid)?,
            decay: DecaySummary::of(series),
            lyapunov,
            elliptic_bound,
            warnings: series.warnings.clone(),
        })
    }
}

fn write_file(path: PathBuf, contents: &str) -> Result<PathBuf> {
    std::fs::write(&path, contents).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

/// Writes `norms.csv`, optionally `states.csv`, and `report.json` into `dir`.
pub fn write_outputs(dir: &Path, config: &RunConfig, series: &TimeSeries) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = vec![write_file(dir.join("norms.csv"), &norms_csv(series))?];
    if config.output.states {
        written.push(write_file(dir.join("states.csv"), &states_csv(series))?);
    }
    let report = RunReport::build(config, series)?;
    let mut json = serde_json::to_string_pretty(&report)?;
    json.push('\n');
    written.push(write_file(dir.join("report.json"), &json)?);
    Ok(written)
}
