//! Command-line front end: config loading, scenario runs and file output.

mod config;
mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub use config::{load_config, GridSpec, OutputSpec, RunConfig, DEFAULT_INTERVALS};
pub use output::{norms_csv, states_csv, write_outputs, DecaySummary, RunReport};

use crate::analysis::{scenario_conditions, sweep_conditions, ConditionReport, SweepKind, SweepSpec};
use crate::error::{Error, Result};
use crate::fmt_f64;
use crate::kernels::{solve_kernel_numeric, KernelTable, Orientation};
use crate::model::{
    eigenvalue_analytic, is_open_loop_stable, rayleigh_check, DiscreteOperators, Grid,
    StabilityReport,
};
use crate::sim::simulate;

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "backstep", version, about = "Boundary control and observers for a coupled parabolic-elliptic system")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Which {
    Ka,
    La,
    Kb,
    Lb,
    NumericLower,
    NumericUpper,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the configured scenario and write norms.csv, states.csv, report.json.
    Simulate {
        config: PathBuf,
        /// Output directory (overrides `output.dir`).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the open-loop spectrum and the sufficient conditions only.
    Check { config: PathBuf },
    /// Dump a kernel table as CSV.
    Kernel {
        gain: f64,
        n_intervals: usize,
        #[arg(long, value_enum, default_value = "ka")]
        which: Which,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate a gain restriction against lines `gain + rho`.
    Sweep {
        config: PathBuf,
        /// Directory for sweep.csv and crossings.json; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Analytic eigenvalues next to Rayleigh quotients of the discrete operator.
    Eig {
        config: PathBuf,
        #[arg(long, default_value_t = 5)]
        modes: usize,
    },
}

#[derive(Serialize)]
struct CheckOutput {
    open_loop: StabilityReport,
    conditions: Vec<ConditionReport>,
}

fn write_text(path: &PathBuf, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn io_err(e: std::io::Error) -> Error {
    Error::io("<stdout>", e)
}

fn default_sweep(cfg: &RunConfig) -> SweepSpec {
    SweepSpec {
        kind: SweepKind::Controller,
        alpha: cfg.params.alpha,
        beta: cfg.params.beta,
        gamma: cfg.params.gamma,
        rhos: vec![cfg.params.rho],
        gain_min: 0.01,
        gain_max: 5.0,
        points: 200,
    }
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Simulate { config, out: dir } => {
            let cfg = load_config(&config)?;
            let grid = cfg.grid()?;
            let series = simulate(&cfg.scenario, &cfg.params, &grid, &cfg.sim)?;
            for w in &series.warnings {
                writeln!(err, "warning: {w}").map_err(io_err)?;
            }
            let dir = dir.unwrap_or_else(|| cfg.output.dir.clone());
            for p in write_outputs(&dir, &cfg, &series)? {
                writeln!(out, "{}", p.display()).map_err(io_err)?;
            }
        }
        Command::Check { config } => {
            let cfg = load_config(&config)?;
            let report = CheckOutput {
                open_loop: is_open_loop_stable(&cfg.params)?,
                conditions: scenario_conditions(&cfg.scenario, &cfg.params, &cfg.grid()?)?,
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&report)?).map_err(io_err)?;
        }
        Command::Kernel { gain, n_intervals, which, out: path } => {
            let grid = Grid::new(n_intervals)?;
            let table = match which {
                Which::Ka => KernelTable::ka(gain, &grid)?,
                Which::La => KernelTable::la(gain, &grid)?,
                Which::Kb => KernelTable::kb(gain, &grid)?,
                Which::Lb => KernelTable::lb(gain, &grid)?,
                Which::NumericLower => solve_kernel_numeric(gain, &grid, Orientation::Lower)?,
                Which::NumericUpper => solve_kernel_numeric(gain, &grid, Orientation::Upper)?,
            };
            let csv = table.to_csv();
            match path {
                Some(p) => write_text(&p, &csv)?,
                None => out.write_all(csv.as_bytes()).map_err(io_err)?,
            }
        }
        Command::Sweep { config, out: dir } => {
            let cfg = load_config(&config)?;
            let spec = cfg.sweep.clone().unwrap_or_else(|| default_sweep(&cfg));
            let table = sweep_conditions(&spec)?;
            let csv = table.to_csv();
            match dir {
                Some(d) => {
                    std::fs::create_dir_all(&d).map_err(|e| Error::io(&d, e))?;
                    write_text(&d.join("sweep.csv"), &csv)?;
                    let mut json = serde_json::to_string_pretty(&table.crossings())?;
                    json.push('\n');
                    write_text(&d.join("crossings.json"), &json)?;
                }
                None => out.write_all(csv.as_bytes()).map_err(io_err)?,
            }
        }
        Command::Eig { config, modes } => {
            let cfg = load_config(&config)?;
            let ops = DiscreteOperators::new(&cfg.params, &cfg.grid()?)?;
            let mut csv = String::from("n,lambda_analytic,lambda_rayleigh\n");
            for n in 0..modes {
                let exact = eigenvalue_analytic(n, &cfg.params)?;
                let rq = rayleigh_check(n, &ops).map(fmt_f64).unwrap_or_default();
                csv.push_str(&format!("{n},{},{rq}\n", fmt_f64(exact)));
            }
            out.write_all(csv.as_bytes()).map_err(io_err)?;
        }
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_RUNTIME
        }
    }
}
