//! Command-line workflows: `simulate`, `analytic`, `track` and `check`.
//!
//! Exit codes: 0 success, 1 configuration error, 2 solver did not converge
//! (or a check failed), 3 internal or domain error.

mod check;
mod config;
mod output;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};

pub use check::{run_checks, CheckResult, CheckTable};
pub use config::{parse_config, ExperimentConfig, ReferenceSpec, PARTICLE, TRACK_ONLY_KEYS};
pub use output::{gnuplot_script, read_csv, trajectory_table, write_csv, CsvTable, RunReport, CSV_HEADER};

use crate::error::{Error, Result};
use crate::geom::{AdaptedState, Control, FreeFlow};
use crate::integrate::integrate;
use crate::particle::{analytic_constants, analytic_flow, particle_system};
use crate::pmp::{uncontrolled_cost, Costate};
use crate::shoot::solve_tracking;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Uncontrolled reduced flow integrated with RK4.
    Simulate,
    /// Closed-form uncontrolled flow of the particle.
    Analytic,
    /// Optimal tracking of the reference by single shooting.
    Track,
    /// Run the invariant suite and print a pass/fail table.
    Check,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    ConfigError = 1,
    NotConverged = 2,
    Internal = 3,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

/// Optimal tracking for the nonholonomic particle.
///
/// The terminal weight omega defaults to 1. Config files hold `key = value`
/// lines; command-line flags override them.
#[derive(Debug, Parser)]
#[command(name = "nhtrack", version)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Experiment file (`key = value` lines, `#` comments).
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory (overrides `output_dir`).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Horizon T.
    #[arg(long = "T", value_name = "T")]
    pub horizon: Option<String>,
    /// Control weight epsilon (> 0).
    #[arg(long)]
    pub epsilon: Option<String>,
    /// Terminal weight omega (default 1).
    #[arg(long)]
    pub omega: Option<String>,
    /// Number of RK4 steps on [0, T].
    #[arg(long)]
    pub steps: Option<String>,
}

/// Files and text produced by a run.
#[derive(Debug)]
pub struct Outcome {
    pub exit: Exit,
    pub files: Vec<PathBuf>,
    pub stdout: String,
}

/// Reads the config file and applies command-line overrides.
pub fn load_config(cli: &Cli) -> Result<ExperimentConfig> {
    let text = fs::read_to_string(&cli.config).map_err(|source| Error::Io {
        path: cli.config.clone(),
        source,
    })?;
    let mut cfg = parse_config(&text)?;
    let overrides = [
        ("T", &cli.horizon),
        ("epsilon", &cli.epsilon),
        ("omega", &cli.omega),
        ("steps", &cli.steps),
    ];
    for (key, value) in overrides {
        if let Some(v) = value {
            cfg.set(key, v)
                .map_err(|m| Error::InvalidArgument(format!("--{key}: {m}")))?;
        }
    }
    if let Some(out) = &cli.out {
        cfg.output_dir = out.clone();
    }
    Ok(cfg)
}

fn prepare_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn uncontrolled_table(cfg: &ExperimentConfig, states: Vec<AdaptedState>, times: &[f64]) -> Result<CsvTable> {
    let n = times.len();
    trajectory_table(
        times,
        &states,
        &vec![Control::zeros(2); n],
        &vec![Costate::zeros(3, 2); n],
        &cfg.reference_trajectory()?,
    )
}

fn abs_errors(s: &AdaptedState, r: &AdaptedState) -> [f64; 5] {
    let mut e = [0.0; 5];
    for (slot, (a, b)) in e.iter_mut().zip(s.to_vec().iter().zip(r.to_vec())) {
        *slot = (a - b).abs();
    }
    e
}

/// Runs one workflow. Errors are returned for the caller to map onto exit codes.
pub fn run(command: Command, cfg: &ExperimentConfig) -> Result<Outcome> {
    let dir = &cfg.output_dir;
    let s0 = cfg.initial();
    particle_system().check_state(&s0)?;
    match command {
        Command::Simulate => {
            prepare_dir(dir)?;
            let sys = particle_system();
            let traj = integrate(&FreeFlow::new(&sys), 0.0, &s0.to_vec(), cfg.horizon, cfg.steps)?;
            let states = traj.iter().map(|(_, x)| AdaptedState::from_flat(x, 3)).collect();
            let path = dir.join("simulate.csv");
            write_csv(&uncontrolled_table(cfg, states, traj.times())?, &path)?;
            Ok(Outcome {
                exit: Exit::Success,
                stdout: format!("wrote {}\n", path.display()),
                files: vec![path],
            })
        }
        Command::Analytic => {
            prepare_dir(dir)?;
            let params = analytic_constants(&s0);
            let h = cfg.horizon / cfg.steps as f64;
            let times: Vec<f64> = (0..=cfg.steps).map(|i| i as f64 * h).collect();
            let states = times.iter().map(|&t| analytic_flow(&params, t)).collect();
            let path = dir.join("analytic.csv");
            write_csv(&uncontrolled_table(cfg, states, &times)?, &path)?;
            Ok(Outcome {
                exit: Exit::Success,
                stdout: format!("wrote {}\n", path.display()),
                files: vec![path],
            })
        }
        Command::Track => {
            let prob = cfg.tracking_problem()?;
            let report = solve_tracking(&prob, &cfg.alpha0, &cfg.newton)?;
            prepare_dir(dir)?;
            let times = report.trajectory.times().to_vec();
            let coupled: Vec<_> = (0..times.len()).map(|i| report.coupled_state(i, &prob)).collect();
            let states: Vec<AdaptedState> = coupled.iter().map(|c| c.s.clone()).collect();
            let costates: Vec<Costate> = coupled.iter().map(|c| c.p.clone()).collect();
            let table = trajectory_table(&times, &states, &report.controls, &costates, &prob.reference)?;
            let csv = dir.join("track.csv");
            write_csv(&table, &csv)?;

            let end = states.last().expect("grid has at least two points");
            let run_report = RunReport {
                config_echo: cfg.to_string(),
                converged: report.converged,
                iterations: report.iterations,
                residual_norms: report.residual_norms.clone(),
                final_residual: report.final_residual.clone(),
                alpha_star: report.alpha_star.clone(),
                cost: report.cost,
                uncontrolled_cost: uncontrolled_cost(&prob)?,
                initial_errors: abs_errors(&s0, &prob.reference.sample(0.0)),
                terminal_errors: abs_errors(end, &prob.reference.sample(prob.horizon)),
                max_control: report.max_control(),
            };
            let text = run_report.to_string();
            let report_path = dir.join("report.txt");
            write_text(&report_path, &text)?;
            let plot = dir.join("track.gp");
            write_text(&plot, &gnuplot_script("track.csv"))?;
            Ok(Outcome {
                exit: if report.converged {
                    Exit::Success
                } else {
                    Exit::NotConverged
                },
                files: vec![csv, report_path, plot],
                stdout: text,
            })
        }
        Command::Check => {
            let table = run_checks(&s0, cfg.horizon, cfg.steps)?;
            let text = table.to_string();
            prepare_dir(dir)?;
            let path = dir.join("check.txt");
            write_text(&path, &text)?;
            Ok(Outcome {
                exit: if table.all_passed() {
                    Exit::Success
                } else {
                    Exit::NotConverged
                },
                files: vec![path],
                stdout: text,
            })
        }
    }
}

/// Exit status for a failed run.
pub fn classify(e: &Error) -> Exit {
    match e {
        Error::Config { .. } => Exit::ConfigError,
        Error::SingularJacobian { .. } | Error::NonFiniteJacobian { .. } => Exit::NotConverged,
        _ => Exit::Internal,
    }
}

/// Entry point shared by the binary and the tests; returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    // Reserved; the solver has no random component.
    let _ = std::env::var_os("NHTRACK_SEEDLESS");
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { Exit::ConfigError.code() } else { Exit::Success.code() };
            let _ = e.print();
            return code;
        }
    };
    let cfg = match load_config(&cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return Exit::ConfigError.code();
        }
    };
    if cli.command != Command::Track {
        let mut ignored = cfg.track_only_keys_set();
        for (key, set) in [("epsilon", cli.epsilon.is_some()), ("omega", cli.omega.is_some())] {
            if set && !ignored.contains(&key) {
                ignored.push(key);
            }
        }
        if !ignored.is_empty() {
            eprintln!("warning: {} ignored by this command", ignored.join(", "));
        }
    }
    match run(cli.command, &cfg) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            if outcome.exit == Exit::NotConverged {
                eprintln!("error: target not met (see {})", cfg.output_dir.display());
            }
            outcome.exit.code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            classify(&e).code()
        }
    }
}
