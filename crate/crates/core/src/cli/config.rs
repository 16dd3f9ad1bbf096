//! `key = value` experiment files.

use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::geom::AdaptedState;
use crate::particle::particle_system;
use crate::pmp::{AdjointMode, ReferenceTrajectory, TrackingProblem, Transversality};
use crate::shoot::NewtonConfig;

pub const PARTICLE: &str = "nonholonomic-particle";

/// Keys that only influence `track`; setting them for other commands is warned about.
pub const TRACK_ONLY_KEYS: &[&str] = &[
    "epsilon",
    "omega",
    "adjoint_mode",
    "transversality",
    "full_transversality",
    "alpha0",
    "newton_tol",
    "newton_max_iters",
    "newton_fd_step",
];

#[derive(Debug, Clone, PartialEq)]
pub enum ReferenceSpec {
    /// `(x_r, 0, z₀ + s·t; 0, s)`.
    ConstantZLine { x_r: f64, z_offset: f64, speed: f64 },
    /// Free motion from `start` (the initial state when `None`).
    FreeFlow { start: Option<[f64; 5]> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub system: String,
    /// `(x, y, z, v¹, v²)`.
    pub initial_state: [f64; 5],
    pub reference: ReferenceSpec,
    pub horizon: f64,
    pub steps: usize,
    pub epsilon: f64,
    pub omega: f64,
    pub adjoint_mode: AdjointMode,
    pub transversality: Transversality,
    pub full_transversality: bool,
    pub alpha0: [f64; 5],
    pub newton: NewtonConfig,
    pub output_dir: PathBuf,
    /// Keys given explicitly, by their canonical name.
    pub explicit: BTreeSet<String>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            system: PARTICLE.to_string(),
            initial_state: [0.5, 0.2, 0.7, 0.5, 0.4],
            reference: ReferenceSpec::ConstantZLine {
                x_r: 1.0,
                z_offset: 1.0,
                speed: 1.0,
            },
            horizon: 4.0,
            steps: 4000,
            epsilon: 7.0,
            omega: 1.0,
            adjoint_mode: AdjointMode::Derived,
            transversality: Transversality::Consistent,
            full_transversality: true,
            alpha0: [0.0; 5],
            newton: NewtonConfig::default(),
            output_dir: PathBuf::from("out"),
            explicit: BTreeSet::new(),
        }
    }
}

fn parse_f64(value: &str) -> std::result::Result<f64, String> {
    let x: f64 = value
        .parse()
        .map_err(|_| format!("`{value}` is not a number"))?;
    if !x.is_finite() {
        return Err(format!("`{value}` is not finite"));
    }
    Ok(x)
}

fn parse_positive(value: &str) -> std::result::Result<f64, String> {
    let x = parse_f64(value)?;
    if x <= 0.0 {
        return Err(format!("must be > 0, got {x}"));
    }
    Ok(x)
}

fn parse_count(value: &str) -> std::result::Result<usize, String> {
    let n: usize = value
        .parse()
        .map_err(|_| format!("`{value}` is not a non-negative integer"))?;
    if n == 0 {
        return Err("must be at least 1".into());
    }
    Ok(n)
}

fn parse_vec5(value: &str) -> std::result::Result<[f64; 5], String> {
    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
    if parts.len() != 5 {
        return Err(format!("expected 5 comma-separated numbers, got {}", parts.len()));
    }
    let mut out = [0.0; 5];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = parse_f64(p)?;
    }
    Ok(out)
}

fn parse_bool(value: &str) -> std::result::Result<bool, String> {
    match value {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        other => Err(format!("`{other}` is not a boolean")),
    }
}

fn canonical(key: &str) -> String {
    if key == "T" {
        return key.to_string();
    }
    key.replace('-', "_")
}

impl ExperimentConfig {
    /// Sets one key. Errors name the violated rule; the caller adds location.
    pub fn set(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        let key = canonical(key);
        let value = value.trim();
        match key.as_str() {
            "system" => {
                if value != PARTICLE {
                    return Err(format!("unknown system `{value}` (available: {PARTICLE})"));
                }
                self.system = value.to_string();
            }
            "initial_state" => self.initial_state = parse_vec5(value)?,
            "reference" => {
                self.reference = match value {
                    "constant-z-line" => match self.reference {
                        ReferenceSpec::ConstantZLine { .. } => self.reference.clone(),
                        _ => ExperimentConfig::default().reference,
                    },
                    "free-flow" => match self.reference {
                        ReferenceSpec::FreeFlow { .. } => self.reference.clone(),
                        _ => ReferenceSpec::FreeFlow { start: None },
                    },
                    other => {
                        return Err(format!(
                            "unknown reference kind `{other}` (expected constant-z-line|free-flow)"
                        ))
                    }
                }
            }
            "reference_x" | "reference_z0" | "reference_speed" => {
                let x = parse_f64(value)?;
                let ReferenceSpec::ConstantZLine {
                    x_r,
                    z_offset,
                    speed,
                } = &mut self.reference
                else {
                    return Err(format!("`{key}` requires reference = constant-z-line"));
                };
                match key.as_str() {
                    "reference_x" => *x_r = x,
                    "reference_z0" => *z_offset = x,
                    _ => *speed = x,
                }
            }
            "reference_state" => {
                let s = parse_vec5(value)?;
                let ReferenceSpec::FreeFlow { start } = &mut self.reference else {
                    return Err("`reference_state` requires reference = free-flow".into());
                };
                *start = Some(s);
            }
            "T" => self.horizon = parse_positive(value)?,
            "steps" => self.steps = parse_count(value)?,
            "epsilon" => {
                let eps = parse_f64(value)?;
                if eps <= 0.0 {
                    return Err(format!(
                        "epsilon must be > 0: epsilon = {eps} makes the optimal control problem singular"
                    ));
                }
                self.epsilon = eps;
            }
            "omega" => self.omega = parse_positive(value)?,
            "adjoint_mode" => self.adjoint_mode = value.parse()?,
            "transversality" => self.transversality = value.parse()?,
            "full_transversality" => self.full_transversality = parse_bool(value)?,
            "alpha0" => self.alpha0 = parse_vec5(value)?,
            "newton_tol" => self.newton.tol_residual = parse_positive(value)?,
            "newton_max_iters" => self.newton.max_iters = parse_count(value)?,
            "newton_fd_step" => self.newton.fd_step = parse_positive(value)?,
            "output_dir" => {
                if value.is_empty() {
                    return Err("output_dir must not be empty".into());
                }
                self.output_dir = PathBuf::from(value);
            }
            _ => return Err(format!("unknown key `{key}`")),
        }
        self.explicit.insert(key);
        Ok(())
    }

    pub fn initial(&self) -> AdaptedState {
        AdaptedState::from_slices(&self.initial_state[..3], &self.initial_state[3..])
    }

    pub fn reference_trajectory(&self) -> Result<ReferenceTrajectory> {
        match &self.reference {
            ReferenceSpec::ConstantZLine {
                x_r,
                z_offset,
                speed,
            } => Ok(ReferenceTrajectory::constant_z_line(*x_r, *z_offset, *speed)),
            ReferenceSpec::FreeFlow { start } => {
                let s = start.unwrap_or(self.initial_state);
                ReferenceTrajectory::free_flow(
                    &particle_system(),
                    AdaptedState::from_slices(&s[..3], &s[3..]),
                    self.horizon,
                    self.steps,
                )
            }
        }
    }

    pub fn tracking_problem(&self) -> Result<TrackingProblem> {
        Ok(TrackingProblem::new(
            particle_system(),
            self.reference_trajectory()?,
            self.epsilon,
            self.omega,
            self.horizon,
            self.initial(),
            self.steps,
        )?
        .with_adjoint_mode(self.adjoint_mode)
        .with_transversality(self.transversality)
        .with_full_transversality(self.full_transversality))
    }

    /// Track-only keys that were set explicitly.
    pub fn track_only_keys_set(&self) -> Vec<&str> {
        TRACK_ONLY_KEYS
            .iter()
            .copied()
            .filter(|k| self.explicit.contains(*k))
            .collect()
    }
}

fn join(v: &[f64]) -> String {
    v.iter().map(f64::to_string).collect::<Vec<_>>().join(", ")
}

/// Writes every key, in a form [`parse_config`] reads back to the same values.
impl fmt::Display for ExperimentConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "system = {}", self.system)?;
        writeln!(f, "initial_state = {}", join(&self.initial_state))?;
        match &self.reference {
            ReferenceSpec::ConstantZLine {
                x_r,
                z_offset,
                speed,
            } => {
                writeln!(f, "reference = constant-z-line")?;
                writeln!(f, "reference_x = {x_r}")?;
                writeln!(f, "reference_z0 = {z_offset}")?;
                writeln!(f, "reference_speed = {speed}")?;
            }
            ReferenceSpec::FreeFlow { start } => {
                writeln!(f, "reference = free-flow")?;
                if let Some(s) = start {
                    writeln!(f, "reference_state = {}", join(s))?;
                }
            }
        }
        writeln!(f, "T = {}", self.horizon)?;
        writeln!(f, "steps = {}", self.steps)?;
        writeln!(f, "epsilon = {}", self.epsilon)?;
        writeln!(f, "omega = {}", self.omega)?;
        writeln!(f, "adjoint_mode = {}", self.adjoint_mode.as_str())?;
        writeln!(f, "transversality = {}", self.transversality.as_str())?;
        writeln!(f, "full_transversality = {}", self.full_transversality)?;
        writeln!(f, "alpha0 = {}", join(&self.alpha0))?;
        writeln!(f, "newton_tol = {}", self.newton.tol_residual)?;
        writeln!(f, "newton_max_iters = {}", self.newton.max_iters)?;
        writeln!(f, "newton_fd_step = {}", self.newton.fd_step)?;
        writeln!(f, "output_dir = {}", self.output_dir.display())
    }
}

/// Parses `key = value` lines over the defaults. `#` starts a comment; blank
/// lines are skipped; a key may appear at most once.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| Error::Config {
            line,
            message: format!("expected `key = value`, got `{content}`"),
        })?;
        let key = key.trim();
        if cfg.explicit.contains(&canonical(key)) {
            return Err(Error::Config {
                line,
                message: format!("duplicate key `{key}`"),
            });
        }
        cfg.set(key, value).map_err(|message| Error::Config {
            line,
            message: format!("{key}: {message}"),
        })?;
    }
    Ok(cfg)
}
