//! Optimal tracking problem and its Pontryagin necessary conditions.
//!
//! For a running cost
//! `C = ½(‖q − q_r‖² + ‖v − v_r‖² + ε‖u‖²)` and the controlled reduced
//! dynamics, the Hamiltonian is `H = C + λ·ρᵀv + μ·(a(q, v) + u)`. It is
//! quadratic in `u`, minimised by `u* = −μ/ε`, and the costates obey
//! `λ̇ = −∂H/∂q`, `μ̇ = −∂H/∂v`.
//!
//! Single shooting integrates the coupled state–costate system from
//! `(s₀, α)` and asks for the terminal costate to match the gradient of the
//! weighted terminal cost `ωΦ` (see [`Transversality`]).

use nalgebra::DVector;

use crate::error::{check_dim, Error, Result};
use crate::geom::{AdaptedState, Control, FreeFlow, NonholonomicSystem};
use crate::integrate::{integrate, Trajectory, VectorField};
use crate::particle::particle_system;

/// Tolerance on `|μ·ρᵀv_r|` for references that must lie on `D`.
pub const REFERENCE_CONSTRAINT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AdjointMode {
    /// `−∂H/∂(q, v)` from the analytic Jacobians of the dynamics.
    #[default]
    Derived,
    /// The particle costate equations exactly as typeset in the source
    /// material, including its ε factor in `λ̇₂` and the signs of the `μ₂`
    /// terms. Kept for side-by-side comparison; it is not a gradient of `H`.
    PaperLiteral,
}

impl AdjointMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            AdjointMode::Derived => "derived",
            AdjointMode::PaperLiteral => "paper-literal",
        }
    }
}

impl std::str::FromStr for AdjointMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "derived" => Ok(AdjointMode::Derived),
            "paper-literal" => Ok(AdjointMode::PaperLiteral),
            other => Err(format!("unknown adjoint mode `{other}` (expected derived|paper-literal)")),
        }
    }
}

/// Terminal rows of the shooting residual.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Transversality {
    /// `λ(T) = ω∇_qΦ`, `μ(T) = ω∇_vΦ`: the boundary conditions that make the
    /// shooting solution stationary for `𝒥 = ∫C dt + ωΦ` under `λ̇ = −∂H/∂q`.
    #[default]
    Consistent,
    /// `λ(T) + ω(q(T) − q_r(T)) = 0` and `μ(T) = 0`, the form printed with the
    /// particle experiment. Its sign rewards terminal deviation, so its roots
    /// are not minimisers of `𝒥`.
    Printed,
}

impl Transversality {
    pub fn as_str(&self) -> &'static str {
        match self {
            Transversality::Consistent => "consistent",
            Transversality::Printed => "printed",
        }
    }
}

impl std::str::FromStr for Transversality {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "consistent" => Ok(Transversality::Consistent),
            "printed" => Ok(Transversality::Printed),
            other => Err(format!("unknown transversality `{other}` (expected consistent|printed)")),
        }
    }
}

/// Desired motion `t ↦ (q_r(t), v_r(t))`.
#[derive(Debug, Clone, PartialEq)]
pub enum ReferenceTrajectory {
    /// Particle reference `(x_r, 0, z₀ + s·t; 0, s)`: a straight line along
    /// `z` at constant speed, which is a solution of the free dynamics.
    ConstantZLine { x_r: f64, z_offset: f64, speed: f64 },
    /// Free motion of the system from a given state, tabulated on a grid and
    /// evaluated by cubic Hermite interpolation using the field values.
    FreeFlow {
        initial: AdaptedState,
        states: Trajectory,
        slopes: Trajectory,
    },
    /// User-supplied samples with linear interpolation (clamped at the ends).
    Tabulated { states: Trajectory, base_dim: usize },
}

impl ReferenceTrajectory {
    pub fn constant_z_line(x_r: f64, z_offset: f64, speed: f64) -> Self {
        ReferenceTrajectory::ConstantZLine {
            x_r,
            z_offset,
            speed,
        }
    }

    /// The reference used in the published particle experiment,
    /// `γ_r(t) = (1, 0, t + 1, 0, 1)`.
    pub fn paper() -> Self {
        Self::constant_z_line(1.0, 1.0, 1.0)
    }

    pub fn free_flow(
        sys: &NonholonomicSystem,
        initial: AdaptedState,
        horizon: f64,
        steps: usize,
    ) -> Result<Self> {
        sys.check_state(&initial)?;
        let flow = FreeFlow::new(sys);
        let states = integrate(&flow, 0.0, &initial.to_vec(), horizon, steps)?;
        let mut rows = Vec::with_capacity(states.len());
        let mut dx = vec![0.0; flow.dim()];
        for (t, x) in states.iter() {
            flow.eval(t, x, &mut dx)?;
            rows.push(dx.clone());
        }
        let slopes = Trajectory::from_rows(flow.dim(), states.times().to_vec(), &rows)?;
        Ok(ReferenceTrajectory::FreeFlow {
            initial,
            states,
            slopes,
        })
    }

    /// `times` must be strictly increasing; each row is `(q, v)`.
    pub fn tabulated(base_dim: usize, times: Vec<f64>, rows: &[Vec<f64>]) -> Result<Self> {
        if times.is_empty() {
            return Err(Error::InvalidArgument("tabulated reference needs at least one sample".into()));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidArgument(
                "tabulated reference times must be strictly increasing".into(),
            ));
        }
        let dim = rows.first().map_or(0, Vec::len);
        if dim <= base_dim {
            return Err(Error::InvalidArgument(format!(
                "tabulated reference rows need more than {base_dim} columns"
            )));
        }
        let states = Trajectory::from_rows(dim, times, rows)?;
        Ok(ReferenceTrajectory::Tabulated { states, base_dim })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ReferenceTrajectory::ConstantZLine { .. } => "constant-z-line",
            ReferenceTrajectory::FreeFlow { .. } => "free-flow",
            ReferenceTrajectory::Tabulated { .. } => "tabulated",
        }
    }

    pub fn sample(&self, t: f64) -> AdaptedState {
        match self {
            ReferenceTrajectory::ConstantZLine {
                x_r,
                z_offset,
                speed,
            } => AdaptedState::from_slices(&[*x_r, 0.0, z_offset + speed * t], &[0.0, *speed]),
            ReferenceTrajectory::FreeFlow {
                initial,
                states,
                slopes,
            } => {
                let x = hermite(states, slopes, t);
                AdaptedState::from_flat(&x, initial.q.len())
            }
            ReferenceTrajectory::Tabulated { states, base_dim } => {
                AdaptedState::from_flat(&linear(states, t), *base_dim)
            }
        }
    }

    fn dims(&self) -> (usize, usize) {
        match self {
            ReferenceTrajectory::ConstantZLine { .. } => (3, 2),
            ReferenceTrajectory::FreeFlow { initial, .. } => (initial.q.len(), initial.v.len()),
            ReferenceTrajectory::Tabulated { states, base_dim } => {
                (*base_dim, states.dim() - base_dim)
            }
        }
    }
}

/// Index of the grid cell holding `t`, clamped to the table.
fn locate(times: &[f64], t: f64) -> usize {
    let last = times.len() - 1;
    if last == 0 || t <= times[0] {
        return 0;
    }
    if t >= times[last] {
        return last - 1;
    }
    times.partition_point(|&s| s <= t).saturating_sub(1).min(last - 1)
}

fn linear(table: &Trajectory, t: f64) -> Vec<f64> {
    let times = table.times();
    if times.len() == 1 {
        return table.first().to_vec();
    }
    let i = locate(times, t);
    let (t0, t1) = (times[i], times[i + 1]);
    let w = ((t - t0) / (t1 - t0)).clamp(0.0, 1.0);
    table
        .state(i)
        .iter()
        .zip(table.state(i + 1))
        .map(|(a, b)| a + w * (b - a))
        .collect()
}

fn hermite(states: &Trajectory, slopes: &Trajectory, t: f64) -> Vec<f64> {
    let times = states.times();
    let i = locate(times, t);
    let (t0, t1) = (times[i], times[i + 1]);
    let h = t1 - t0;
    let s = (t - t0) / h;
    let h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
    let h10 = s * (1.0 - s) * (1.0 - s);
    let h01 = s * s * (3.0 - 2.0 * s);
    let h11 = s * s * (s - 1.0);
    let (x0, x1) = (states.state(i), states.state(i + 1));
    let (d0, d1) = (slopes.state(i), slopes.state(i + 1));
    (0..states.dim())
        .map(|j| h00 * x0[j] + h10 * h * d0[j] + h01 * x1[j] + h11 * h * d1[j])
        .collect()
}

/// PMP multipliers: `lambda` pairs with `q`, `mu` with `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct Costate {
    pub lambda: DVector<f64>,
    pub mu: DVector<f64>,
}

impl Costate {
    pub fn new(lambda: DVector<f64>, mu: DVector<f64>) -> Self {
        Self { lambda, mu }
    }

    pub fn zeros(n: usize, k: usize) -> Self {
        Self::new(DVector::zeros(n), DVector::zeros(k))
    }

    pub fn from_slices(lambda: &[f64], mu: &[f64]) -> Self {
        Self::new(DVector::from_column_slice(lambda), DVector::from_column_slice(mu))
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.lambda.iter().chain(self.mu.iter()).copied().collect()
    }
}

/// Point of `T*D`: state and costate, flattened as `(q, v, λ, μ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoupledState {
    pub s: AdaptedState,
    pub p: Costate,
}

impl CoupledState {
    pub fn flatten(&self) -> Vec<f64> {
        let mut x = self.s.to_vec();
        x.extend(self.p.to_vec());
        x
    }

    pub fn unflatten(x: &[f64], n: usize, k: usize) -> Result<Self> {
        check_dim("coupled state", 2 * (n + k), x.len())?;
        Ok(Self {
            s: AdaptedState::from_slices(&x[..n], &x[n..n + k]),
            p: Costate::from_slices(&x[n + k..2 * n + k], &x[2 * n + k..]),
        })
    }
}

/// A fully specified optimal tracking instance with fixed horizon.
#[derive(Debug, Clone)]
pub struct TrackingProblem {
    pub sys: NonholonomicSystem,
    pub reference: ReferenceTrajectory,
    pub epsilon: f64,
    pub omega: f64,
    pub horizon: f64,
    pub s0: AdaptedState,
    pub steps: usize,
    pub adjoint_mode: AdjointMode,
    pub transversality: Transversality,
    /// Include the velocity part of `∇Φ` in the `μ` rows of the residual.
    pub full_transversality: bool,
}

impl TrackingProblem {
    pub fn new(
        sys: NonholonomicSystem,
        reference: ReferenceTrajectory,
        epsilon: f64,
        omega: f64,
        horizon: f64,
        s0: AdaptedState,
        steps: usize,
    ) -> Result<Self> {
        let prob = Self {
            sys,
            reference,
            epsilon,
            omega,
            horizon,
            s0,
            steps,
            adjoint_mode: AdjointMode::Derived,
            transversality: Transversality::Consistent,
            full_transversality: true,
        };
        prob.validate()?;
        Ok(prob)
    }

    /// The published particle experiment: `γ(0) = (0.5, 0.2, 0.7; 0.5, 0.4)`,
    /// `γ_r(t) = (1, 0, t + 1, 0, 1)`, `T = 4`, `ε = 7`, with `ω = 1` and
    /// 4000 RK4 steps.
    pub fn paper_experiment() -> Self {
        Self::new(
            particle_system(),
            ReferenceTrajectory::paper(),
            7.0,
            1.0,
            4.0,
            AdaptedState::from_slices(&[0.5, 0.2, 0.7], &[0.5, 0.4]),
            4000,
        )
        .expect("published experiment is a valid problem")
    }

    pub fn with_adjoint_mode(mut self, mode: AdjointMode) -> Self {
        self.adjoint_mode = mode;
        self
    }

    pub fn with_transversality(mut self, rule: Transversality) -> Self {
        self.transversality = rule;
        self
    }

    /// The residual exactly as printed for the particle experiment:
    /// [`Transversality::Printed`] without velocity rows.
    pub fn with_printed_residual(self) -> Self {
        self.with_transversality(Transversality::Printed)
            .with_full_transversality(false)
    }

    pub fn with_full_transversality(mut self, on: bool) -> Self {
        self.full_transversality = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0) || !self.epsilon.is_finite() {
            return Err(Error::SingularProblem {
                epsilon: self.epsilon,
            });
        }
        if !(self.omega > 0.0) || !self.omega.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "terminal weight omega must be positive, got {}",
                self.omega
            )));
        }
        if !(self.horizon > 0.0) || !self.horizon.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "horizon T must be positive, got {}",
                self.horizon
            )));
        }
        if self.steps == 0 {
            return Err(Error::InvalidArgument("step count must be at least 1".into()));
        }
        self.sys.check_state(&self.s0)?;
        let (n, k) = self.reference.dims();
        check_dim("reference base dimension", self.sys.base_dim(), n)?;
        check_dim("reference fiber dimension", self.sys.fiber_dim(), k)?;
        if self.adjoint_mode == AdjointMode::PaperLiteral && (n, k) != (3, 2) {
            return Err(Error::InvalidArgument(
                "paper-literal adjoint equations exist only for the particle".into(),
            ));
        }
        if !matches!(self.reference, ReferenceTrajectory::Tabulated { .. }) {
            for i in 0..=16 {
                let r = self.reference.sample(self.horizon * i as f64 / 16.0);
                let qdot = self.sys.admissible_velocity(&r)?;
                let res = self.sys.constraint_residual(&r.q, &qdot)?.amax();
                if res > REFERENCE_CONSTRAINT_TOLERANCE {
                    return Err(Error::ConstraintViolation {
                        residual: res,
                        tolerance: REFERENCE_CONSTRAINT_TOLERANCE,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn shooting_dim(&self) -> usize {
        self.sys.base_dim() + self.sys.fiber_dim()
    }
}

/// `½(‖q − q_r‖² + ‖v − v_r‖² + ε‖u‖²)`.
pub fn running_cost(s: &AdaptedState, r: &AdaptedState, u: &Control, eps: f64) -> f64 {
    0.5 * ((&s.q - &r.q).norm_squared() + (&s.v - &r.v).norm_squared() + eps * u.u.norm_squared())
}

/// `Φ = ‖q(T) − q_r(T)‖² + ‖v(T) − v_r(T)‖²` (no ½).
pub fn terminal_cost(s_t: &AdaptedState, r_t: &AdaptedState) -> f64 {
    (&s_t.q - &r_t.q).norm_squared() + (&s_t.v - &r_t.v).norm_squared()
}

pub fn hamiltonian(
    sys: &NonholonomicSystem,
    s: &AdaptedState,
    p: &Costate,
    u: &Control,
    r: &AdaptedState,
    eps: f64,
) -> Result<f64> {
    let qdot = sys.admissible_velocity(s)?;
    let vdot = sys.controlled_acceleration(s, u)?;
    check_dim("costate lambda", sys.base_dim(), p.lambda.len())?;
    check_dim("costate mu", sys.fiber_dim(), p.mu.len())?;
    Ok(running_cost(s, r, u, eps) + p.lambda.dot(&qdot) + p.mu.dot(&vdot))
}

/// `∂H/∂u = εu + μ`.
pub fn hamiltonian_control_gradient(p: &Costate, u: &Control, eps: f64) -> DVector<f64> {
    &u.u * eps + &p.mu
}

/// Pointwise minimiser of `H` in `u`: `u* = −μ/ε`.
pub fn stationary_control(p: &Costate, eps: f64) -> Result<Control> {
    if !(eps > 0.0) {
        return Err(Error::SingularProblem { epsilon: eps });
    }
    Ok(Control::new(-&p.mu / eps))
}

/// `(λ̇, μ̇)` at a state–costate pair and reference sample.
pub fn adjoint_field(
    sys: &NonholonomicSystem,
    s: &AdaptedState,
    p: &Costate,
    r: &AdaptedState,
    eps: f64,
    mode: AdjointMode,
) -> Result<Costate> {
    check_dim("costate lambda", sys.base_dim(), p.lambda.len())?;
    check_dim("costate mu", sys.fiber_dim(), p.mu.len())?;
    match mode {
        AdjointMode::Derived => {
            let jac = sys.drift_jacobians(s)?;
            let lambda_dot = -(&s.q - &r.q)
                - jac.qdot_q.transpose() * &p.lambda
                - jac.vdot_q.transpose() * &p.mu;
            let mu_dot = -(&s.v - &r.v)
                - jac.qdot_v.transpose() * &p.lambda
                - jac.vdot_v.transpose() * &p.mu;
            Ok(Costate::new(lambda_dot, mu_dot))
        }
        AdjointMode::PaperLiteral => {
            if (sys.base_dim(), sys.fiber_dim()) != (3, 2) {
                return Err(Error::InvalidArgument(
                    "paper-literal adjoint equations exist only for the particle".into(),
                ));
            }
            let (x, y, z) = (s.q[0], s.q[1], s.q[2]);
            let (v1, v2) = (s.v[0], s.v[1]);
            let (l1, l2, l3) = (p.lambda[0], p.lambda[1], p.lambda[2]);
            let mu2 = p.mu[1];
            let g = y / (1.0 + y * y);
            let s2 = (y * y + 1.0) * (y * y + 1.0);
            Ok(Costate::from_slices(
                &[
                    -(x - r.q[0]),
                    l1 * v2 - (y - r.q[1]) + eps * v1 * v2 * mu2 * ((y * y - 1.0) / s2),
                    -(z - r.q[2]),
                ],
                &[
                    -l2 - (v1 - r.v[0]) - mu2 * g * v2,
                    -l3 + l1 * y - (v2 - r.v[1]) - mu2 * g * v1,
                ],
            ))
        }
    }
}

/// The coupled state–costate ODE with the control eliminated by `u* = −μ/ε`.
#[derive(Debug, Clone, Copy)]
pub struct CoupledFlow<'a> {
    pub prob: &'a TrackingProblem,
}

impl<'a> CoupledFlow<'a> {
    pub fn new(prob: &'a TrackingProblem) -> Self {
        Self { prob }
    }
}

impl VectorField for CoupledFlow<'_> {
    fn dim(&self) -> usize {
        2 * self.prob.shooting_dim()
    }

    fn eval(&self, t: f64, x: &[f64], dx: &mut [f64]) -> Result<()> {
        let d = coupled_field(t, x, self.prob)?;
        dx.copy_from_slice(&d);
        Ok(())
    }
}

/// Time derivative of the flattened coupled state `(q, v, λ, μ)`.
pub fn coupled_field(t: f64, z: &[f64], prob: &TrackingProblem) -> Result<Vec<f64>> {
    let sys = &prob.sys;
    let (n, k) = (sys.base_dim(), sys.fiber_dim());
    let cs = CoupledState::unflatten(z, n, k)?;
    let u = stationary_control(&cs.p, prob.epsilon)?;
    let r = prob.reference.sample(t);
    let qdot = sys.admissible_velocity(&cs.s)?;
    let vdot = sys.controlled_acceleration(&cs.s, &u)?;
    let pdot = adjoint_field(sys, &cs.s, &cs.p, &r, prob.epsilon, prob.adjoint_mode)?;
    let mut out = Vec::with_capacity(2 * (n + k));
    out.extend_from_slice(qdot.as_slice());
    out.extend_from_slice(vdot.as_slice());
    out.extend_from_slice(pdot.lambda.as_slice());
    out.extend_from_slice(pdot.mu.as_slice());
    Ok(out)
}

/// Integrates the coupled system from `(s₀, α)` over `[0, T]`.
pub fn integrate_coupled(prob: &TrackingProblem, alpha: &[f64]) -> Result<Trajectory> {
    check_dim("initial costate alpha", prob.shooting_dim(), alpha.len())?;
    let mut z0 = prob.s0.to_vec();
    z0.extend_from_slice(alpha);
    integrate(&CoupledFlow::new(prob), 0.0, &z0, prob.horizon, prob.steps)
}

/// Terminal residual of a coupled trajectory.
pub fn terminal_residual(prob: &TrackingProblem, traj: &Trajectory) -> Result<Vec<f64>> {
    let (n, k) = (prob.sys.base_dim(), prob.sys.fiber_dim());
    let end = CoupledState::unflatten(traj.last(), n, k)?;
    let r = prob.reference.sample(prob.horizon);
    let w = prob.omega;
    let (position_weight, velocity_weight) = match prob.transversality {
        Transversality::Printed => (w, 2.0 * w),
        Transversality::Consistent => (-2.0 * w, -2.0 * w),
    };
    let mut res: Vec<f64> = (0..n)
        .map(|i| end.p.lambda[i] + position_weight * (end.s.q[i] - r.q[i]))
        .collect();
    res.extend((0..k).map(|a| {
        let extra = if prob.full_transversality {
            velocity_weight * (end.s.v[a] - r.v[a])
        } else {
            0.0
        };
        end.p.mu[a] + extra
    }));
    Ok(res)
}

/// Shooting function: terminal transversality rows as a function of the
/// initial costate `α`.
pub fn shooting_residual(alpha: &[f64], prob: &TrackingProblem) -> Result<Vec<f64>> {
    let wrap = |e: Error| match e {
        e @ Error::DimensionMismatch { .. } => e,
        e => Error::Shooting {
            alpha: alpha.to_vec(),
            source: Box::new(e),
        },
    };
    let traj = integrate_coupled(prob, alpha).map_err(wrap)?;
    terminal_residual(prob, &traj)
}

/// Composite-trapezoid cost `∫C dt + ωΦ` of sampled states and controls.
pub fn cost_of_samples(
    prob: &TrackingProblem,
    times: &[f64],
    states: &[AdaptedState],
    controls: &[Control],
) -> f64 {
    let running: Vec<f64> = times
        .iter()
        .zip(states)
        .zip(controls)
        .map(|((&t, s), u)| running_cost(s, &prob.reference.sample(t), u, prob.epsilon))
        .collect();
    let integral: f64 = times
        .windows(2)
        .zip(running.windows(2))
        .map(|(t, c)| 0.5 * (t[1] - t[0]) * (c[0] + c[1]))
        .sum();
    let last = times.len() - 1;
    integral + prob.omega * terminal_cost(&states[last], &prob.reference.sample(times[last]))
}

/// Cost `𝒥` of a coupled trajectory with `u = u*(p(t))`.
pub fn total_cost(traj: &Trajectory, prob: &TrackingProblem) -> Result<f64> {
    let (n, k) = (prob.sys.base_dim(), prob.sys.fiber_dim());
    let mut states = Vec::with_capacity(traj.len());
    let mut controls = Vec::with_capacity(traj.len());
    for (_, z) in traj.iter() {
        let cs = CoupledState::unflatten(z, n, k)?;
        controls.push(stationary_control(&cs.p, prob.epsilon)?);
        states.push(cs.s);
    }
    Ok(cost_of_samples(prob, traj.times(), &states, &controls))
}

/// Uncontrolled rollout from `s₀` on the problem grid.
pub fn uncontrolled_rollout(prob: &TrackingProblem) -> Result<Trajectory> {
    integrate(&FreeFlow::new(&prob.sys), 0.0, &prob.s0.to_vec(), prob.horizon, prob.steps)
}

/// Cost `𝒥` of the `u ≡ 0` rollout from `s₀`.
pub fn uncontrolled_cost(prob: &TrackingProblem) -> Result<f64> {
    let traj = uncontrolled_rollout(prob)?;
    let n = prob.sys.base_dim();
    let states: Vec<AdaptedState> = traj.iter().map(|(_, x)| AdaptedState::from_flat(x, n)).collect();
    let controls = vec![Control::zeros(prob.sys.fiber_dim()); traj.len()];
    Ok(cost_of_samples(prob, traj.times(), &states, &controls))
}
