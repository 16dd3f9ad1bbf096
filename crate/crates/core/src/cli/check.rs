//! Invariant suite behind `nhtrack check`.
//!
//! Sampling is deterministic (a Weyl sequence), so the table is reproducible.

use std::fmt;

use crate::error::Result;
use crate::geom::{AdaptedState, Control, FreeFlow};
use crate::integrate::{convergence_order, integrate, max_error};
use crate::particle::{analytic_constants, analytic_flow, embed, particle_system, restricted_energy, AnalyticParams, UnreducedFlow};
use crate::pmp::{
    adjoint_field, hamiltonian, hamiltonian_control_gradient, stationary_control, AdjointMode, Costate,
    ReferenceTrajectory, TrackingProblem,
};
use crate::shoot::{solve_tracking, NewtonConfig};

/// Fixed weights for the checks that need a tracking problem; `check` does not
/// read `epsilon` or `omega` from the configuration.
const CHECK_EPSILON: f64 = 7.0;
const CHECK_OMEGA: f64 = 1.0;

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub measured: f64,
    pub tolerance: String,
    pub passed: bool,
}

pub struct CheckTable(pub Vec<CheckResult>);

impl CheckTable {
    pub fn all_passed(&self) -> bool {
        self.0.iter().all(|c| c.passed)
    }
}

impl fmt::Display for CheckTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            writeln!(
                f,
                "{}  {:<44} measured {:>12.4e}  required {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.measured,
                c.tolerance
            )?;
        }
        Ok(())
    }
}

fn at_most(name: &'static str, measured: f64, tol: f64) -> CheckResult {
    CheckResult {
        name,
        measured,
        tolerance: format!("<= {tol:e}"),
        passed: measured <= tol,
    }
}

/// Points of `[-b, b]^d` from the fractional parts of `i·√pⱼ`.
fn weyl(i: usize, d: usize, b: f64) -> Vec<f64> {
    const ROOTS: [f64; 12] = [2.0, 3.0, 5.0, 7.0, 11.0, 13.0, 17.0, 19.0, 23.0, 29.0, 31.0, 37.0];
    (0..d)
        .map(|j| {
            let frac = ((i + 1) as f64 * ROOTS[j].sqrt()).fract();
            b * (2.0 * frac - 1.0)
        })
        .collect()
}

fn fd_gradient_gap(mode: AdjointMode, samples: usize) -> Result<f64> {
    let sys = particle_system();
    let mut worst: f64 = 0.0;
    for i in 0..samples {
        let w = weyl(i, 12, 2.0);
        let s = AdaptedState::from_slices(&w[0..3], &w[3..5]);
        let p = Costate::from_slices(&w[5..8], &w[8..10]);
        let r = AdaptedState::from_slices(&[w[10], w[11], 0.3], &[0.2, 1.0]);
        let u = stationary_control(&p, CHECK_EPSILON)?;
        let x = s.to_vec();
        let mut fd = Vec::with_capacity(5);
        for j in 0..5 {
            let h = 1e-6;
            let mut plus = x.clone();
            let mut minus = x.clone();
            plus[j] += h;
            minus[j] -= h;
            let hp = hamiltonian(&sys, &AdaptedState::from_flat(&plus, 3), &p, &u, &r, CHECK_EPSILON)?;
            let hm = hamiltonian(&sys, &AdaptedState::from_flat(&minus, 3), &p, &u, &r, CHECK_EPSILON)?;
            fd.push(-(hp - hm) / (2.0 * h));
        }
        let adj = adjoint_field(&sys, &s, &p, &r, CHECK_EPSILON, mode)?.to_vec();
        let scale = fd.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
        let gap = adj.iter().zip(&fd).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs())) / scale;
        worst = worst.max(gap);
    }
    Ok(worst)
}

/// Runs every check from `s0` over `[0, horizon]` with `steps` RK4 steps.
pub fn run_checks(s0: &AdaptedState, horizon: f64, steps: usize) -> Result<CheckTable> {
    let sys = particle_system();
    let flow = FreeFlow::new(&sys);
    let params = analytic_constants(s0);
    let exact = |t: f64| analytic_flow(&params, t).to_vec();
    let mut out = Vec::new();

    let traj = integrate(&flow, 0.0, &s0.to_vec(), horizon, steps)?;
    out.push(at_most("RK4 vs closed-form flow, max error", max_error(&traj, exact), 1e-9));

    // Coarse grids keep the truncation error well above the roundoff floor.
    let order = convergence_order(&flow, exact, 0.0, &s0.to_vec(), horizon, &[25, 50, 100, 200])?;
    out.push(CheckResult {
        name: "RK4 observed order (N = 25..200)",
        measured: order,
        tolerance: "in [3.8, 4.2]".into(),
        passed: (3.8..=4.2).contains(&order),
    });

    let fine = ((horizon / 1e-4).round() as usize).max(1);
    let reduced = integrate(&flow, 0.0, &s0.to_vec(), horizon, fine)?;
    let unreduced = integrate(&UnreducedFlow, 0.0, &embed(s0)?.to_array(), horizon, fine)?;
    let mut gap: f64 = 0.0;
    let mut drift: f64 = 0.0;
    for i in 0..reduced.len() {
        let red = embed(&AdaptedState::from_flat(reduced.state(i), 3))?.to_array();
        let unr = unreduced.state(i);
        drift = drift.max((unr[3] + unr[1] * unr[5]).abs());
        gap = red.iter().zip(unr).fold(gap, |m, (a, b)| m.max((a - b).abs()));
    }
    out.push(at_most("reduced vs unreduced flow (h = 1e-4)", gap, 1e-6));
    out.push(at_most("unreduced constraint drift |v_x + y v_z|", drift, 1e-10));

    let v1_0 = s0.v[0];
    let e0 = restricted_energy(s0);
    let (mut v1_drift, mut e_drift): (f64, f64) = (0.0, 0.0);
    for (_, x) in traj.iter() {
        let s = AdaptedState::from_flat(x, 3);
        v1_drift = v1_drift.max((s.v[0] - v1_0).abs());
        e_drift = e_drift.max((restricted_energy(&s) - e0).abs() / e0.abs().max(f64::MIN_POSITIVE));
    }
    out.push(at_most("v1 drift along the free flow", v1_drift, 1e-12));
    out.push(at_most("restricted energy relative drift", e_drift, 1e-10));

    let mut annihilation: f64 = 0.0;
    for (_, x) in traj.iter() {
        let s = AdaptedState::from_flat(x, 3);
        let qdot = sys.admissible_velocity(&s)?;
        annihilation = annihilation.max(sys.constraint_residual(&s.q, &qdot)?.amax());
    }
    out.push(at_most("constraint residual of admissible velocity", annihilation, 1e-12));

    out.push(at_most(
        "derived adjoint vs -dH/d(q,v), relative",
        fd_gradient_gap(AdjointMode::Derived, 100)?,
        1e-5,
    ));
    let literal = fd_gradient_gap(AdjointMode::PaperLiteral, 100)?;
    out.push(CheckResult {
        name: "paper-literal adjoint is not -dH/d(q,v)",
        measured: literal,
        tolerance: "> 1e-5".into(),
        passed: literal > 1e-5,
    });

    let mut stationarity: f64 = 0.0;
    for i in 0..100 {
        let w = weyl(i, 3, 10.0);
        let eps = 0.1 + w[2].abs();
        let p = Costate::from_slices(&[0.0; 3], &w[..2]);
        let u: Control = stationary_control(&p, eps)?;
        stationarity = stationarity.max(hamiltonian_control_gradient(&p, &u, eps).amax());
    }
    out.push(at_most("dH/du at u*", stationarity, 1e-15));

    let singular = AnalyticParams { c1: 0.0, ..params };
    let nearly = AnalyticParams { c1: 1e-8, ..params };
    let mut branch: f64 = 0.0;
    for i in 0..=400 {
        let t = horizon * i as f64 / 400.0;
        let a = analytic_flow(&nearly, t).to_vec();
        let b = analytic_flow(&singular, t).to_vec();
        branch = a.iter().zip(&b).fold(branch, |m, (x, y)| m.max((x - y).abs()));
    }
    out.push(at_most("closed form at c1 = 1e-8 vs c1 = 0 branch", branch, 1e-5));

    let reference = ReferenceTrajectory::free_flow(&sys, s0.clone(), horizon, steps)?;
    let prob = TrackingProblem::new(sys, reference, CHECK_EPSILON, CHECK_OMEGA, horizon, s0.clone(), steps)?;
    let report = solve_tracking(&prob, &[0.0; 5], &NewtonConfig::default())?;
    out.push(CheckResult {
        name: "self-tracking: converged, max |u*|",
        measured: report.max_control(),
        tolerance: "<= 1e-6".into(),
        passed: report.converged && report.max_control() <= 1e-6,
    });

    Ok(CheckTable(out))
}
