//! Shooting invariants on the published tracking problem.

use std::sync::OnceLock;

use nhtrack::geom::{AdaptedState, Control};
use nhtrack::integrate::{integrate, FnField};
use nhtrack::particle::{embed, particle_system};
use nhtrack::pmp::{cost_of_samples, shooting_residual, TrackingProblem, Transversality};
use nhtrack::shoot::{solve_tracking, NewtonConfig, ShootingReport};

fn solved() -> &'static (TrackingProblem, ShootingReport) {
    static SOLVED: OnceLock<(TrackingProblem, ShootingReport)> = OnceLock::new();
    SOLVED.get_or_init(|| {
        let prob = TrackingProblem::paper_experiment();
        let report = solve_tracking(&prob, &[0.0; 5], &NewtonConfig::default()).unwrap();
        (prob, report)
    })
}

#[test]
fn residual_history_is_monotone_and_superlinear() {
    let (_, report) = solved();
    assert!(report.converged);
    let norms = &report.residual_norms;
    for w in norms.windows(2) {
        assert!(w[1] <= w[0], "{norms:?}");
    }
    // The converged norm sits at the roundoff floor; look at the three before it.
    let tail = &norms[norms.len() - 4..norms.len() - 1];
    assert!(tail[2] / tail[1] < tail[1] / tail[0], "{tail:?}");
}

#[test]
fn solution_re_verifies() {
    let (prob, report) = solved();
    let again = shooting_residual(&report.alpha_star, prob).unwrap();
    let norm = again.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    assert!(norm <= NewtonConfig::default().tol_residual);
    assert_eq!(again, report.final_residual);
    assert_eq!(report.controls.len(), report.trajectory.len());
    assert_eq!(report.trajectory.first()[..5], prob.s0.to_vec()[..]);
}

#[test]
fn solve_is_deterministic() {
    let (prob, report) = solved();
    let second = solve_tracking(prob, &[0.0; 5], &NewtonConfig::default()).unwrap();
    let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
    assert_eq!(bits(&second.alpha_star), bits(&report.alpha_star));
    assert_eq!(bits(&second.residual_norms), bits(&report.residual_norms));
    assert_eq!(second.trajectory, report.trajectory);
    assert_eq!(second.cost.to_bits(), report.cost.to_bits());
}

#[test]
fn tracked_motion_satisfies_the_constraint() {
    let (prob, report) = solved();
    for i in 0..report.trajectory.len() {
        let s = report.coupled_state(i, prob).s;
        assert!(embed(&s).unwrap().constraint_drift().abs() <= 1e-12);
    }
}

/// Open-loop rollout of `u(t)`, interpolated linearly between grid samples.
fn open_loop_cost(prob: &TrackingProblem, controls: &[Vec<f64>]) -> f64 {
    let sys = particle_system();
    let h = prob.horizon / prob.steps as f64;
    let control_at = |t: f64| {
        let pos = (t / h).clamp(0.0, prob.steps as f64);
        let i = (pos.floor() as usize).min(prob.steps - 1);
        let w = pos - i as f64;
        Control::from_slice(&[
            (1.0 - w) * controls[i][0] + w * controls[i + 1][0],
            (1.0 - w) * controls[i][1] + w * controls[i + 1][1],
        ])
    };
    let field = FnField::new(5, |t: f64, x: &[f64], dx: &mut [f64]| {
        let s = AdaptedState::from_flat(x, 3);
        let qdot = sys.admissible_velocity(&s)?;
        let vdot = sys.controlled_acceleration(&s, &control_at(t))?;
        dx[..3].copy_from_slice(qdot.as_slice());
        dx[3..].copy_from_slice(vdot.as_slice());
        Ok(())
    });
    let traj = integrate(&field, 0.0, &prob.s0.to_vec(), prob.horizon, prob.steps).unwrap();
    let states: Vec<AdaptedState> = traj.iter().map(|(_, x)| AdaptedState::from_flat(x, 3)).collect();
    let sampled: Vec<Control> = controls.iter().map(|u| Control::from_slice(u)).collect();
    cost_of_samples(prob, traj.times(), &states, &sampled)
}

#[test]
fn shooting_solution_is_a_local_minimiser_of_the_cost() {
    let (prob, report) = solved();
    let base: Vec<Vec<f64>> = report.controls.iter().map(|u| u.u.as_slice().to_vec()).collect();
    let j0 = open_loop_cost(prob, &base);
    assert!((j0 - report.cost).abs() < 1e-6, "{j0} vs {}", report.cost);

    let times = report.trajectory.times();
    let shapes: [fn(f64) -> [f64; 2]; 3] = [
        |t| [(t).sin(), 0.0],
        |t| [0.0, (0.5 * t).cos()],
        |t| [1.0 - t / 4.0, t / 4.0],
    ];
    for shape in shapes {
        for delta in [0.05, -0.05] {
            let perturbed: Vec<Vec<f64>> = base
                .iter()
                .zip(times)
                .map(|(u, &t)| {
                    let d = shape(t);
                    vec![u[0] + delta * d[0], u[1] + delta * d[1]]
                })
                .collect();
            let j = open_loop_cost(prob, &perturbed);
            assert!(j > j0, "delta {delta}: {j} <= {j0}");
        }
    }
}

#[test]
fn printed_residual_root_is_not_a_minimiser() {
    // Its terminal rows reward deviation from the reference: the root exists
    // but costs more than doing nothing.
    let prob = TrackingProblem::paper_experiment().with_printed_residual();
    assert_eq!(prob.transversality, Transversality::Printed);
    let report = solve_tracking(&prob, &[0.0; 5], &NewtonConfig::default()).unwrap();
    assert!(report.converged);
    let baseline = nhtrack::pmp::uncontrolled_cost(&prob).unwrap();
    assert!(report.cost > baseline, "{} vs {baseline}", report.cost);
}
