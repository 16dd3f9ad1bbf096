//! Tracking a reference that is itself a free motion from the initial state:
//! the zero costate is already a root and the optimal control vanishes.
//!
//! cargo run --release --example self_tracking

use nhtrack::geom::AdaptedState;
use nhtrack::particle::particle_system;
use nhtrack::pmp::{ReferenceTrajectory, TrackingProblem};
use nhtrack::shoot::{solve_tracking, NewtonConfig};

fn main() -> nhtrack::Result<()> {
    let sys = particle_system();
    let s0 = AdaptedState::from_slices(&[-0.3, 0.9, 0.0], &[-0.4, 0.8]);
    let reference = ReferenceTrajectory::free_flow(&sys, s0.clone(), 3.0, 3000)?;
    let prob = TrackingProblem::new(sys, reference, 2.0, 1.0, 3.0, s0, 3000)?;
    let report = solve_tracking(&prob, &[0.0; 5], &NewtonConfig::default())?;
    println!(
        "converged {} in {} iterations, |alpha*| = {:.2e}, max |u*| = {:.2e}, cost {:.2e}",
        report.converged,
        report.iterations,
        report.alpha_star.iter().fold(0.0_f64, |m, v| m.max(v.abs())),
        report.max_control(),
        report.cost
    );
    Ok(())
}
