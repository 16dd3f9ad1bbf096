//! Damped Newton with a finite-difference Jacobian on a small nonlinear system.
//!
//! cargo run --release --example newton

use nhtrack::shoot::{fd_jacobian, newton_solve, NewtonConfig};

fn main() -> nhtrack::Result<()> {
    // Intersection of the unit circle with y = atan(3x), started far out.
    let f = |a: &[f64]| Ok(vec![a[0] * a[0] + a[1] * a[1] - 1.0, a[1] - (3.0 * a[0]).atan()]);
    let start = [4.0, -3.0];
    println!("jacobian at start:\n{}", fd_jacobian(&f, &start, 1e-6)?);
    let report = newton_solve(&f, &start, &NewtonConfig::default())?;
    println!("root {:?} after {} steps", report.alpha_star, report.iterations);
    for (i, r) in report.residual_norms.iter().enumerate() {
        println!("  {i:2}  {r:.3e}");
    }

    // No real root: the line search stalls and the report says so.
    let g = |a: &[f64]| Ok(vec![a[0] * a[0] + 1.0]);
    let stalled = newton_solve(&g, &[0.5], &NewtonConfig::default())?;
    println!("x^2 + 1: converged {}, residual {:.3e}", stalled.converged, stalled.final_residual_norm());
    Ok(())
}
