//! Terminal conditions of the shooting residual.
//!
//! `Consistent` asks `(λ(T), μ(T)) = ω∇Φ`, which makes the shooting root
//! stationary for the reported cost. `Printed` keeps `λ(T) + ω(q − q_r)` and
//! `μ(T) = 0`; Newton finds its root as well, but that motion costs more
//! than leaving the particle alone.
//!
//! cargo run --release --example transversality

use nhtrack::pmp::{uncontrolled_cost, TrackingProblem, Transversality};
use nhtrack::shoot::{solve_tracking, NewtonConfig};

fn main() -> nhtrack::Result<()> {
    let base = TrackingProblem::paper_experiment();
    println!("uncontrolled cost {:.4}", uncontrolled_cost(&base)?);
    let variants = [
        ("consistent", base.clone()),
        ("consistent, position rows only", base.clone().with_full_transversality(false)),
        ("printed", base.clone().with_printed_residual()),
        ("printed, with velocity rows", base.clone().with_transversality(Transversality::Printed)),
    ];
    for (name, prob) in variants {
        let report = solve_tracking(&prob, &[0.0; 5], &NewtonConfig::default())?;
        let end = report.coupled_state(report.trajectory.len() - 1, &prob).s.to_vec();
        println!(
            "{name:<32} converged {:<5} iterations {:>2}  cost {:>9.4}  end {:+.3?}",
            report.converged, report.iterations, report.cost, end
        );
    }
    Ok(())
}
