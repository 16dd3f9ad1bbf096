//! The published tracking experiment: particle from (0.5, 0.2, 0.7; 0.5, 0.4)
//! tracking (1, 0, t + 1; 0, 1) with T = 4, eps = 7 and omega = 1.
//!
//! cargo run --release --example track_paper [OUT_DIR]

use std::path::PathBuf;

use nhtrack::cli::{gnuplot_script, trajectory_table, write_csv};
use nhtrack::pmp::{uncontrolled_cost, TrackingProblem};
use nhtrack::shoot::{solve_tracking, NewtonConfig};

fn main() -> nhtrack::Result<()> {
    let prob = TrackingProblem::paper_experiment();
    let report = solve_tracking(&prob, &[0.0; 5], &NewtonConfig::default())?;

    println!("converged {} after {} Newton steps", report.converged, report.iterations);
    for (i, r) in report.residual_norms.iter().enumerate() {
        println!("  {i:2}  {r:.3e}");
    }
    println!("alpha* = {:?}", report.alpha_star);
    println!("J = {:.6}  (u = 0: {:.6})", report.cost, uncontrolled_cost(&prob)?);

    let last = report.trajectory.len() - 1;
    let end = report.coupled_state(last, &prob).s;
    let target = prob.reference.sample(prob.horizon);
    for (j, name) in ["x", "y", "z", "v1", "v2"].iter().enumerate() {
        println!(
            "  {name:>2}(T) = {:+.5}  reference {:+.5}",
            end.to_vec()[j],
            target.to_vec()[j]
        );
    }

    if let Some(dir) = std::env::args().nth(1).map(PathBuf::from) {
        std::fs::create_dir_all(&dir).map_err(|source| nhtrack::Error::Io {
            path: dir.clone(),
            source,
        })?;
        let n = report.trajectory.len();
        let coupled: Vec<_> = (0..n).map(|i| report.coupled_state(i, &prob)).collect();
        let states: Vec<_> = coupled.iter().map(|c| c.s.clone()).collect();
        let costates: Vec<_> = coupled.iter().map(|c| c.p.clone()).collect();
        let table = trajectory_table(report.trajectory.times(), &states, &report.controls, &costates, &prob.reference)?;
        write_csv(&table, &dir.join("track.csv"))?;
        std::fs::write(dir.join("track.gp"), gnuplot_script("track.csv")).map_err(|source| nhtrack::Error::Io {
            path: dir.join("track.gp"),
            source,
        })?;
        println!("wrote {}", dir.display());
    }
    Ok(())
}
