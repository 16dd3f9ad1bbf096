//! The same motion computed twice: in the adapted frame, and in ambient
//! coordinates with an explicit Lagrange multiplier.
//!
//! cargo run --release --example unreduced_oracle

use nhtrack::geom::{AdaptedState, FreeFlow};
use nhtrack::integrate::integrate;
use nhtrack::particle::{embed, multiplier, particle_system, project, AmbientState, UnreducedFlow};

fn main() -> nhtrack::Result<()> {
    let sys = particle_system();
    let s0 = AdaptedState::from_slices(&[0.5, 0.2, 0.7], &[0.5, 0.4]);
    let steps = 40_000;
    let reduced = integrate(&FreeFlow::new(&sys), 0.0, &s0.to_vec(), 4.0, steps)?;
    let unreduced = integrate(&UnreducedFlow, 0.0, &embed(&s0)?.to_array(), 4.0, steps)?;

    let mut gap: f64 = 0.0;
    let mut drift: f64 = 0.0;
    for i in (0..=steps).step_by(steps / 8) {
        let amb = AmbientState::from_slice(unreduced.state(i));
        let back = project(&amb)?;
        let red = AdaptedState::from_flat(reduced.state(i), 3);
        let d = back
            .to_vec()
            .iter()
            .zip(red.to_vec())
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
        println!(
            "t = {:4.2}  multiplier {:+.6}  |reduced - projected| {d:.2e}",
            reduced.times()[i],
            multiplier(&amb)
        );
        gap = gap.max(d);
        drift = drift.max(amb.constraint_drift().abs());
    }
    println!("max gap {gap:.3e}, max constraint drift {drift:.3e}");
    Ok(())
}
