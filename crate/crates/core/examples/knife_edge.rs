//! A user-defined system: a knife edge on the plane held by a spring,
//! `q = (x, y, θ)` with `ẋ sin θ − ẏ cos θ = 0`.
//!
//! The frame `e₁ = cos θ ∂x + sin θ ∂y`, `e₂ = ∂θ` is orthonormal for unit
//! mass and inertia, so its Christoffel symbols follow from the structure
//! constants of the projected bracket. No analytic partials are supplied;
//! the adjoint equations use finite differences of the coefficient fields.
//!
//! cargo run --release --example knife_edge

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use nhtrack::geom::{
    christoffel_from_structure, AdaptedFrame, AdaptedState, Christoffel, ChristoffelField, NonholonomicSystem,
    PotentialGradient, RestrictedMetricField,
};
use nhtrack::pmp::{ReferenceTrajectory, TrackingProblem};
use nhtrack::shoot::{solve_tracking, NewtonConfig};

const SPRING: f64 = 0.5;

fn knife_edge() -> nhtrack::Result<NonholonomicSystem> {
    let frame = AdaptedFrame::new(
        3,
        2,
        Arc::new(|q: &DVector<f64>| DMatrix::from_row_slice(2, 3, &[q[2].cos(), q[2].sin(), 0.0, 0.0, 0.0, 1.0])),
    )?;
    // [e₁, e₂] = (sin θ, −cos θ, 0) is normal to D: its projection vanishes.
    let gamma = christoffel_from_structure(&Christoffel::zeros(2))?;
    Ok(NonholonomicSystem::new(
        "knife-edge",
        frame,
        ChristoffelField::new(Arc::new(move |_| gamma.clone())),
        RestrictedMetricField::new(
            Arc::new(|_| DMatrix::identity(2, 2)),
            Arc::new(|_| DMatrix::identity(2, 2)),
        ),
        PotentialGradient::new(Arc::new(|q: &DVector<f64>| DVector::from_column_slice(&[SPRING * q[0], SPRING * q[1], 0.0]))),
        Arc::new(|q: &DVector<f64>| DMatrix::from_row_slice(1, 3, &[q[2].sin(), -q[2].cos(), 0.0])),
    ))
}

fn main() -> nhtrack::Result<()> {
    // The Christoffel helper on a non-trivial algebra: su(2) with an
    // orthonormal frame has Cᶜ_AB = ε_cab.
    let mut so3 = Christoffel::zeros(3);
    for (c, a, b) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        so3.set(c, a, b, 1.0);
        so3.set(c, b, a, -1.0);
    }
    println!("so(3) symbols: {:?}", christoffel_from_structure(&so3)?);

    let sys = knife_edge()?;
    // Reference: unit-speed circle of radius 1 around the origin.
    let (horizon, steps) = (3.0, 3000);
    let times: Vec<f64> = (0..=steps).map(|i| horizon * i as f64 / steps as f64).collect();
    let rows: Vec<Vec<f64>> = times.iter().map(|&t| vec![t.sin(), -t.cos(), t, 1.0, 1.0]).collect();
    let reference = ReferenceTrajectory::tabulated(3, times, &rows)?;

    let s0 = AdaptedState::from_slices(&[0.2, -1.3, 0.1], &[0.5, 0.8]);
    let prob = TrackingProblem::new(sys, reference, 1.0, 5.0, horizon, s0, steps)?;
    let report = solve_tracking(&prob, &[0.0; 5], &NewtonConfig::default())?;
    println!("converged {} in {} iterations, cost {:.4}", report.converged, report.iterations, report.cost);
    for i in (0..=steps).step_by(steps / 6) {
        let cs = report.coupled_state(i, &prob);
        let r = prob.reference.sample(report.trajectory.times()[i]);
        println!(
            "t = {:4.2}  (x, y, θ) = ({:+.3}, {:+.3}, {:+.3})  reference ({:+.3}, {:+.3}, {:+.3})",
            report.trajectory.times()[i],
            cs.s.q[0],
            cs.s.q[1],
            cs.s.q[2],
            r.q[0],
            r.q[1],
            r.q[2]
        );
    }
    Ok(())
}
