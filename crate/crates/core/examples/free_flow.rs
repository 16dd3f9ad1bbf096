//! Uncontrolled particle: RK4 against the closed-form solution.
//!
//! cargo run --release --example free_flow

use nhtrack::geom::{AdaptedState, FreeFlow};
use nhtrack::integrate::{convergence_order, integrate, max_error};
use nhtrack::particle::{analytic_constants, analytic_flow, particle_system, restricted_energy};

fn main() -> nhtrack::Result<()> {
    let sys = particle_system();
    let flow = FreeFlow::new(&sys);
    let s0 = AdaptedState::from_slices(&[0.5, 0.2, 0.7], &[0.5, 0.4]);
    let params = analytic_constants(&s0);
    let exact = |t: f64| analytic_flow(&params, t).to_vec();

    println!("c1 = {}, c2 = {}", params.c1, params.c2);
    println!("{:>6}  {:>12}", "N", "max error");
    for n in [25, 50, 100, 200, 400, 1000, 4000] {
        let traj = integrate(&flow, 0.0, &s0.to_vec(), 4.0, n)?;
        println!("{n:>6}  {:>12.3e}", max_error(&traj, exact));
    }
    let order = convergence_order(&flow, exact, 0.0, &s0.to_vec(), 4.0, &[25, 50, 100, 200])?;
    println!("observed order {order:.3}");

    let traj = integrate(&flow, 0.0, &s0.to_vec(), 4.0, 4000)?;
    let end = AdaptedState::from_flat(traj.last(), 3);
    println!("state at T = 4: {:?}", end.to_vec());
    println!(
        "energy drift {:.3e}",
        (restricted_energy(&end) - restricted_energy(&s0)).abs()
    );
    Ok(())
}
