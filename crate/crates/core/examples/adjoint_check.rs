//! Costate equations against finite differences of the Hamiltonian.
//!
//! The derived equations are `−∂H/∂(q, v)`. The paper-literal variant keeps
//! the equations as typeset and differs in three rows.
//!
//! cargo run --release --example adjoint_check

use nhtrack::geom::AdaptedState;
use nhtrack::particle::particle_system;
use nhtrack::pmp::{adjoint_field, hamiltonian, stationary_control, AdjointMode, Costate};

fn main() -> nhtrack::Result<()> {
    let sys = particle_system();
    let eps = 7.0;
    let s = AdaptedState::from_slices(&[0.4, -0.8, 1.2], &[0.6, -1.1]);
    let p = Costate::from_slices(&[0.3, -1.2, 0.7], &[1.5, -2.0]);
    let r = AdaptedState::from_slices(&[1.0, 0.0, 2.0], &[0.0, 1.0]);
    let u = stationary_control(&p, eps)?;

    let x = s.to_vec();
    let mut fd = Vec::new();
    for j in 0..5 {
        let h = 1e-6;
        let (mut a, mut b) = (x.clone(), x.clone());
        a[j] += h;
        b[j] -= h;
        let ha = hamiltonian(&sys, &AdaptedState::from_flat(&a, 3), &p, &u, &r, eps)?;
        let hb = hamiltonian(&sys, &AdaptedState::from_flat(&b, 3), &p, &u, &r, eps)?;
        fd.push(-(ha - hb) / (2.0 * h));
    }
    let derived = adjoint_field(&sys, &s, &p, &r, eps, AdjointMode::Derived)?.to_vec();
    let literal = adjoint_field(&sys, &s, &p, &r, eps, AdjointMode::PaperLiteral)?.to_vec();

    println!("{:>4} {:>14} {:>14} {:>14}", "row", "-dH/ds (FD)", "derived", "paper-literal");
    for (j, name) in ["l1", "l2", "l3", "m1", "m2"].iter().enumerate() {
        println!("{name:>4} {:>14.8} {:>14.8} {:>14.8}", fd[j], derived[j], literal[j]);
    }
    Ok(())
}
