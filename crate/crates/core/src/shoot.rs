//! Damped Newton iteration on the shooting residual.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::error::{check_dim, Error, Result};
use crate::geom::Control;
use crate::integrate::Trajectory;
use crate::pmp::{
    integrate_coupled, shooting_residual, stationary_control, terminal_residual, total_cost,
    CoupledState, TrackingProblem,
};

#[derive(Debug, Clone, PartialEq)]
pub struct NewtonConfig {
    /// Stop once the residual ∞-norm is at or below this value.
    pub tol_residual: f64,
    pub max_iters: usize,
    /// Relative central-difference step; column `j` uses `fd_step·max(1, |αⱼ|)`.
    pub fd_step: f64,
    pub backtrack_factor: f64,
    pub max_halvings: usize,
    /// Accept a step of length `s` when `‖F_new‖ < (1 − c·s)‖F_old‖`.
    pub sufficient_decrease: f64,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        Self {
            tol_residual: 1e-10,
            max_iters: 100,
            fd_step: 1e-6,
            backtrack_factor: 0.5,
            max_halvings: 30,
            sufficient_decrease: 1e-4,
        }
    }
}

impl NewtonConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol_residual > 0.0) {
            return Err(Error::InvalidArgument("newton tolerance must be positive".into()));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidArgument("newton max_iters must be at least 1".into()));
        }
        if !(self.fd_step > 0.0) {
            return Err(Error::InvalidArgument("finite-difference step must be positive".into()));
        }
        if !(self.backtrack_factor > 0.0 && self.backtrack_factor < 1.0) {
            return Err(Error::InvalidArgument("backtrack factor must lie in (0, 1)".into()));
        }
        Ok(())
    }
}

/// Outcome of [`newton_solve`]; returned whether or not the iteration converged.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonReport {
    pub alpha_star: Vec<f64>,
    /// Accepted Newton steps.
    pub iterations: usize,
    /// Residual ∞-norm at the initial guess and after every accepted step.
    pub residual_norms: Vec<f64>,
    pub converged: bool,
}

impl NewtonReport {
    pub fn final_residual_norm(&self) -> f64 {
        *self.residual_norms.last().expect("at least the initial norm is recorded")
    }
}

#[derive(Debug, Clone)]
pub struct ShootingReport {
    pub alpha_star: Vec<f64>,
    pub iterations: usize,
    pub residual_norms: Vec<f64>,
    pub converged: bool,
    /// Residual re-evaluated on the reported trajectory.
    pub final_residual: Vec<f64>,
    /// Coupled `(q, v, λ, μ)` trajectory from `(s₀, α*)`.
    pub trajectory: Trajectory,
    /// `u*(t) = −μ(t)/ε` at every grid point.
    pub controls: Vec<Control>,
    pub cost: f64,
}

impl ShootingReport {
    pub fn coupled_state(&self, i: usize, prob: &TrackingProblem) -> CoupledState {
        CoupledState::unflatten(self.trajectory.state(i), prob.sys.base_dim(), prob.sys.fiber_dim())
            .expect("trajectory rows have coupled dimension")
    }

    pub fn max_control(&self) -> f64 {
        self.controls.iter().map(|u| u.u.amax()).fold(0.0, f64::max)
    }
}

pub(crate) fn inf_norm(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Central-difference Jacobian, one column per coordinate of `alpha`.
pub fn fd_jacobian<F>(res: &F, alpha: &[f64], step: f64) -> Result<DMatrix<f64>>
where
    F: Fn(&[f64]) -> Result<Vec<f64>> + Sync,
{
    if !(step > 0.0) {
        return Err(Error::InvalidArgument(format!("finite-difference step must be positive, got {step}")));
    }
    let d = alpha.len();
    let columns: Vec<Vec<f64>> = (0..d)
        .into_par_iter()
        .map(|j| {
            let h = step * alpha[j].abs().max(1.0);
            let mut plus = alpha.to_vec();
            let mut minus = alpha.to_vec();
            plus[j] += h;
            minus[j] -= h;
            let fp = res(&plus)?;
            let fm = res(&minus)?;
            check_dim("residual", d, fp.len())?;
            check_dim("residual", d, fm.len())?;
            let col: Vec<f64> = fp.iter().zip(&fm).map(|(a, b)| (a - b) / (2.0 * h)).collect();
            if col.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFiniteJacobian { column: j });
            }
            Ok(col)
        })
        .collect::<Result<_>>()?;
    Ok(DMatrix::from_fn(d, d, |i, j| columns[j][i]))
}

/// Reason a dense solve failed: the row and size of the offending pivot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularPivot {
    pub row: usize,
    pub pivot: f64,
}

/// Solves `a·x = b` by Gaussian elimination with partial pivoting.
///
/// A pivot smaller than `1e-14` times the largest entry of its original row
/// is treated as singular.
pub fn solve_dense(a: &DMatrix<f64>, b: &[f64]) -> std::result::Result<Vec<f64>, SingularPivot> {
    let n = b.len();
    assert_eq!(a.nrows(), n, "square system expected");
    assert_eq!(a.ncols(), n, "square system expected");
    let mut m = a.clone();
    let mut rhs = b.to_vec();
    let mut scale: Vec<f64> = (0..n).map(|i| m.row(i).amax()).collect();

    for col in 0..n {
        let (p, _) = (col..n)
            .map(|i| (i, m[(i, col)].abs()))
            .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if p != col {
            m.swap_rows(p, col);
            rhs.swap(p, col);
            scale.swap(p, col);
        }
        let pivot = m[(col, col)];
        if !(pivot.abs() >= 1e-14 * scale[col]) || scale[col] == 0.0 {
            return Err(SingularPivot { row: col, pivot });
        }
        for i in col + 1..n {
            let factor = m[(i, col)] / pivot;
            if factor == 0.0 {
                continue;
            }
            for j in col..n {
                m[(i, j)] -= factor * m[(col, j)];
            }
            rhs[i] -= factor * rhs[col];
        }
    }

    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let tail: f64 = (i + 1..n).map(|j| m[(i, j)] * x[j]).sum();
        x[i] = (rhs[i] - tail) / m[(i, i)];
    }
    Ok(x)
}

/// Damped Newton with finite-difference Jacobian and backtracking.
pub fn newton_solve<F>(res: &F, alpha0: &[f64], cfg: &NewtonConfig) -> Result<NewtonReport>
where
    F: Fn(&[f64]) -> Result<Vec<f64>> + Sync,
{
    cfg.validate()?;
    let mut alpha = alpha0.to_vec();
    let mut r = res(&alpha)?;
    check_dim("residual", alpha.len(), r.len())?;
    let mut norm = inf_norm(&r);
    if !norm.is_finite() {
        return Err(Error::Shooting {
            alpha,
            source: Box::new(Error::InvalidArgument("non-finite residual at the initial guess".into())),
        });
    }
    let mut norms = vec![norm];
    let mut iterations = 0;

    while norm > cfg.tol_residual && iterations < cfg.max_iters {
        let jac = fd_jacobian(res, &alpha, cfg.fd_step)?;
        let rhs: Vec<f64> = r.iter().map(|v| -v).collect();
        let delta = solve_dense(&jac, &rhs).map_err(|p| Error::SingularJacobian {
            iterate: alpha.clone(),
            row: p.row,
            pivot: p.pivot,
        })?;

        let mut s = 1.0;
        let mut accepted = None;
        for _ in 0..=cfg.max_halvings {
            let trial: Vec<f64> = alpha.iter().zip(&delta).map(|(a, d)| a + s * d).collect();
            if let Ok(rt) = res(&trial) {
                let nt = inf_norm(&rt);
                if nt.is_finite() && nt < (1.0 - cfg.sufficient_decrease * s) * norm {
                    accepted = Some((trial, rt, nt));
                    break;
                }
            }
            s *= cfg.backtrack_factor;
        }
        let Some((trial, rt, nt)) = accepted else {
            break;
        };
        alpha = trial;
        r = rt;
        norm = nt;
        norms.push(norm);
        iterations += 1;
    }

    Ok(NewtonReport {
        alpha_star: alpha,
        iterations,
        residual_norms: norms,
        converged: norm <= cfg.tol_residual,
    })
}

/// Solves the tracking problem by single shooting from the costate guess `alpha0`.
pub fn solve_tracking(prob: &TrackingProblem, alpha0: &[f64], cfg: &NewtonConfig) -> Result<ShootingReport> {
    prob.validate()?;
    check_dim("initial costate guess", prob.shooting_dim(), alpha0.len())?;
    let residual = |a: &[f64]| shooting_residual(a, prob);
    let newton = newton_solve(&residual, alpha0, cfg)?;

    let trajectory = integrate_coupled(prob, &newton.alpha_star).map_err(|e| Error::Shooting {
        alpha: newton.alpha_star.clone(),
        source: Box::new(e),
    })?;
    let final_residual = terminal_residual(prob, &trajectory)?;
    let (n, k) = (prob.sys.base_dim(), prob.sys.fiber_dim());
    let controls = trajectory
        .iter()
        .map(|(_, z)| {
            let cs = CoupledState::unflatten(z, n, k)?;
            stationary_control(&cs.p, prob.epsilon)
        })
        .collect::<Result<Vec<_>>>()?;
    let cost = total_cost(&trajectory, prob)?;

    Ok(ShootingReport {
        alpha_star: newton.alpha_star,
        iterations: newton.iterations,
        residual_norms: newton.residual_norms,
        converged: newton.converged,
        final_residual,
        trajectory,
        controls,
        cost,
    })
}
