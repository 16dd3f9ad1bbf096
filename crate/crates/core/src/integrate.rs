//! Fixed-step classical Runge–Kutta integration on a uniform grid.

use crate::error::{Error, Result};

/// Right-hand side `ẋ = f(t, x)` of an ODE of fixed dimension.
pub trait VectorField {
    fn dim(&self) -> usize;

    /// Writes `f(t, x)` into `dx`. Implementations report states where the
    /// field is undefined through [`Error::Domain`].
    fn eval(&self, t: f64, x: &[f64], dx: &mut [f64]) -> Result<()>;
}

impl<V: VectorField + ?Sized> VectorField for &V {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn eval(&self, t: f64, x: &[f64], dx: &mut [f64]) -> Result<()> {
        (**self).eval(t, x, dx)
    }
}

/// Adapter turning a closure into a [`VectorField`].
pub struct FnField<F> {
    dim: usize,
    f: F,
}

impl<F> FnField<F>
where
    F: Fn(f64, &[f64], &mut [f64]) -> Result<()>,
{
    pub fn new(dim: usize, f: F) -> Self {
        Self { dim, f }
    }
}

impl<F> VectorField for FnField<F>
where
    F: Fn(f64, &[f64], &mut [f64]) -> Result<()>,
{
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, t: f64, x: &[f64], dx: &mut [f64]) -> Result<()> {
        (self.f)(t, x, dx)
    }
}

/// States sampled on the uniform grid `t0 + i·h`, `i = 0..=N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    dim: usize,
    times: Vec<f64>,
    states: Vec<f64>,
}

impl Trajectory {
    /// Builds a trajectory from explicit rows. Rows must all have length `dim`.
    pub fn from_rows(dim: usize, times: Vec<f64>, rows: &[Vec<f64>]) -> Result<Self> {
        if times.len() != rows.len() {
            return Err(Error::DimensionMismatch {
                what: "trajectory rows",
                expected: times.len(),
                got: rows.len(),
            });
        }
        let mut states = Vec::with_capacity(dim * rows.len());
        for row in rows {
            crate::error::check_dim("trajectory row", dim, row.len())?;
            states.extend_from_slice(row);
        }
        Ok(Self { dim, times, states })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of grid points (`N + 1`).
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn state(&self, i: usize) -> &[f64] {
        &self.states[i * self.dim..(i + 1) * self.dim]
    }

    pub fn first(&self) -> &[f64] {
        self.state(0)
    }

    pub fn last(&self) -> &[f64] {
        self.state(self.len() - 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &[f64])> + '_ {
        self.times.iter().copied().zip(self.states.chunks_exact(self.dim))
    }

    /// One coordinate across all grid points.
    pub fn component(&self, j: usize) -> Vec<f64> {
        self.states.chunks_exact(self.dim).map(|x| x[j]).collect()
    }
}

/// One classical RK4 step: `x + (h/6)(k1 + 2k2 + 2k3 + k4)`.
pub fn rk4_step<V: VectorField + ?Sized>(vf: &V, t: f64, x: &[f64], h: f64) -> Result<Vec<f64>> {
    if !(h > 0.0) {
        return Err(Error::InvalidArgument(format!("step size must be positive, got {h}")));
    }
    let dim = vf.dim();
    crate::error::check_dim("integrator state", dim, x.len())?;

    let mut k1 = vec![0.0; dim];
    let mut k2 = vec![0.0; dim];
    let mut k3 = vec![0.0; dim];
    let mut k4 = vec![0.0; dim];
    let mut tmp = vec![0.0; dim];

    let stage = |k: &mut [f64], tk: f64, xk: &[f64], label: usize| -> Result<()> {
        vf.eval(tk, xk, k)?;
        if k.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain {
                state: xk.to_vec(),
                reason: format!("non-finite RK4 stage {label} at t = {tk}"),
            });
        }
        Ok(())
    };

    stage(&mut k1, t, x, 1)?;
    for i in 0..dim {
        tmp[i] = x[i] + 0.5 * h * k1[i];
    }
    stage(&mut k2, t + 0.5 * h, &tmp, 2)?;
    for i in 0..dim {
        tmp[i] = x[i] + 0.5 * h * k2[i];
    }
    stage(&mut k3, t + 0.5 * h, &tmp, 3)?;
    for i in 0..dim {
        tmp[i] = x[i] + h * k3[i];
    }
    stage(&mut k4, t + h, &tmp, 4)?;

    Ok((0..dim)
        .map(|i| x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect())
}

/// Integrates `vf` from `(t0, x0)` over `[t0, t0 + horizon]` with `steps`
/// RK4 steps of size `horizon / steps`.
pub fn integrate<V: VectorField + ?Sized>(
    vf: &V,
    t0: f64,
    x0: &[f64],
    horizon: f64,
    steps: usize,
) -> Result<Trajectory> {
    if steps == 0 {
        return Err(Error::InvalidArgument("step count must be at least 1".into()));
    }
    if !(horizon > 0.0) || !horizon.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "horizon must be positive and finite, got {horizon}"
        )));
    }
    let dim = vf.dim();
    crate::error::check_dim("initial state", dim, x0.len())?;

    let h = horizon / steps as f64;
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(dim * (steps + 1));
    times.push(t0);
    states.extend_from_slice(x0);
    let mut x = x0.to_vec();
    for i in 0..steps {
        let t = t0 + i as f64 * h;
        x = rk4_step(vf, t, &x, h).map_err(|e| Error::Integration {
            step: i,
            t,
            source: Box::new(e),
        })?;
        times.push(t0 + (i + 1) as f64 * h);
        states.extend_from_slice(&x);
    }
    Ok(Trajectory { dim, times, states })
}

/// Largest componentwise deviation of a trajectory from an exact solution.
pub fn max_error(traj: &Trajectory, oracle: impl Fn(f64) -> Vec<f64>) -> f64 {
    traj.iter()
        .flat_map(|(t, x)| {
            let exact = oracle(t);
            x.iter()
                .zip(exact)
                .map(|(a, b)| (a - b).abs())
                .collect::<Vec<_>>()
        })
        .fold(0.0, f64::max)
}

/// Observed order of accuracy: least-squares slope of `log(error)` against
/// `log(h)` over a doubling sequence of step counts.
pub fn convergence_order<V: VectorField + ?Sized>(
    vf: &V,
    oracle: impl Fn(f64) -> Vec<f64>,
    t0: f64,
    x0: &[f64],
    horizon: f64,
    step_counts: &[usize],
) -> Result<f64> {
    if step_counts.len() < 3 {
        return Err(Error::InvalidArgument(
            "convergence study needs at least three step counts".into(),
        ));
    }
    if step_counts.windows(2).any(|w| w[1] != 2 * w[0]) {
        return Err(Error::InvalidArgument(format!(
            "step counts must double successively: {step_counts:?}"
        )));
    }
    let mut points = Vec::with_capacity(step_counts.len());
    for &n in step_counts {
        let traj = integrate(vf, t0, x0, horizon, n)?;
        let err = max_error(&traj, &oracle);
        if err == 0.0 {
            return Err(Error::DegenerateFit { steps: n });
        }
        points.push(((horizon / n as f64).ln(), err.ln()));
    }
    let m = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / m;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    Ok(sxy / sxx)
}
