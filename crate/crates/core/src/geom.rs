//! Frame-based description of a nonholonomic mechanical system.
//!
//! A system on `Q = ℝⁿ` with `m` independent linear velocity constraints is
//! described in an adapted frame `{e_A}` of the constraint distribution `D`,
//! `e_A = ρᴬᵢ(q) ∂/∂qⁱ`, `A = 1..k`, `k = n − m`. Admissible motions are
//! curves `(q(t), v(t))` with `q̇ = ρ(q)ᵀ v` and the reduced (multiplier-free)
//! dynamics
//!
//! ```text
//! v̇ᶜ = −Γᶜ_AB(q) vᴬ vᴮ − (G^D)^CB ρᴮᵢ(q) ∂V/∂qⁱ + uᶜ
//! ```
//!
//! All coefficient fields are user-supplied closed forms. Their first
//! partial derivatives (needed by the adjoint equations) may be supplied
//! analytically through [`SystemDerivatives`]; otherwise they are obtained by
//! central differences of the closed forms.

use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::error::{check_dim, Error, Result};
use crate::integrate::VectorField;

pub type MatrixField = Arc<dyn Fn(&DVector<f64>) -> DMatrix<f64> + Send + Sync>;
pub type VectorFieldFn = Arc<dyn Fn(&DVector<f64>) -> DVector<f64> + Send + Sync>;
pub type ChristoffelFn = Arc<dyn Fn(&DVector<f64>) -> Christoffel + Send + Sync>;
pub type DomainPredicate = Arc<dyn Fn(&DVector<f64>) -> bool + Send + Sync>;
pub type FramePartials = Arc<dyn Fn(&DVector<f64>) -> Vec<DMatrix<f64>> + Send + Sync>;
pub type ChristoffelPartials = Arc<dyn Fn(&DVector<f64>) -> Vec<Christoffel> + Send + Sync>;

/// Relative step for the finite-difference fallback of coefficient partials.
const PARTIAL_FD_STEP: f64 = 1e-6;

/// Dense rank-3 array `Γᶜ_AB` (or structure constants `Cᶜ_AB`), indexed `(c, a, b)`.
#[derive(Clone, PartialEq)]
pub struct Christoffel {
    k: usize,
    data: Vec<f64>,
}

impl Christoffel {
    pub fn zeros(k: usize) -> Self {
        Self {
            k,
            data: vec![0.0; k * k * k],
        }
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn get(&self, c: usize, a: usize, b: usize) -> f64 {
        self.data[(c * self.k + a) * self.k + b]
    }

    #[inline]
    pub fn set(&mut self, c: usize, a: usize, b: usize, value: f64) {
        self.data[(c * self.k + a) * self.k + b] = value;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    fn axpy(&mut self, alpha: f64, other: &Christoffel) {
        for (d, o) in self.data.iter_mut().zip(&other.data) {
            *d += alpha * o;
        }
    }
}

impl fmt::Debug for Christoffel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for c in 0..self.k {
            for a in 0..self.k {
                for b in 0..self.k {
                    let g = self.get(c, a, b);
                    if g != 0.0 {
                        list.entry(&((c + 1, a + 1, b + 1), g));
                    }
                }
            }
        }
        list.finish()
    }
}

/// Coefficients `ρᴬᵢ(q)` of the adapted frame, as a `k × n` matrix whose row
/// `A` holds the components of `e_A`.
#[derive(Clone)]
pub struct AdaptedFrame {
    n: usize,
    k: usize,
    rho: MatrixField,
}

impl AdaptedFrame {
    pub fn new(n: usize, k: usize, rho: MatrixField) -> Result<Self> {
        if k > n || k == 0 {
            return Err(Error::InvalidArgument(format!(
                "fiber dimension k = {k} must satisfy 1 <= k <= n = {n}"
            )));
        }
        Ok(Self { n, k, rho })
    }

    pub fn base_dim(&self) -> usize {
        self.n
    }

    pub fn fiber_dim(&self) -> usize {
        self.k
    }

    pub fn eval(&self, q: &DVector<f64>) -> DMatrix<f64> {
        (self.rho)(q)
    }
}

#[derive(Clone)]
pub struct ChristoffelField {
    gamma: ChristoffelFn,
}

impl ChristoffelField {
    pub fn new(gamma: ChristoffelFn) -> Self {
        Self { gamma }
    }

    pub fn eval(&self, q: &DVector<f64>) -> Christoffel {
        (self.gamma)(q)
    }
}

/// The kinetic-energy metric restricted to `D`, with its inverse.
#[derive(Clone)]
pub struct RestrictedMetricField {
    g: MatrixField,
    g_inv: MatrixField,
}

impl RestrictedMetricField {
    pub fn new(g: MatrixField, g_inv: MatrixField) -> Self {
        Self { g, g_inv }
    }

    pub fn eval(&self, q: &DVector<f64>) -> DMatrix<f64> {
        (self.g)(q)
    }

    pub fn eval_inv(&self, q: &DVector<f64>) -> DMatrix<f64> {
        (self.g_inv)(q)
    }
}

#[derive(Clone)]
pub struct PotentialGradient {
    dv: VectorFieldFn,
}

impl PotentialGradient {
    pub fn new(dv: VectorFieldFn) -> Self {
        Self { dv }
    }

    /// `V ≡ 0` on `ℝⁿ`.
    pub fn zero(n: usize) -> Self {
        Self::new(Arc::new(move |_| DVector::zeros(n)))
    }

    pub fn eval(&self, q: &DVector<f64>) -> DVector<f64> {
        (self.dv)(q)
    }
}

/// Analytic first partials of the coefficient fields with respect to `q`.
#[derive(Clone)]
pub struct SystemDerivatives {
    /// `∂ρ/∂qʲ` for `j = 0..n`, each `k × n`.
    pub frame_partials: FramePartials,
    /// `∂Γ/∂qʲ` for `j = 0..n`.
    pub christoffel_partials: ChristoffelPartials,
    /// Jacobian (`k × n`) of the potential force `(G^D)^CB ρᴮᵢ ∂V/∂qⁱ`.
    pub force_jacobian: MatrixField,
}

/// Point `(q, v)` of the distribution in adapted coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct AdaptedState {
    pub q: DVector<f64>,
    pub v: DVector<f64>,
}

impl AdaptedState {
    pub fn new(q: DVector<f64>, v: DVector<f64>) -> Self {
        Self { q, v }
    }

    pub fn from_slices(q: &[f64], v: &[f64]) -> Self {
        Self::new(DVector::from_column_slice(q), DVector::from_column_slice(v))
    }

    /// `(q, v)` stacked into one vector.
    pub fn to_vec(&self) -> Vec<f64> {
        self.q.iter().chain(self.v.iter()).copied().collect()
    }

    pub fn from_flat(x: &[f64], n: usize) -> Self {
        Self::from_slices(&x[..n], &x[n..])
    }
}

/// Fully actuated input, one component per fiber coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct Control {
    pub u: DVector<f64>,
}

impl Control {
    pub fn new(u: DVector<f64>) -> Self {
        Self { u }
    }

    pub fn zeros(k: usize) -> Self {
        Self::new(DVector::zeros(k))
    }

    pub fn from_slice(u: &[f64]) -> Self {
        Self::new(DVector::from_column_slice(u))
    }
}

/// Jacobians of the uncontrolled reduced field `(q̇, v̇)` at a state.
#[derive(Debug, Clone)]
pub struct DriftJacobians {
    /// `∂q̇/∂q`, `n × n`.
    pub qdot_q: DMatrix<f64>,
    /// `∂q̇/∂v = ρᵀ`, `n × k`.
    pub qdot_v: DMatrix<f64>,
    /// `∂v̇/∂q`, `k × n`.
    pub vdot_q: DMatrix<f64>,
    /// `∂v̇/∂v`, `k × k`.
    pub vdot_v: DMatrix<f64>,
}

/// A nonholonomic mechanical system given by its adapted-frame data.
#[derive(Clone)]
pub struct NonholonomicSystem {
    name: String,
    frame: AdaptedFrame,
    christoffel: ChristoffelField,
    metric: RestrictedMetricField,
    potential: PotentialGradient,
    annihilator: MatrixField,
    domain: DomainPredicate,
    derivatives: Option<SystemDerivatives>,
}

impl fmt::Debug for NonholonomicSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NonholonomicSystem")
            .field("name", &self.name)
            .field("n", &self.frame.n)
            .field("k", &self.frame.k)
            .field("analytic_derivatives", &self.derivatives.is_some())
            .finish()
    }
}

impl NonholonomicSystem {
    /// Assemble a system; the domain is all of `ℝⁿ` and coefficient partials
    /// fall back to finite differences until overridden.
    pub fn new(
        name: impl Into<String>,
        frame: AdaptedFrame,
        christoffel: ChristoffelField,
        metric: RestrictedMetricField,
        potential: PotentialGradient,
        annihilator: MatrixField,
    ) -> Self {
        Self {
            name: name.into(),
            frame,
            christoffel,
            metric,
            potential,
            annihilator,
            domain: Arc::new(|_| true),
            derivatives: None,
        }
    }

    pub fn with_domain(mut self, domain: DomainPredicate) -> Self {
        self.domain = domain;
        self
    }

    pub fn with_derivatives(mut self, derivatives: SystemDerivatives) -> Self {
        self.derivatives = Some(derivatives);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base_dim(&self) -> usize {
        self.frame.n
    }

    pub fn fiber_dim(&self) -> usize {
        self.frame.k
    }

    pub fn constraint_count(&self) -> usize {
        self.frame.n - self.frame.k
    }

    pub fn frame(&self) -> &AdaptedFrame {
        &self.frame
    }

    pub fn christoffel(&self) -> &ChristoffelField {
        &self.christoffel
    }

    pub fn metric(&self) -> &RestrictedMetricField {
        &self.metric
    }

    pub fn potential(&self) -> &PotentialGradient {
        &self.potential
    }

    pub fn annihilator(&self, q: &DVector<f64>) -> DMatrix<f64> {
        (self.annihilator)(q)
    }

    pub fn has_analytic_derivatives(&self) -> bool {
        self.derivatives.is_some()
    }

    pub fn in_domain(&self, q: &DVector<f64>) -> bool {
        (self.domain)(q)
    }

    pub fn check_state(&self, s: &AdaptedState) -> Result<()> {
        check_dim("base point q", self.frame.n, s.q.len())?;
        check_dim("fiber velocity v", self.frame.k, s.v.len())
    }

    fn check_domain(&self, q: &DVector<f64>) -> Result<()> {
        if self.in_domain(q) {
            Ok(())
        } else {
            Err(Error::Domain {
                state: q.iter().copied().collect(),
                reason: format!("q outside the declared domain of `{}`", self.name),
            })
        }
    }

    /// `q̇ = ρ(q)ᵀ v`.
    pub fn admissible_velocity(&self, s: &AdaptedState) -> Result<DVector<f64>> {
        self.check_state(s)?;
        Ok(self.frame.eval(&s.q).transpose() * &s.v)
    }

    /// Potential force term `(G^D)^CB ρᴮᵢ ∂V/∂qⁱ`.
    pub fn potential_force(&self, q: &DVector<f64>) -> DVector<f64> {
        let rho = self.frame.eval(q);
        self.metric.eval_inv(q) * (rho * self.potential.eval(q))
    }

    /// Uncontrolled reduced acceleration `v̇ᶜ = −Γᶜ_AB vᴬ vᴮ − (G^D)^CB ρᴮᵢ ∂V/∂qⁱ`.
    pub fn nh_acceleration(&self, s: &AdaptedState) -> Result<DVector<f64>> {
        self.check_state(s)?;
        self.check_domain(&s.q)?;
        let k = self.frame.k;
        let gamma = self.christoffel.eval(&s.q);
        let force = self.potential_force(&s.q);
        let mut vdot = DVector::zeros(k);
        for c in 0..k {
            let mut quad = 0.0;
            for a in 0..k {
                for b in 0..k {
                    quad += gamma.get(c, a, b) * s.v[a] * s.v[b];
                }
            }
            vdot[c] = -quad - force[c];
        }
        if vdot.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain {
                state: s.to_vec(),
                reason: "non-finite reduced acceleration".into(),
            });
        }
        Ok(vdot)
    }

    pub fn controlled_acceleration(&self, s: &AdaptedState, u: &Control) -> Result<DVector<f64>> {
        check_dim("control u", self.frame.k, u.u.len())?;
        Ok(self.nh_acceleration(s)? + &u.u)
    }

    /// `μᵃᵢ(q) q̇ⁱ` for each constraint one-form; zero iff `q̇ ∈ D_q`.
    pub fn constraint_residual(&self, q: &DVector<f64>, qdot: &DVector<f64>) -> Result<DVector<f64>> {
        check_dim("base point q", self.frame.n, q.len())?;
        check_dim("velocity qdot", self.frame.n, qdot.len())?;
        Ok(self.annihilator(q) * qdot)
    }

    fn frame_partials(&self, q: &DVector<f64>) -> Vec<DMatrix<f64>> {
        match &self.derivatives {
            Some(d) => (d.frame_partials)(q),
            None => central_partials(q, |p| self.frame.eval(p), |a, b, h| (a - b) / (2.0 * h)),
        }
    }

    fn christoffel_partials(&self, q: &DVector<f64>) -> Vec<Christoffel> {
        match &self.derivatives {
            Some(d) => (d.christoffel_partials)(q),
            None => central_partials(
                q,
                |p| self.christoffel.eval(p),
                |a, b, h| {
                    let mut d = a;
                    d.axpy(-1.0, &b);
                    d.data.iter_mut().for_each(|x| *x /= 2.0 * h);
                    d
                },
            ),
        }
    }

    fn force_jacobian(&self, q: &DVector<f64>) -> DMatrix<f64> {
        match &self.derivatives {
            Some(d) => (d.force_jacobian)(q),
            None => {
                let cols = central_partials(
                    q,
                    |p| self.potential_force(p),
                    |a, b, h| (a - b) / (2.0 * h),
                );
                DMatrix::from_columns(&cols)
            }
        }
    }

    /// Jacobians of `(q̇, v̇)` with `u` held fixed (the control enters additively).
    pub fn drift_jacobians(&self, s: &AdaptedState) -> Result<DriftJacobians> {
        self.check_state(s)?;
        self.check_domain(&s.q)?;
        let (n, k) = (self.frame.n, self.frame.k);
        let rho = self.frame.eval(&s.q);
        let gamma = self.christoffel.eval(&s.q);
        let d_rho = self.frame_partials(&s.q);
        let d_gamma = self.christoffel_partials(&s.q);
        let d_force = self.force_jacobian(&s.q);

        let mut qdot_q = DMatrix::zeros(n, n);
        for (j, d) in d_rho.iter().enumerate() {
            qdot_q.set_column(j, &(d.transpose() * &s.v));
        }

        let mut vdot_q = -d_force;
        for j in 0..n {
            for c in 0..k {
                let mut quad = 0.0;
                for a in 0..k {
                    for b in 0..k {
                        quad += d_gamma[j].get(c, a, b) * s.v[a] * s.v[b];
                    }
                }
                vdot_q[(c, j)] -= quad;
            }
        }

        let mut vdot_v = DMatrix::zeros(k, k);
        for c in 0..k {
            for d in 0..k {
                let mut acc = 0.0;
                for b in 0..k {
                    acc += (gamma.get(c, d, b) + gamma.get(c, b, d)) * s.v[b];
                }
                vdot_v[(c, d)] = -acc;
            }
        }

        let jac = DriftJacobians {
            qdot_q,
            qdot_v: rho.transpose(),
            vdot_q,
            vdot_v,
        };
        let finite = [&jac.qdot_q, &jac.qdot_v, &jac.vdot_q, &jac.vdot_v]
            .iter()
            .all(|m| m.iter().all(|x| x.is_finite()))
            && gamma.is_finite();
        if !finite {
            return Err(Error::Domain {
                state: s.to_vec(),
                reason: "non-finite drift Jacobian".into(),
            });
        }
        Ok(jac)
    }
}

/// The uncontrolled reduced dynamics as an ODE in the stacked state `(q, v)`.
#[derive(Debug, Clone, Copy)]
pub struct FreeFlow<'a> {
    pub system: &'a NonholonomicSystem,
}

impl<'a> FreeFlow<'a> {
    pub fn new(system: &'a NonholonomicSystem) -> Self {
        Self { system }
    }
}

impl VectorField for FreeFlow<'_> {
    fn dim(&self) -> usize {
        self.system.base_dim() + self.system.fiber_dim()
    }

    fn eval(&self, _t: f64, x: &[f64], dx: &mut [f64]) -> Result<()> {
        let n = self.system.base_dim();
        let s = AdaptedState::from_flat(x, n);
        let qdot = self.system.admissible_velocity(&s)?;
        let vdot = self.system.nh_acceleration(&s)?;
        dx[..n].copy_from_slice(qdot.as_slice());
        dx[n..].copy_from_slice(vdot.as_slice());
        Ok(())
    }
}

fn central_partials<T>(
    q: &DVector<f64>,
    eval: impl Fn(&DVector<f64>) -> T,
    quotient: impl Fn(T, T, f64) -> T,
) -> Vec<T> {
    (0..q.len())
        .map(|j| {
            let h = PARTIAL_FD_STEP * q[j].abs().max(1.0);
            let mut plus = q.clone();
            let mut minus = q.clone();
            plus[j] += h;
            minus[j] -= h;
            quotient(eval(&plus), eval(&minus), h)
        })
        .collect()
}

/// Christoffel symbols from the structure constants of the nonholonomic
/// bracket, `Γᶜ_AB = ½(Cᴮ_CA + Cᴬ_CB + Cᶜ_AB)`.
///
/// Only meaningful when the restricted metric has constant coefficients in
/// the frame (orthonormal frame). It does not reproduce the Christoffel
/// symbols of frames with position-dependent metric coefficients, such as
/// the particle's.
pub fn christoffel_from_structure(structure: &Christoffel) -> Result<Christoffel> {
    let k = structure.dim();
    let scale = structure.max_abs().max(1.0);
    for c in 0..k {
        for a in 0..k {
            for b in a..k {
                if (structure.get(c, a, b) + structure.get(c, b, a)).abs() > 1e-14 * scale {
                    return Err(Error::NotAntisymmetric { c, a, b });
                }
            }
        }
    }
    let mut gamma = Christoffel::zeros(k);
    for c in 0..k {
        for a in 0..k {
            for b in 0..k {
                let value = 0.5
                    * (structure.get(b, c, a) + structure.get(a, c, b) + structure.get(c, a, b));
                gamma.set(c, a, b, value);
            }
        }
    }
    Ok(gamma)
}
