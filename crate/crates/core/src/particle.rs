//! The nonholonomic particle: a unit mass in `ℝ³` subject to `ẋ + y ż = 0`.
//!
//! Adapted frame `e₁ = ∂/∂y`, `e₂ = ∂/∂z − y ∂/∂x`, so that
//! `ẋ = −y v²`, `ẏ = v¹`, `ż = v²` and the reduced dynamics read
//! `v̇¹ = 0`, `v̇² = −y/(1+y²) v¹ v²`.
//!
//! Two oracles independent of the frame machinery live here as well: the
//! closed-form flow and the unreduced Lagrange–d'Alembert equations with the
//! multiplier eliminated.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::error::{check_dim, Error, Result};
use crate::geom::{
    AdaptedFrame, AdaptedState, Christoffel, ChristoffelField, NonholonomicSystem,
    PotentialGradient, RestrictedMetricField, SystemDerivatives,
};
use crate::integrate::VectorField;

/// `|c₁|` at or below which the closed-form flow switches to the `c₁ = 0` branch.
pub const C1_SWITCH: f64 = 1e-10;

/// Default tolerance on `|v_x + y v_z|` accepted by [`project`].
pub const DRIFT_TOLERANCE: f64 = 1e-8;

fn gamma_212(y: f64) -> f64 {
    y / (1.0 + y * y)
}

fn gamma_212_prime(y: f64) -> f64 {
    let s = 1.0 + y * y;
    (1.0 - y * y) / (s * s)
}

/// Builds the particle with analytic coefficient partials.
pub fn particle_system() -> NonholonomicSystem {
    let frame = AdaptedFrame::new(
        3,
        2,
        Arc::new(|q: &DVector<f64>| {
            DMatrix::from_row_slice(2, 3, &[0.0, 1.0, 0.0, -q[1], 0.0, 1.0])
        }),
    )
    .expect("particle frame dimensions are valid");

    let christoffel = ChristoffelField::new(Arc::new(|q: &DVector<f64>| {
        let mut g = Christoffel::zeros(2);
        g.set(1, 0, 1, gamma_212(q[1]));
        g
    }));

    let metric = RestrictedMetricField::new(
        Arc::new(|q: &DVector<f64>| DMatrix::from_diagonal(&DVector::from_column_slice(&[1.0, 1.0 + q[1] * q[1]]))),
        Arc::new(|q: &DVector<f64>| {
            DMatrix::from_diagonal(&DVector::from_column_slice(&[1.0, 1.0 / (1.0 + q[1] * q[1])]))
        }),
    );

    let derivatives = SystemDerivatives {
        frame_partials: Arc::new(|_q: &DVector<f64>| {
            let mut d = vec![DMatrix::zeros(2, 3); 3];
            d[1][(1, 0)] = -1.0;
            d
        }),
        christoffel_partials: Arc::new(|q: &DVector<f64>| {
            let mut d = vec![Christoffel::zeros(2); 3];
            d[1].set(1, 0, 1, gamma_212_prime(q[1]));
            d
        }),
        force_jacobian: Arc::new(|_q: &DVector<f64>| DMatrix::zeros(2, 3)),
    };

    NonholonomicSystem::new(
        "nonholonomic-particle",
        frame,
        christoffel,
        metric,
        PotentialGradient::zero(3),
        Arc::new(|q: &DVector<f64>| DMatrix::from_row_slice(1, 3, &[1.0, 0.0, q[1]])),
    )
    .with_derivatives(derivatives)
}

/// Restricted Lagrangian `ℓ = ½((v¹)² + (1+y²)(v²)²)`.
pub fn restricted_energy(s: &AdaptedState) -> f64 {
    let y = s.q[1];
    0.5 * (s.v[0] * s.v[0] + (1.0 + y * y) * s.v[1] * s.v[1])
}

/// Integration constants of the closed-form flow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticParams {
    pub c1: f64,
    pub c2: f64,
    pub x0: f64,
    pub y0: f64,
    pub z0: f64,
}

impl AnalyticParams {
    /// Whether the flow is evaluated on the `c₁ = 0` branch.
    pub fn is_singular(&self) -> bool {
        self.c1.abs() <= C1_SWITCH
    }

    /// Initial fiber velocity `v²(0) = c₂ / √(y₀² + 1)`.
    pub fn v2_initial(&self) -> f64 {
        self.c2 / (self.y0 * self.y0 + 1.0).sqrt()
    }
}

pub fn analytic_constants(s0: &AdaptedState) -> AnalyticParams {
    let y0 = s0.q[1];
    AnalyticParams {
        c1: s0.v[0],
        c2: s0.v[1] * (y0 * y0 + 1.0).sqrt(),
        x0: s0.q[0],
        y0,
        z0: s0.q[2],
    }
}

/// Closed-form solution of the uncontrolled reduced particle dynamics.
pub fn analytic_flow(p: &AnalyticParams, t: f64) -> AdaptedState {
    if p.is_singular() {
        let v2 = p.v2_initial();
        return AdaptedState::from_slices(
            &[p.x0 - p.y0 * v2 * t, p.y0, p.z0 + v2 * t],
            &[0.0, v2],
        );
    }
    let y = p.y0 + p.c1 * t;
    let root0 = (p.y0 * p.y0 + 1.0).sqrt();
    let root = (y * y + 1.0).sqrt();
    let ratio = p.c2 / p.c1;
    let x = p.x0 + ratio * (root0 - root);
    let z = p.z0 + ratio * (y.asinh() - p.y0.asinh());
    AdaptedState::from_slices(&[x, y, z], &[p.c1, p.c2 / root])
}

/// State of the particle in ambient coordinates `(q, q̇)` of `Tℝ³`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmbientState {
    pub q: [f64; 3],
    pub vq: [f64; 3],
}

impl AmbientState {
    pub fn constraint_drift(&self) -> f64 {
        self.vq[0] + self.q[1] * self.vq[2]
    }

    pub fn to_array(&self) -> [f64; 6] {
        [self.q[0], self.q[1], self.q[2], self.vq[0], self.vq[1], self.vq[2]]
    }

    pub fn from_slice(x: &[f64]) -> Self {
        Self {
            q: [x[0], x[1], x[2]],
            vq: [x[3], x[4], x[5]],
        }
    }
}

/// Lagrange multiplier enforcing `v_x + y v_z = 0` along the unreduced flow.
pub fn multiplier(s: &AmbientState) -> f64 {
    let y = s.q[1];
    -s.vq[2] * s.vq[1] / (1.0 + y * y)
}

/// Lagrange–d'Alembert equations: `q̇ = v`, `v̇_x = λ`, `v̇_y = 0`, `v̇_z = yλ`.
/// The returned value holds `q̇` in `q` and `v̇` in `vq`.
pub fn unreduced_field(s: &AmbientState) -> AmbientState {
    let lambda = multiplier(s);
    AmbientState {
        q: s.vq,
        vq: [lambda, 0.0, s.q[1] * lambda],
    }
}

/// [`unreduced_field`] on the flat 6-vector `(x, y, z, v_x, v_y, v_z)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct UnreducedFlow;

impl VectorField for UnreducedFlow {
    fn dim(&self) -> usize {
        6
    }

    fn eval(&self, _t: f64, x: &[f64], dx: &mut [f64]) -> Result<()> {
        let d = unreduced_field(&AmbientState::from_slice(x));
        dx.copy_from_slice(&d.to_array());
        Ok(())
    }
}

pub fn embed(s: &AdaptedState) -> Result<AmbientState> {
    check_dim("particle base point", 3, s.q.len())?;
    check_dim("particle fiber velocity", 2, s.v.len())?;
    let y = s.q[1];
    Ok(AmbientState {
        q: [s.q[0], s.q[1], s.q[2]],
        vq: [-y * s.v[1], s.v[0], s.v[1]],
    })
}

pub fn project(a: &AmbientState) -> Result<AdaptedState> {
    project_with_tolerance(a, DRIFT_TOLERANCE)
}

pub fn project_with_tolerance(a: &AmbientState, tolerance: f64) -> Result<AdaptedState> {
    let residual = a.constraint_drift().abs();
    if !(residual <= tolerance) {
        return Err(Error::ConstraintViolation {
            residual,
            tolerance,
        });
    }
    Ok(AdaptedState::from_slices(&a.q, &[a.vq[1], a.vq[2]]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{Control, FreeFlow};
    use crate::integrate::integrate;
    use proptest::prelude::*;

    fn paper_initial() -> AdaptedState {
        AdaptedState::from_slices(&[0.5, 0.2, 0.7], &[0.5, 0.4])
    }

    #[test]
    fn admissible_velocity_examples() {
        let sys = particle_system();
        let s = AdaptedState::from_slices(&[0.0, 0.2, 0.0], &[0.5, 0.4]);
        let qdot = sys.admissible_velocity(&s).unwrap();
        // ẋ = −y v², ẏ = v¹, ż = v²
        let expected = [-0.2 * 0.4, 0.5, 0.4];
        for i in 0..3 {
            assert!((qdot[i] - expected[i]).abs() < 1e-16);
        }
        let s = AdaptedState::from_slices(&[1.0, 0.0, 2.0], &[0.0, 1.0]);
        assert_eq!(sys.admissible_velocity(&s).unwrap().as_slice(), &[0.0, 0.0, 1.0]);
    }

    #[test]
    fn reduced_acceleration_examples() {
        let sys = particle_system();
        let s = AdaptedState::from_slices(&[0.0, 0.2, 0.0], &[0.5, 0.4]);
        let a = sys.nh_acceleration(&s).unwrap();
        assert_eq!(a[0], 0.0);
        assert!((a[1] - (-0.038_461_538_461_538_46)).abs() < 1e-16);

        let s = AdaptedState::from_slices(&[0.3, -1.1, 2.0], &[2.5, 0.0]);
        assert_eq!(sys.nh_acceleration(&s).unwrap().as_slice(), &[0.0, 0.0]);
        let s = AdaptedState::from_slices(&[0.3, 0.0, 2.0], &[2.5, -3.0]);
        assert_eq!(sys.nh_acceleration(&s).unwrap().as_slice(), &[0.0, 0.0]);
    }

    #[test]
    fn controlled_acceleration_examples() {
        let sys = particle_system();
        let s = AdaptedState::from_slices(&[0.0, 0.0, 0.0], &[0.0, 1.0]);
        let a = sys.controlled_acceleration(&s, &Control::from_slice(&[1.0, -2.0])).unwrap();
        assert_eq!(a.as_slice(), &[1.0, -2.0]);

        let s = AdaptedState::from_slices(&[0.0, 0.2, 0.0], &[0.5, 0.4]);
        let a = sys.controlled_acceleration(&s, &Control::from_slice(&[0.1, 0.1])).unwrap();
        assert!((a[0] - 0.1).abs() < 1e-16);
        assert!((a[1] - (0.1 - 0.038_461_538_461_538_46)).abs() < 1e-16);
    }

    #[test]
    fn constraint_residual_examples() {
        let sys = particle_system();
        let r = |q: [f64; 3], qd: [f64; 3]| {
            sys.constraint_residual(&DVector::from_column_slice(&q), &DVector::from_column_slice(&qd))
                .unwrap()[0]
        };
        assert!(r([0.0, 0.2, 0.0], [-0.08, 0.5, 0.4]).abs() < 1e-16);
        assert_eq!(r([3.0, -7.0, 1.0], [1.0, 0.0, 0.0]), 1.0);
        assert_eq!(r([0.0, 1.0, 0.0], [-1.0, 0.0, 1.0]), 0.0);
    }

    #[test]
    fn metric_and_christoffel_values() {
        let sys = particle_system();
        let q = DVector::from_column_slice(&[0.0, 0.2, 0.0]);
        let g = sys.metric().eval(&q);
        assert_eq!(g[(0, 0)], 1.0);
        assert!((g[(1, 1)] - 1.04).abs() < 1e-15);
        assert_eq!(g[(0, 1)], g[(1, 0)]);
        let prod = g * sys.metric().eval_inv(&q);
        assert!((prod - DMatrix::identity(2, 2)).amax() <= 1e-12);

        let g0 = sys.christoffel().eval(&DVector::zeros(3));
        assert_eq!(g0.max_abs(), 0.0);
    }

    #[test]
    fn analytic_derivatives_match_fd_fallback() {
        let sys = particle_system();
        let s = AdaptedState::from_slices(&[0.1, 0.7, -0.3], &[1.3, -0.4]);
        let analytic = sys.drift_jacobians(&s).unwrap();

        let plain = NonholonomicSystem::new(
            "particle-fd",
            sys.frame().clone(),
            sys.christoffel().clone(),
            sys.metric().clone(),
            sys.potential().clone(),
            Arc::new(|q: &DVector<f64>| DMatrix::from_row_slice(1, 3, &[1.0, 0.0, q[1]])),
        );
        assert!(!plain.has_analytic_derivatives());
        let fd = plain.drift_jacobians(&s).unwrap();
        assert!((analytic.qdot_q - fd.qdot_q).amax() < 1e-8);
        assert!((analytic.vdot_q - fd.vdot_q).amax() < 1e-8);
        assert_eq!(analytic.vdot_v, fd.vdot_v);
    }

    #[test]
    fn constants_from_paper_initial_condition() {
        let p = analytic_constants(&paper_initial());
        assert_eq!(p.c1, 0.5);
        assert!((p.c2 - 0.4 * 1.04f64.sqrt()).abs() < 1e-16);
        assert!((p.c2 - 0.407_921_561_087_423_8).abs() < 1e-15);
        assert_eq!((p.x0, p.y0, p.z0), (0.5, 0.2, 0.7));
    }

    #[test]
    fn singular_and_straight_line_selectors() {
        let p = analytic_constants(&AdaptedState::from_slices(&[0.0, 0.3, 0.0], &[0.0, 0.8]));
        assert_eq!(p.c1, 0.0);
        assert!(p.is_singular());
        let p = analytic_constants(&AdaptedState::from_slices(&[0.0, 0.3, 0.0], &[1.0, 0.0]));
        assert_eq!(p.c2, 0.0);
        let s = analytic_flow(&p, 2.0);
        assert_eq!(s.v[1], 0.0);
        assert_eq!((s.q[0], s.q[2]), (0.0, 0.0));
        assert!((s.q[1] - 2.3).abs() < 1e-15);
    }

    #[test]
    fn singular_branch_recovers_constant_line() {
        // y₀ = 0: x stays put, z advances at rate v²
        let p = analytic_constants(&AdaptedState::from_slices(&[1.0, 0.0, 1.0], &[0.0, 1.0]));
        for &t in &[0.0, 0.5, 4.0] {
            let s = analytic_flow(&p, t);
            assert_eq!(s.q.as_slice(), &[1.0, 0.0, 1.0 + t]);
            assert_eq!(s.v.as_slice(), &[0.0, 1.0]);
        }
    }

    #[test]
    fn closed_form_matches_fine_rk4() {
        let sys = particle_system();
        let s0 = paper_initial();
        let traj = integrate(&FreeFlow::new(&sys), 0.0, &s0.to_vec(), 4.0, 400_000).unwrap();
        let exact = analytic_flow(&analytic_constants(&s0), 4.0).to_vec();
        for (a, b) in traj.last().iter().zip(&exact) {
            assert!((a - b).abs() <= 1e-8, "{a} vs {b}");
        }
    }

    #[test]
    fn rk4_against_closed_form_accuracy_and_order() {
        let sys = particle_system();
        let flow = FreeFlow::new(&sys);
        let s0 = paper_initial();
        let p = analytic_constants(&s0);
        let exact = |t: f64| analytic_flow(&p, t).to_vec();
        let traj = integrate(&flow, 0.0, &s0.to_vec(), 4.0, 4000).unwrap();
        assert!(crate::integrate::max_error(&traj, exact) <= 1e-10);
        // From N ≈ 1000 on the error sits at the roundoff floor (~1e-13), so
        // the order is measured where truncation dominates.
        let order = crate::integrate::convergence_order(&flow, exact, 0.0, &s0.to_vec(), 4.0, &[25, 50, 100, 200]).unwrap();
        assert!((3.8..=4.2).contains(&order), "order {order}");
    }

    #[test]
    fn closed_form_satisfies_reduced_equations() {
        let sys = particle_system();
        let h = 1e-6;
        for s0 in [
            paper_initial(),
            AdaptedState::from_slices(&[-1.0, -0.7, 0.3], &[-0.9, 1.3]),
        ] {
            let p = analytic_constants(&s0);
            for i in 0..=8 {
                let t = 0.5 * i as f64;
                let plus = analytic_flow(&p, t + h).to_vec();
                let minus = analytic_flow(&p, t - h).to_vec();
                let s = analytic_flow(&p, t);
                let mut field = sys.admissible_velocity(&s).unwrap().as_slice().to_vec();
                field.extend_from_slice(sys.nh_acceleration(&s).unwrap().as_slice());
                for j in 0..5 {
                    let deriv = (plus[j] - minus[j]) / (2.0 * h);
                    assert!((deriv - field[j]).abs() <= 1e-6, "t={t} j={j}");
                }
            }
        }
    }

    #[test]
    fn unreduced_field_examples() {
        let s = AmbientState {
            q: [1.0, 0.4, -2.0],
            vq: [3.0, 0.0, 5.0],
        };
        let d = unreduced_field(&s);
        assert_eq!(d.vq, [0.0, 0.0, 0.0]);
        assert_eq!(d.q, s.vq);

        let s = AmbientState {
            q: [0.0, 0.2, 0.0],
            vq: [-0.08, 0.5, 0.4],
        };
        let lambda = -0.4 * 0.5 / 1.04;
        assert!((multiplier(&s) - (-0.192_307_692_307_692_3)).abs() < 1e-16);
        let d = unreduced_field(&s);
        assert_eq!(d.vq[0], lambda);
        assert_eq!(d.vq[1], 0.0);
        assert!((d.vq[2] - 0.2 * lambda).abs() < 1e-17);
    }

    #[test]
    fn project_off_constraint_is_rejected() {
        let a = AmbientState {
            q: [0.0, 0.0, 0.0],
            vq: [1.0, 0.0, 0.0],
        };
        assert!(matches!(project(&a), Err(Error::ConstraintViolation { .. })));
        let e = embed(&AdaptedState::from_slices(&[0.0, 0.2, 0.0], &[0.5, 0.4])).unwrap();
        assert_eq!(e.vq, [-0.2 * 0.4, 0.5, 0.4]);
        assert!(embed(&AdaptedState::from_slices(&[0.0, 0.2], &[0.5, 0.4])).is_err());
    }

    proptest! {
        #[test]
        fn frame_is_annihilated(x in -5.0..5.0f64, y in -5.0..5.0f64, z in -5.0..5.0f64,
                                v1 in -3.0..3.0f64, v2 in -3.0..3.0f64) {
            let sys = particle_system();
            let s = AdaptedState::from_slices(&[x, y, z], &[v1, v2]);
            let q = s.q.clone();
            let prod = sys.annihilator(&q) * sys.frame().eval(&q).transpose();
            prop_assert!(prod.amax() <= 1e-12);
            let qdot = sys.admissible_velocity(&s).unwrap();
            prop_assert!(sys.constraint_residual(&q, &qdot).unwrap().amax() <= 1e-12);
        }

        #[test]
        fn acceleration_is_quadratic_and_control_additive(
            y in -5.0..5.0f64, v1 in -3.0..3.0f64, v2 in -3.0..3.0f64,
            u1 in -3.0..3.0f64, u2 in -3.0..3.0f64,
        ) {
            let sys = particle_system();
            let s = AdaptedState::from_slices(&[0.1, y, 0.3], &[v1, v2]);
            let s2 = AdaptedState::from_slices(&[0.1, y, 0.3], &[2.0 * v1, 2.0 * v2]);
            let a = sys.nh_acceleration(&s).unwrap();
            let a2 = sys.nh_acceleration(&s2).unwrap();
            for c in 0..2 {
                prop_assert_eq!(a2[c], 4.0 * a[c]);
            }
            let u = Control::from_slice(&[u1, u2]);
            let with = sys.controlled_acceleration(&s, &u).unwrap();
            let without = sys.controlled_acceleration(&s, &Control::zeros(2)).unwrap();
            prop_assert_eq!(&without, &a);
            let diff = with - without;
            prop_assert!((diff - &u.u).amax() <= 4.0 * f64::EPSILON * (1.0 + a.amax()));
        }

        #[test]
        fn embed_project_round_trip(x in -5.0..5.0f64, y in -5.0..5.0f64, z in -5.0..5.0f64,
                                    v1 in -3.0..3.0f64, v2 in -3.0..3.0f64) {
            let s = AdaptedState::from_slices(&[x, y, z], &[v1, v2]);
            let back = project(&embed(&s).unwrap()).unwrap();
            prop_assert!((back.to_vec().iter().zip(s.to_vec()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)) <= 1e-15);
        }

        #[test]
        fn analytic_constants_round_trip(x in -5.0..5.0f64, y in -5.0..5.0f64, z in -5.0..5.0f64,
                                         v1 in -3.0..3.0f64, v2 in -3.0..3.0f64) {
            let s = AdaptedState::from_slices(&[x, y, z], &[v1, v2]);
            let back = analytic_flow(&analytic_constants(&s), 0.0);
            for (a, b) in back.to_vec().iter().zip(s.to_vec()) {
                prop_assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()));
            }
        }
    }
}
