//! Explicit time marching: CFL control, SSP-RK3 and the two-stage
//! fourth-order scheme.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::grid::Field;
use crate::state::{to_primitive, GasModel};

/// Minimal vector-space interface the integrators need.
pub trait StateVector: Clone {
    /// `self += a * x`
    fn axpy(&mut self, a: f64, x: &Self);
    fn scale(&mut self, a: f64);
}

impl StateVector for f64 {
    fn axpy(&mut self, a: f64, x: &Self) {
        *self += a * x;
    }
    fn scale(&mut self, a: f64) {
        *self *= a;
    }
}

impl StateVector for Field {
    fn axpy(&mut self, a: f64, x: &Self) {
        debug_assert_eq!(self.cells.len(), x.cells.len());
        for (s, v) in self.cells.iter_mut().zip(&x.cells) {
            *s += *v * a;
        }
    }
    fn scale(&mut self, a: f64) {
        for s in &mut self.cells {
            *s = *s * a;
        }
    }
}

/// Semi-discrete right-hand side `dS/dt = L(S)`.
pub trait RhsEvaluator<S> {
    fn rhs(&mut self, t: f64, state: &S, dt: f64, stage: usize) -> Result<S>;

    /// `(L, dL/dt)`.
    fn rhs_with_derivative(&mut self, t: f64, state: &S, dt: f64, stage: usize) -> Result<(S, S)>;

    /// Called on every stage result before it is used further.
    fn accept(&mut self, _state: &S, _stage: usize) -> Result<()> {
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeScheme {
    SspRk3,
    S2o4,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepPlan {
    pub cfl: f64,
    pub scheme: TimeScheme,
    /// Overrides the CFL step (accuracy tests use `dx^(r/s)`).
    pub fixed_dt: Option<f64>,
}

/// `cfl * min(dx/(|U|+c), dy/(|V|+c))`, tightened by `dx^2 rho/(4 mu)` when
/// viscous.
pub fn compute_dt(field: &Field, gas: &GasModel, cfl: f64) -> Result<f64> {
    let mesh = &field.mesh;
    let two_d = mesh.dim() == crate::grid::Dim::Two;
    let mut dt = f64::INFINITY;
    for (_, _, w) in field.interior() {
        let q = to_primitive(w, gas)?;
        let c = q.sound_speed(gas);
        dt = dt.min(mesh.dx / (q.u.abs() + c));
        if two_d {
            dt = dt.min(mesh.dy / (q.v.abs() + c));
        }
        if gas.mu > 0.0 {
            dt = dt.min(0.25 * mesh.dx * mesh.dx * q.rho / gas.mu);
            if two_d {
                dt = dt.min(0.25 * mesh.dy * mesh.dy * q.rho / gas.mu);
            }
        }
    }
    Ok(cfl * dt)
}

/// Shu-Osher three-stage SSP Runge-Kutta.
pub fn ssp_rk3_step<S: StateVector, E: RhsEvaluator<S>>(s: &S, t: f64, dt: f64, eval: &mut E) -> Result<S> {
    let l0 = eval.rhs(t, s, dt, 0)?;
    let mut s1 = s.clone();
    s1.axpy(dt, &l0);
    eval.accept(&s1, 0)?;

    let l1 = eval.rhs(t + dt, &s1, dt, 1)?;
    let mut s2 = s1;
    s2.axpy(dt, &l1);
    s2.scale(0.25);
    s2.axpy(0.75, s);
    eval.accept(&s2, 1)?;

    let l2 = eval.rhs(t + 0.5 * dt, &s2, dt, 2)?;
    let mut s3 = s2;
    s3.axpy(dt, &l2);
    s3.scale(2.0 / 3.0);
    s3.axpy(1.0 / 3.0, s);
    eval.accept(&s3, 2)?;
    Ok(s3)
}

/// Two-stage fourth-order step from `L` and `dL/dt`.
pub fn s2o4_step<S: StateVector, E: RhsEvaluator<S>>(s: &S, t: f64, dt: f64, eval: &mut E) -> Result<S> {
    let (l0, dl0) = eval.rhs_with_derivative(t, s, dt, 0)?;
    let mut mid = s.clone();
    mid.axpy(0.5 * dt, &l0);
    mid.axpy(0.125 * dt * dt, &dl0);
    eval.accept(&mid, 0)?;

    let (_, dl1) = eval.rhs_with_derivative(t + 0.5 * dt, &mid, dt, 1)?;
    let mut next = s.clone();
    next.axpy(dt, &l0);
    next.axpy(dt * dt / 6.0, &dl0);
    next.axpy(dt * dt / 3.0, &dl1);
    eval.accept(&next, 1)?;
    Ok(next)
}

pub fn step<S: StateVector, E: RhsEvaluator<S>>(scheme: TimeScheme, s: &S, t: f64, dt: f64, eval: &mut E) -> Result<S> {
    match scheme {
        TimeScheme::SspRk3 => ssp_rk3_step(s, t, dt, eval),
        TimeScheme::S2o4 => s2o4_step(s, t, dt, eval),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Mesh;
    use crate::state::{Conserved, Primitive};

    /// `dy/dt = k y` with exact time derivative of the right-hand side.
    struct Linear(f64);

    impl RhsEvaluator<f64> for Linear {
        fn rhs(&mut self, _t: f64, y: &f64, _dt: f64, _stage: usize) -> Result<f64> {
            Ok(self.0 * y)
        }
        fn rhs_with_derivative(&mut self, _t: f64, y: &f64, _dt: f64, _stage: usize) -> Result<(f64, f64)> {
            Ok((self.0 * y, self.0 * self.0 * y))
        }
    }

    struct Constant(f64);

    impl RhsEvaluator<f64> for Constant {
        fn rhs(&mut self, _t: f64, _y: &f64, _dt: f64, _stage: usize) -> Result<f64> {
            Ok(self.0)
        }
        fn rhs_with_derivative(&mut self, _t: f64, _y: &f64, _dt: f64, _stage: usize) -> Result<(f64, f64)> {
            Ok((self.0, 0.0))
        }
    }

    fn slope(errors: &[f64]) -> Vec<f64> {
        errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect()
    }

    /// Global error at `t = 1` for step sizes `1/n`.
    fn global_errors(scheme: TimeScheme, k: f64, ns: &[usize]) -> Vec<f64> {
        ns.iter()
            .map(|&n| {
                let dt = 1.0 / n as f64;
                let mut y = 1.0;
                for s in 0..n {
                    y = step(scheme, &y, s as f64 * dt, dt, &mut Linear(k)).unwrap();
                }
                (y - k.exp()).abs()
            })
            .collect()
    }

    #[test]
    fn constant_rhs_is_forward_euler() {
        for scheme in [TimeScheme::SspRk3, TimeScheme::S2o4] {
            let y = step(scheme, &2.0, 0.0, 0.1, &mut Constant(3.0)).unwrap();
            assert!((y - 2.3).abs() < 1e-15);
            let y = step(scheme, &2.0, 0.0, 0.1, &mut Constant(0.0)).unwrap();
            assert_eq!(y, 2.0);
        }
    }

    #[test]
    fn local_error_orders() {
        // one step of dy/dt = -y: RK3 error is O(dt^4), S2O4 O(dt^5)
        for (scheme, p) in [(TimeScheme::SspRk3, 4.0), (TimeScheme::S2o4, 5.0)] {
            let errs: Vec<f64> = [0.1, 0.05, 0.025]
                .iter()
                .map(|&dt| (step(scheme, &1.0, 0.0, dt, &mut Linear(-1.0)).unwrap() - (-dt).exp()).abs())
                .collect();
            for s in slope(&errs) {
                assert!((s - p).abs() < 0.1, "{scheme:?} {s}");
            }
        }
    }

    #[test]
    fn global_orders() {
        let ns = [10, 20, 40];
        for s in slope(&global_errors(TimeScheme::SspRk3, -1.0, &ns)) {
            assert!((s - 3.0).abs() < 0.1, "{s}");
        }
        for s in slope(&global_errors(TimeScheme::S2o4, 1.0, &ns)) {
            assert!((s - 4.0).abs() < 0.1, "{s}");
        }
    }

    #[test]
    fn s2o4_matches_taylor_through_fourth_order() {
        let dt: f64 = 0.1;
        let y = s2o4_step(&1.0, 0.0, dt, &mut Linear(1.0)).unwrap();
        let taylor = 1.0 + dt + dt * dt / 2.0 + dt.powi(3) / 6.0 + dt.powi(4) / 24.0;
        assert!((y - taylor).abs() < 1e-15);
    }

    #[test]
    fn cfl_examples() {
        let gas = GasModel::new(1.4);
        // |U| + c = 2 with c = 1
        let q = Primitive::new(1.4, 1.0, 0.0, 1.0);
        let mesh = Mesh::new_1d(100, 0.0, 1.0);
        let f = Field::uniform(mesh, q.to_conserved(&gas));
        assert!((compute_dt(&f, &gas, 0.5).unwrap() - 0.0025).abs() < 1e-15);

        let still = Field::uniform(mesh, Primitive::new(1.4, 0.0, 0.0, 1.0).to_conserved(&gas));
        assert!((compute_dt(&still, &gas, 0.5).unwrap() - 0.005).abs() < 1e-15);

        let viscous = GasModel::viscous(1.4, 1e-12);
        assert_eq!(compute_dt(&still, &viscous, 0.5).unwrap(), compute_dt(&still, &gas, 0.5).unwrap());
        let viscous = GasModel::viscous(1.4, 1.0);
        let expect = 0.5 * 0.25 * 0.01 * 0.01 * 1.4;
        assert!((compute_dt(&still, &viscous, 0.5).unwrap() - expect).abs() < 1e-15);
    }

    #[test]
    fn field_vector_ops() {
        let mesh = Mesh::new_1d(8, 0.0, 1.0);
        let mut a = Field::uniform(mesh, Conserved::new(1.0, 2.0, 0.0, 3.0));
        let b = Field::uniform(mesh, Conserved::new(1.0, 1.0, 1.0, 1.0));
        a.axpy(2.0, &b);
        a.scale(0.5);
        assert_eq!(a.get(3, 0), Conserved::new(1.5, 2.0, 1.0, 2.5));
    }
}
