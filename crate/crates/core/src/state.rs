//! Conservative/primitive state algebra for the 2-D Euler equations.
//!
//! One-dimensional runs use the same types with `rho_v == 0`.

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Result, SolverError};

/// Cell-average (or point) vector `(rho, rho*U, rho*V, rho*E)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Conserved {
    pub rho: f64,
    pub rho_u: f64,
    pub rho_v: f64,
    pub rho_e: f64,
}

impl Conserved {
    pub const ZERO: Conserved = Conserved::new(0.0, 0.0, 0.0, 0.0);

    pub const fn new(rho: f64, rho_u: f64, rho_v: f64, rho_e: f64) -> Self {
        Conserved { rho, rho_u, rho_v, rho_e }
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Conserved::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.rho, self.rho_u, self.rho_v, self.rho_e]
    }

    pub fn max_abs(self) -> f64 {
        self.rho.abs().max(self.rho_u.abs()).max(self.rho_v.abs()).max(self.rho_e.abs())
    }
}

impl Index<usize> for Conserved {
    type Output = f64;
    fn index(&self, k: usize) -> &f64 {
        match k {
            0 => &self.rho,
            1 => &self.rho_u,
            2 => &self.rho_v,
            3 => &self.rho_e,
            _ => panic!("component index {k} out of range"),
        }
    }
}

impl IndexMut<usize> for Conserved {
    fn index_mut(&mut self, k: usize) -> &mut f64 {
        match k {
            0 => &mut self.rho,
            1 => &mut self.rho_u,
            2 => &mut self.rho_v,
            3 => &mut self.rho_e,
            _ => panic!("component index {k} out of range"),
        }
    }
}

impl Add for Conserved {
    type Output = Conserved;
    fn add(self, o: Conserved) -> Conserved {
        Conserved::new(self.rho + o.rho, self.rho_u + o.rho_u, self.rho_v + o.rho_v, self.rho_e + o.rho_e)
    }
}

impl Sub for Conserved {
    type Output = Conserved;
    fn sub(self, o: Conserved) -> Conserved {
        Conserved::new(self.rho - o.rho, self.rho_u - o.rho_u, self.rho_v - o.rho_v, self.rho_e - o.rho_e)
    }
}

impl Mul<f64> for Conserved {
    type Output = Conserved;
    fn mul(self, s: f64) -> Conserved {
        Conserved::new(self.rho * s, self.rho_u * s, self.rho_v * s, self.rho_e * s)
    }
}

impl Mul<Conserved> for f64 {
    type Output = Conserved;
    fn mul(self, w: Conserved) -> Conserved {
        w * self
    }
}

impl Neg for Conserved {
    type Output = Conserved;
    fn neg(self) -> Conserved {
        self * -1.0
    }
}

impl AddAssign for Conserved {
    fn add_assign(&mut self, o: Conserved) {
        *self = *self + o;
    }
}

impl SubAssign for Conserved {
    fn sub_assign(&mut self, o: Conserved) {
        *self = *self - o;
    }
}

/// Ideal-gas closure plus the kinetic parameters the gas-kinetic flux needs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GasModel {
    pub gamma: f64,
    /// Dynamic viscosity; zero for inviscid runs.
    pub mu: f64,
    /// Fixed at 1 (BGK relaxation).
    pub prandtl: f64,
}

impl GasModel {
    pub fn new(gamma: f64) -> Self {
        GasModel { gamma, mu: 0.0, prandtl: 1.0 }
    }

    pub fn viscous(gamma: f64, mu: f64) -> Self {
        GasModel { gamma, mu, prandtl: 1.0 }
    }

    /// Internal degrees of freedom for 2-D flows.
    pub fn internal_dof(&self) -> f64 {
        (4.0 - 2.0 * self.gamma) / (self.gamma - 1.0)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > 1.0 && self.gamma <= 5.0 / 3.0 + 1e-12) {
            return Err(SolverError::Config(format!("gamma {} outside (1, 5/3]", self.gamma)));
        }
        if self.mu < 0.0 {
            return Err(SolverError::Config(format!("negative viscosity {}", self.mu)));
        }
        Ok(())
    }

    pub fn to_primitive(&self, w: Conserved) -> Result<Primitive> {
        to_primitive(w, self)
    }

    pub fn to_conserved(&self, q: Primitive) -> Conserved {
        q.to_conserved(self)
    }

    pub fn pressure(&self, w: Conserved) -> f64 {
        (self.gamma - 1.0) * (w.rho_e - 0.5 * (w.rho_u * w.rho_u + w.rho_v * w.rho_v) / w.rho)
    }
}

/// `(rho, U, V, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Primitive {
    pub rho: f64,
    pub u: f64,
    pub v: f64,
    pub p: f64,
}

impl Primitive {
    pub const fn new(rho: f64, u: f64, v: f64, p: f64) -> Self {
        Primitive { rho, u, v, p }
    }

    /// `rho / (2 p)`, the Maxwellian inverse-temperature parameter.
    pub fn lambda(&self) -> f64 {
        self.rho / (2.0 * self.p)
    }

    pub fn sound_speed(&self, gas: &GasModel) -> f64 {
        (gas.gamma * self.p / self.rho).sqrt()
    }

    pub fn mach_normal(&self, gas: &GasModel) -> f64 {
        self.u / self.sound_speed(gas)
    }

    pub fn mach_tangential(&self, gas: &GasModel) -> f64 {
        self.v / self.sound_speed(gas)
    }

    pub fn to_conserved(&self, gas: &GasModel) -> Conserved {
        let rho_e = self.p / (gas.gamma - 1.0) + 0.5 * self.rho * (self.u * self.u + self.v * self.v);
        Conserved::new(self.rho, self.rho * self.u, self.rho * self.v, rho_e)
    }
}

pub fn to_primitive(w: Conserved, gas: &GasModel) -> Result<Primitive> {
    if !(w.rho > 0.0) {
        return Err(SolverError::NonPositiveDensity(w.rho));
    }
    let u = w.rho_u / w.rho;
    let v = w.rho_v / w.rho;
    let p = (gas.gamma - 1.0) * (w.rho_e - 0.5 * w.rho * (u * u + v * v));
    if !(p > 0.0) {
        return Err(SolverError::NonPositivePressure(p));
    }
    Ok(Primitive { rho: w.rho, u, v, p })
}

/// Orientation of an interface normal, stored as `(cos theta, sin theta)` so that
/// axis-aligned frames rotate without round-off.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub cos: f64,
    pub sin: f64,
}

impl Frame {
    pub const X: Frame = Frame { cos: 1.0, sin: 0.0 };
    pub const Y: Frame = Frame { cos: 0.0, sin: 1.0 };

    pub fn from_angle(theta: f64) -> Self {
        Frame { cos: theta.cos(), sin: theta.sin() }
    }

    /// `T w`: momentum expressed in (normal, tangential) components.
    #[inline]
    pub fn to_local(&self, w: Conserved) -> Conserved {
        Conserved::new(
            w.rho,
            self.cos * w.rho_u + self.sin * w.rho_v,
            -self.sin * w.rho_u + self.cos * w.rho_v,
            w.rho_e,
        )
    }

    /// `T^-1 w`.
    #[inline]
    pub fn to_global(&self, w: Conserved) -> Conserved {
        Conserved::new(w.rho, self.cos * w.rho_u - self.sin * w.rho_v, self.sin * w.rho_u + self.cos * w.rho_v, w.rho_e)
    }
}

pub fn rotate_to_local(w: Conserved, theta: f64) -> Conserved {
    Frame::from_angle(theta).to_local(w)
}

pub fn rotate_from_local(w: Conserved, theta: f64) -> Conserved {
    Frame::from_angle(theta).to_global(w)
}

/// x-direction Euler flux of a primitive state.
pub fn euler_flux(q: Primitive, gas: &GasModel) -> Conserved {
    let rho_e = q.p / (gas.gamma - 1.0) + 0.5 * q.rho * (q.u * q.u + q.v * q.v);
    let mass = q.rho * q.u;
    Conserved::new(mass, mass * q.u + q.p, mass * q.v, q.u * (rho_e + q.p))
}
