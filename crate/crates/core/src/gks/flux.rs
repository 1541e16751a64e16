//! Second-order gas-kinetic interface flux.
//!
//! Everything here lives in the interface frame: `u` is the normal particle
//! velocity and `v` the tangential one.

use serde::{Deserialize, Serialize};

use super::moments::{Half, MomentTable};
use super::slope::{micro_slope, MicroSlope};
use crate::error::Result;
use crate::state::{to_primitive, Conserved, GasModel};

/// Collision-time constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GksParams {
    pub c1: f64,
    pub c2: f64,
}

impl Default for GksParams {
    fn default() -> Self {
        GksParams { c1: 0.05, c2: 1.0 }
    }
}

/// Reconstructed data at one Gauss point, already rotated into the local frame.
/// Slopes are physical derivatives of the conservative variables.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GaussPointInput {
    pub wl: Conserved,
    pub wr: Conserved,
    pub normal_l: Conserved,
    pub normal_r: Conserved,
    pub tangential_l: Conserved,
    pub tangential_r: Conserved,
}

/// `(tau, tau_n)`.
///
/// Inviscid: `tau = tau_n = C1 dt + C2 |pl-pr|/(pl+pr) dt`.
/// Viscous: `tau = mu / p_eq`, `tau_n = tau + C2 |pl-pr|/(pl+pr) dt`.
pub fn collision_time(pl: f64, pr: f64, p_eq: f64, gas: &GasModel, dt: f64, params: &GksParams) -> (f64, f64) {
    let jump = ((pl - pr) / (pl + pr)).abs() * dt;
    if gas.mu > 0.0 {
        let tau = gas.mu / p_eq;
        (tau, tau + params.c2 * jump)
    } else {
        let tau_n = params.c1 * dt + params.c2 * jump;
        (tau_n, tau_n)
    }
}

/// Kinetic blend of the two sides into the interface equilibrium:
/// `(W^c, W^c_n, W^c_t)`.
pub fn equilibrium_merge(
    l: &MomentTable,
    r: &MomentTable,
    al: (&MicroSlope, &MicroSlope),
    ar: (&MicroSlope, &MicroSlope),
) -> (Conserved, Conserved, Conserved) {
    let w = arr(l.psi(Half::Positive, 0, 0)) * l.rho + arr(r.psi(Half::Negative, 0, 0)) * r.rho;
    let wn =
        arr(l.a_psi(Half::Positive, &al.0 .0, 0, 0)) * l.rho + arr(r.a_psi(Half::Negative, &ar.0 .0, 0, 0)) * r.rho;
    let wt =
        arr(l.a_psi(Half::Positive, &al.1 .0, 0, 0)) * l.rho + arr(r.a_psi(Half::Negative, &ar.1 .0, 0, 0)) * r.rho;
    (w, wn, wt)
}

#[inline]
fn arr(a: [f64; 4]) -> Conserved {
    Conserved::from_array(a)
}

#[inline]
fn normalized(w: Conserved, rho: f64) -> [f64; 4] {
    (w * (1.0 / rho)).to_array()
}

/// Time coefficient from the compatibility condition `<A + a_n u + a_t v> = 0`.
fn time_slope(t: &MomentTable, an: &MicroSlope, at: &MicroSlope) -> MicroSlope {
    let sn = t.a_psi(Half::Full, &an.0, 1, 0);
    let st = t.a_psi(Half::Full, &at.0, 0, 1);
    let b = [-(sn[0] + st[0]), -(sn[1] + st[1]), -(sn[2] + st[2]), -(sn[3] + st[3])];
    micro_slope(&b, t)
}

/// Compatibility residual `<(A + a_n u + a_t v) psi>` (normalised moments).
pub fn compatibility_residual(t: &MomentTable, an: &MicroSlope, at: &MicroSlope, a: &MicroSlope) -> [f64; 4] {
    let sn = t.a_psi(Half::Full, &an.0, 1, 0);
    let st = t.a_psi(Half::Full, &at.0, 0, 1);
    let sa = t.a_psi(Half::Full, &a.0, 0, 0);
    [sn[0] + st[0] + sa[0], sn[1] + st[1] + sa[1], sn[2] + st[2] + sa[2], sn[3] + st[3] + sa[3]]
}

/// Fully assembled interface: Maxwellians, slopes and collision times.
#[derive(Debug, Clone, PartialEq)]
pub struct GksInterfaceState {
    pub l: MomentTable,
    pub r: MomentTable,
    pub c: MomentTable,
    pub al_n: MicroSlope,
    pub al_t: MicroSlope,
    pub ar_n: MicroSlope,
    pub ar_t: MicroSlope,
    pub ac_n: MicroSlope,
    pub ac_t: MicroSlope,
    pub time_l: MicroSlope,
    pub time_r: MicroSlope,
    pub time_c: MicroSlope,
    pub tau: f64,
    pub tau_n: f64,
}

impl GksInterfaceState {
    pub fn assemble(input: &GaussPointInput, gas: &GasModel, dt: f64, params: &GksParams) -> Result<Self> {
        let k = gas.internal_dof();
        let ql = to_primitive(input.wl, gas)?;
        let qr = to_primitive(input.wr, gas)?;
        let l = MomentTable::new(&ql, k)?;
        let r = MomentTable::new(&qr, k)?;
        let al_n = micro_slope(&normalized(input.normal_l, ql.rho), &l);
        let al_t = micro_slope(&normalized(input.tangential_l, ql.rho), &l);
        let ar_n = micro_slope(&normalized(input.normal_r, qr.rho), &r);
        let ar_t = micro_slope(&normalized(input.tangential_r, qr.rho), &r);

        let (wc, wc_n, wc_t) = equilibrium_merge(&l, &r, (&al_n, &al_t), (&ar_n, &ar_t));
        let qc = to_primitive(wc, gas)?;
        let c = MomentTable::new(&qc, k)?;
        let ac_n = micro_slope(&normalized(wc_n, qc.rho), &c);
        let ac_t = micro_slope(&normalized(wc_t, qc.rho), &c);

        let time_l = time_slope(&l, &al_n, &al_t);
        let time_r = time_slope(&r, &ar_n, &ar_t);
        let time_c = time_slope(&c, &ac_n, &ac_t);
        let (tau, tau_n) = collision_time(ql.p, qr.p, qc.p, gas, dt, params);
        Ok(GksInterfaceState { l, r, c, al_n, al_t, ar_n, ar_t, ac_n, ac_t, time_l, time_r, time_c, tau, tau_n })
    }

    /// Moment vectors of each term of the distribution function; the time
    /// dependence is carried separately by [`TimeWeights`].
    pub fn flux_terms(&self) -> FluxTerms {
        let side = |t: &MomentTable, half: Half, an: &MicroSlope, at: &MicroSlope, a: &MicroSlope| {
            let base = arr(t.psi(half, 1, 0)) * t.rho;
            let space = (arr(t.a_psi(half, &an.0, 2, 0)) + arr(t.a_psi(half, &at.0, 1, 1))) * t.rho;
            let time = arr(t.a_psi(half, &a.0, 1, 0)) * t.rho;
            (base, space, time)
        };
        let (eq, eq_space, eq_time) = side(&self.c, Half::Full, &self.ac_n, &self.ac_t, &self.time_c);
        let (l0, l1, l2) = side(&self.l, Half::Positive, &self.al_n, &self.al_t, &self.time_l);
        let (r0, r1, r2) = side(&self.r, Half::Negative, &self.ar_n, &self.ar_t, &self.time_r);
        FluxTerms {
            eq,
            eq_space,
            eq_time,
            free: l0 + r0,
            free_space: l1 + r1,
            free_time: l2 + r2,
            tau: self.tau,
            tau_n: self.tau_n,
        }
    }
}

/// Moment vectors of the equilibrium and free-transport parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxTerms {
    pub eq: Conserved,
    pub eq_space: Conserved,
    pub eq_time: Conserved,
    pub free: Conserved,
    pub free_space: Conserved,
    pub free_time: Conserved,
    pub tau: f64,
    pub tau_n: f64,
}

/// Exact integrals over `[0, delta]` of the time functions multiplying each term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeWeights {
    /// `int (1 - e^{-t/tau_n})`
    pub eq: f64,
    /// `int ((t + tau) e^{-t/tau_n} - tau)`
    pub eq_space: f64,
    /// `int (t - tau + tau e^{-t/tau_n})`
    pub eq_time: f64,
    /// `int e^{-t/tau_n}`
    pub free: f64,
    /// `int (t + tau) e^{-t/tau_n}`
    pub free_space: f64,
}

impl TimeWeights {
    pub fn new(delta: f64, tau: f64, tau_n: f64) -> Self {
        let (e0, e1) = if tau_n > 0.0 {
            let e = (-delta / tau_n).exp();
            // int e^{-t/tau_n}, int t e^{-t/tau_n}
            (tau_n * (1.0 - e), tau_n * tau_n * (1.0 - e) - tau_n * delta * e)
        } else {
            (0.0, 0.0)
        };
        TimeWeights {
            eq: delta - e0,
            eq_space: e1 + tau * e0 - tau * delta,
            eq_time: 0.5 * delta * delta - tau * delta + tau * e0,
            free: e0,
            free_space: e1 + tau * e0,
        }
    }
}

impl FluxTerms {
    /// Time-integrated flux over `[0, delta]`.
    pub fn integrate(&self, delta: f64) -> Conserved {
        let w = TimeWeights::new(delta, self.tau, self.tau_n);
        self.eq * w.eq + self.eq_space * w.eq_space + self.eq_time * w.eq_time + self.free * w.free
            - self.free_space * w.free_space
            - self.free_time * (self.tau * w.free)
    }
}

pub fn gks_time_integrated_flux(iface: &GksInterfaceState, delta: f64) -> Conserved {
    iface.flux_terms().integrate(delta)
}

/// `(F, dF/dt)` of the linear-in-time flux matching the integrals over
/// `dt/2` and `dt`.
pub fn flux_and_derivative(iface: &GksInterfaceState, dt: f64) -> (Conserved, Conserved) {
    let terms = iface.flux_terms();
    linear_flux_from_integrals(terms.integrate(dt), terms.integrate(0.5 * dt), dt)
}

#[inline]
pub fn linear_flux_from_integrals(full: Conserved, half: Conserved, dt: f64) -> (Conserved, Conserved) {
    let f = (half * 4.0 - full) * (1.0 / dt);
    let df = (full - half * 2.0) * (4.0 / (dt * dt));
    (f, df)
}

/// Assembles and evaluates one Gauss point.
pub fn gks_flux(
    input: &GaussPointInput,
    gas: &GasModel,
    dt: f64,
    params: &GksParams,
) -> Result<(Conserved, Conserved)> {
    let iface = GksInterfaceState::assemble(input, gas, dt, params)?;
    Ok(flux_and_derivative(&iface, dt))
}
