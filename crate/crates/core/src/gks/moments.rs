//! Normalised moments `<...> = (1/rho) int (...) g dXi` of a 2-D Maxwellian
//! with `K` internal degrees of freedom, including the half-space `u` moments
//! needed by the Heaviside split.

use crate::error::{Result, SolverError};
use crate::state::Primitive;

/// Highest velocity power tabulated.
pub const N_MAX: usize = 6;

/// Which part of the normal-velocity axis a `u` moment integrates over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Half {
    Full,
    Positive,
    Negative,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable {
    pub rho: f64,
    pub u: f64,
    pub v: f64,
    pub lambda: f64,
    pub k: f64,
    /// `<u^n>` over the whole axis.
    pub u_full: [f64; N_MAX + 1],
    /// `<u^n>_{>0}`.
    pub u_pos: [f64; N_MAX + 1],
    /// `<u^n>_{<0}`.
    pub u_neg: [f64; N_MAX + 1],
    pub v_full: [f64; N_MAX + 1],
    /// `<xi^0>, <xi^2>, <xi^4>`.
    pub xi: [f64; 3],
}

impl MomentTable {
    pub fn new(q: &Primitive, k: f64) -> Result<Self> {
        let lambda = q.lambda();
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(SolverError::NonPositiveLambda(lambda));
        }
        Ok(Self::from_parts(q.rho, q.u, q.v, lambda, k))
    }

    pub fn from_parts(rho: f64, u: f64, v: f64, lambda: f64, k: f64) -> Self {
        let inv = 1.0 / (2.0 * lambda);
        let mut u_full = [0.0; N_MAX + 1];
        let mut v_full = [0.0; N_MAX + 1];
        let mut u_pos = [0.0; N_MAX + 1];
        let mut u_neg = [0.0; N_MAX + 1];

        let sl = lambda.sqrt();
        let gauss = 0.5 * (-lambda * u * u).exp() / (std::f64::consts::PI * lambda).sqrt();
        u_full[0] = 1.0;
        u_full[1] = u;
        v_full[0] = 1.0;
        v_full[1] = v;
        u_pos[0] = 0.5 * libm::erfc(-sl * u);
        u_pos[1] = u * u_pos[0] + gauss;
        u_neg[0] = 0.5 * libm::erfc(sl * u);
        u_neg[1] = u * u_neg[0] - gauss;
        for n in 0..N_MAX - 1 {
            let c = (n + 1) as f64 * inv;
            u_full[n + 2] = u * u_full[n + 1] + c * u_full[n];
            v_full[n + 2] = v * v_full[n + 1] + c * v_full[n];
            u_pos[n + 2] = u * u_pos[n + 1] + c * u_pos[n];
            u_neg[n + 2] = u * u_neg[n + 1] + c * u_neg[n];
        }
        let xi2 = k * inv;
        let xi4 = (k + 2.0) * inv * xi2;
        MomentTable { rho, u, v, lambda, k, u_full, u_pos, u_neg, v_full, xi: [1.0, xi2, xi4] }
    }

    #[inline]
    pub fn u_moments(&self, half: Half) -> &[f64; N_MAX + 1] {
        match half {
            Half::Full => &self.u_full,
            Half::Positive => &self.u_pos,
            Half::Negative => &self.u_neg,
        }
    }

    /// `<u^n v^m xi^(2l)>` with the `u` integral restricted by `half`.
    #[inline]
    pub fn uvxi(&self, half: Half, n: usize, m: usize, l: usize) -> f64 {
        self.u_moments(half)[n] * self.v_full[m] * self.xi[l]
    }

    /// `<u^n v^m psi>`, `psi = (1, u, v, (u^2+v^2+xi^2)/2)`.
    #[inline]
    pub fn psi(&self, half: Half, n: usize, m: usize) -> [f64; 4] {
        let um = self.u_moments(half);
        let vm = &self.v_full;
        [
            um[n] * vm[m],
            um[n + 1] * vm[m],
            um[n] * vm[m + 1],
            0.5 * (um[n + 2] * vm[m] + um[n] * vm[m + 2] + um[n] * vm[m] * self.xi[1]),
        ]
    }

    /// `<u^n v^m xi^2 psi>`.
    #[inline]
    fn psi_xi2(&self, half: Half, n: usize, m: usize) -> [f64; 4] {
        let um = self.u_moments(half);
        let vm = &self.v_full;
        let x2 = self.xi[1];
        [
            um[n] * vm[m] * x2,
            um[n + 1] * vm[m] * x2,
            um[n] * vm[m + 1] * x2,
            0.5 * (um[n + 2] * vm[m] * x2 + um[n] * vm[m + 2] * x2 + um[n] * vm[m] * self.xi[2]),
        ]
    }

    /// `<a u^n v^m psi>` for `a = a1 + a2 u + a3 v + a4 (u^2+v^2+xi^2)/2`.
    pub fn a_psi(&self, half: Half, a: &[f64; 4], n: usize, m: usize) -> [f64; 4] {
        let t1 = self.psi(half, n, m);
        let t2 = self.psi(half, n + 1, m);
        let t3 = self.psi(half, n, m + 1);
        let t4a = self.psi(half, n + 2, m);
        let t4b = self.psi(half, n, m + 2);
        let t4c = self.psi_xi2(half, n, m);
        let mut out = [0.0; 4];
        for i in 0..4 {
            out[i] = a[0] * t1[i] + a[1] * t2[i] + a[2] * t3[i] + 0.5 * a[3] * (t4a[i] + t4b[i] + t4c[i]);
        }
        out
    }
}

/// Convenience constructor matching the table's documented inputs.
pub fn moments(q: &Primitive, k: f64) -> Result<MomentTable> {
    MomentTable::new(q, k)
}
