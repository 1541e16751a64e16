//! Discontinuity feedback: interface strength and per-stencil damping factor.

use crate::state::{GasModel, Primitive};

/// Discontinuity strength between the left and right states of one Gauss
/// point, in the interface frame (`u` normal, `v` tangential).
#[inline]
pub fn sigma_point(left: &Primitive, right: &Primitive, gas: &GasModel) -> f64 {
    let dp = (left.p - right.p).abs();
    let cl = (gas.gamma * left.p / left.rho).sqrt();
    let cr = (gas.gamma * right.p / right.rho).sqrt();
    let dmn = left.u / cl - right.u / cr;
    let dmt = left.v / cl - right.v / cr;
    dp / left.p + dp / right.p + dmn * dmn + dmt * dmt
}

/// DF factor of a stencil whose interior interfaces sum to `a`.
#[inline]
pub fn df_alpha(a: f64, sigma_thres: f64) -> f64 {
    if a < sigma_thres {
        1.0
    } else {
        sigma_thres / a
    }
}

/// Index range into an 8-entry interface window (`sigmas[k]` sits between
/// cell offsets `k - 4` and `k - 3`) of the faces strictly inside the stencil
/// spanning cell offsets `first ..= last`.
#[inline]
pub fn interior_faces(first: isize, last: isize) -> std::ops::RangeInclusive<usize> {
    ((first + 4) as usize)..=((last + 3) as usize)
}

/// Accumulated strength over the faces strictly inside a stencil.
#[inline]
pub fn stencil_strength(sigmas: &[f64; 8], first: isize, last: isize) -> f64 {
    sigmas[interior_faces(first, last)].iter().sum()
}
