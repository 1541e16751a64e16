//! Smoothness indicators and WENO-Z adaptive-order weights.

use super::SchemeConfig;

/// Indicator of a quadratic `m1 Z_1 + m2 Z_2` on `[-1, 0]`:
/// `int (P')^2 + int (P'')^2` in cell-scaled units.
#[inline]
pub fn beta_quadratic(m1: f64, m2: f64) -> f64 {
    m1 * m1 - 2.0 * m1 * m2 + (16.0 / 3.0) * m2 * m2
}

/// `(beta_-1, beta_0, beta_+1)` of the three 3-cell sub-stencils of a 5-cell
/// window `W_-2 .. W_2`.
pub fn beta_indicators(window: &[f64; 5]) -> [f64; 3] {
    let [a, b, c, d, e] = *window;
    let left = beta_quadratic(2.0 * c - 3.0 * b + a, 0.5 * (a - 2.0 * b + c));
    let center = beta_quadratic(d - c, 0.5 * (b - 2.0 * c + d));
    let right = beta_quadratic(d - c, 0.5 * (c - 2.0 * d + e));
    [left, center, right]
}

/// Cheap replacement for the 5-cell indicator built from the 3-cell ones.
#[inline]
pub fn simplified_beta5(beta3: [f64; 3]) -> f64 {
    (beta3[0] + 4.0 * beta3[1] + beta3[2]) / 6.0 + (beta3[0] - beta3[2]).abs()
}

/// Linear weights `(d5, d3_-1, d3_0, d3_+1)`.
pub fn linear_weights(cfg: &SchemeConfig) -> [f64; 4] {
    let side = (1.0 - cfg.d_hi) * (1.0 - cfg.d_lo) / 2.0;
    [cfg.d_hi, side, (1.0 - cfg.d_hi) * cfg.d_lo, side]
}

/// Normalised weights `(w5, w3_-1, w3_0, w3_+1)`.
pub fn wenoz_weights(beta5: f64, beta3: [f64; 3], cfg: &SchemeConfig) -> [f64; 4] {
    let d = linear_weights(cfg);
    let tau = ((beta5 - beta3[0]).abs() + (beta5 - beta3[1]).abs() + (beta5 - beta3[2]).abs()) / 3.0;
    let betas = [beta5, beta3[0], beta3[1], beta3[2]];
    let mut w = [0.0; 4];
    let mut sum = 0.0;
    for k in 0..4 {
        let r = tau / (betas[k] + cfg.epsilon);
        w[k] = d[k] * (1.0 + r * r);
        sum += w[k];
    }
    for wk in &mut w {
        *wk /= sum;
    }
    w
}
