//! Adaptive stencil extension driven by discontinuity feedback.
//!
//! Starting from the 5-cell stencil, the order only climbs while the next
//! wider stencil is free of flagged interfaces. A flagged 5-cell stencil falls
//! back to the DF-damped WENO-Z adaptive-order (5,3) combination.

use super::basis::{Polynomial, MAX_DEGREE};
use super::df::{df_alpha, stencil_strength};
use super::smoothness::{beta_quadratic, linear_weights, simplified_beta5, wenoz_weights};
use super::stencil::{modal_into, StencilLevel};
use super::SchemeConfig;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LadderChoice {
    /// DF-damped nonlinear (5,3) combination. `alpha3` is ordered
    /// `(-1, 0, +1)`.
    Weno { alpha5: f64, alpha3: [f64; 3] },
    /// Linear reconstruction on a centred stencil.
    Linear(StencilLevel),
}

impl LadderChoice {
    /// Whether DF damped any candidate polynomial.
    pub fn is_df_limited(&self) -> bool {
        matches!(self, LadderChoice::Weno { .. })
    }
}

/// Picks the stencil from the interface strengths around the cell.
///
/// `sigmas[k]` is the strength of the face between cell offsets `k - 4` and
/// `k - 3`; only the faces inside stencils up to `max_order` are read.
pub fn ladder_choice(sigmas: &[f64; 8], cfg: &SchemeConfig) -> LadderChoice {
    let t = cfg.sigma_thres;
    let a5 = df_alpha(stencil_strength(sigmas, -2, 2), t);
    if a5 < 1.0 {
        return LadderChoice::Weno {
            alpha5: a5,
            alpha3: [
                df_alpha(stencil_strength(sigmas, -2, 0), t),
                df_alpha(stencil_strength(sigmas, -1, 1), t),
                df_alpha(stencil_strength(sigmas, 0, 2), t),
            ],
        };
    }
    let mut level = StencilLevel::R5;
    for (order, candidate) in [(7, StencilLevel::R7), (9, StencilLevel::R9)] {
        if order > cfg.max_order {
            break;
        }
        let half = (order as isize - 1) / 2;
        if df_alpha(stencil_strength(sigmas, -half, half), t) < 1.0 {
            break;
        }
        level = candidate;
    }
    LadderChoice::Linear(level)
}

/// Builds the reconstructed polynomial of one component from its 9-cell
/// window (offsets -4..=4).
pub fn build_polynomial(choice: LadderChoice, window: &[f64; 9], cfg: &SchemeConfig) -> Polynomial {
    let w0 = window[4];
    let mut p = Polynomial::constant(w0);
    match choice {
        LadderChoice::Linear(level) => {
            let h = (level.len() - 1) / 2;
            modal_into(level, &window[4 - h..=4 + h], &mut p.modal);
        }
        LadderChoice::Weno { alpha5, alpha3 } => {
            let mut m5 = [0.0; 4];
            modal_into(StencilLevel::R5, &window[2..7], &mut m5);
            let [a, b, c, d, e] = [window[2], window[3], window[4], window[5], window[6]];
            let m3 = [
                [2.0 * c - 3.0 * b + a, 0.5 * (a - 2.0 * b + c)],
                [d - c, 0.5 * (b - 2.0 * c + d)],
                [d - c, 0.5 * (c - 2.0 * d + e)],
            ];
            let beta3 = [
                beta_quadratic(m3[0][0], m3[0][1]),
                beta_quadratic(m3[1][0], m3[1][1]),
                beta_quadratic(m3[2][0], m3[2][1]),
            ];
            let w = wenoz_weights(simplified_beta5(beta3), beta3, cfg);
            let d = linear_weights(cfg);
            let scale5 = w[0] / d[0];
            for n in 0..4 {
                p.modal[n] = scale5 * alpha5 * m5[n];
            }
            for k in 0..3 {
                let coef = alpha3[k] * (w[k + 1] - scale5 * d[k + 1]);
                p.modal[0] += coef * m3[k][0];
                p.modal[1] += coef * m3[k][1];
            }
        }
    }
    debug_assert!(p.modal.len() == MAX_DEGREE);
    p
}

/// Stencil choice plus the polynomial for one component.
pub fn ase_ladder(window: &[f64; 9], sigmas: &[f64; 8], cfg: &SchemeConfig) -> (LadderChoice, Polynomial) {
    let choice = ladder_choice(sigmas, cfg);
    (choice, build_polynomial(choice, window, cfg))
}
