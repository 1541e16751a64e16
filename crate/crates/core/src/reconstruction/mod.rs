//! ASE-DF reconstruction: zero-mean modal polynomials on centred stencils,
//! discontinuity feedback, and the adaptive stencil-extension ladder.

pub mod basis;
pub mod df;
pub mod ladder;
pub mod smoothness;
pub mod stencil;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SolverError};

pub use basis::{evaluate_polynomial, Polynomial, ZeroMeanBasis};
pub use df::{df_alpha, sigma_point};
pub use ladder::{ase_ladder, build_polynomial, ladder_choice, LadderChoice};
pub use smoothness::{beta_indicators, simplified_beta5, wenoz_weights};
pub use stencil::{modal_coefficients, StencilLevel};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SchemeConfig {
    /// 5, 7 or 9.
    pub max_order: usize,
    pub sigma_thres: f64,
    pub d_hi: f64,
    pub d_lo: f64,
    pub epsilon: f64,
}

impl Default for SchemeConfig {
    fn default() -> Self {
        SchemeConfig { max_order: 5, sigma_thres: 2.0, d_hi: 0.85, d_lo: 0.85, epsilon: 1e-6 }
    }
}

impl SchemeConfig {
    pub fn with_order(max_order: usize) -> Self {
        SchemeConfig { max_order, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !matches!(self.max_order, 5 | 7 | 9) {
            return Err(SolverError::Config(format!("max_order must be 5, 7 or 9, got {}", self.max_order)));
        }
        if !(self.sigma_thres > 0.0) {
            return Err(SolverError::Config("sigma_thres must be positive".into()));
        }
        if !(0.0..1.0).contains(&self.d_hi) || !(0.0..1.0).contains(&self.d_lo) || !(self.epsilon > 0.0) {
            return Err(SolverError::Config("linear weights must lie in [0, 1) and epsilon be positive".into()));
        }
        Ok(())
    }

    /// Half-width of the widest stencil in use.
    pub fn half_width(&self) -> usize {
        (self.max_order - 1) / 2
    }

    /// Interface Gauss points per face in 2-D.
    pub fn gauss_points(&self) -> usize {
        self.half_width()
    }
}
