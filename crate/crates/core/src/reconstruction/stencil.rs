//! Linear map from a stencil's cell averages to zero-mean modal coefficients.
//!
//! Rows are indexed by window position; `window[k]` is the average of the cell
//! at offset `first_offset() + k` relative to the reconstruction cell.

use crate::error::{Result, SolverError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StencilLevel {
    /// Cells -2..=0.
    R3Minus,
    /// Cells -1..=1.
    R3Center,
    /// Cells 0..=2.
    R3Plus,
    R5,
    R7,
    R9,
}

impl StencilLevel {
    pub const fn len(self) -> usize {
        match self {
            StencilLevel::R3Minus | StencilLevel::R3Center | StencilLevel::R3Plus => 3,
            StencilLevel::R5 => 5,
            StencilLevel::R7 => 7,
            StencilLevel::R9 => 9,
        }
    }

    pub const fn first_offset(self) -> isize {
        match self {
            StencilLevel::R3Minus => -2,
            StencilLevel::R3Center => -1,
            StencilLevel::R3Plus => 0,
            StencilLevel::R5 => -2,
            StencilLevel::R7 => -3,
            StencilLevel::R9 => -4,
        }
    }

    /// Polynomial degree = number of modal coefficients.
    pub const fn degree(self) -> usize {
        self.len() - 1
    }

    /// Centred stencil of the given odd size.
    pub fn centered(size: usize) -> Option<Self> {
        match size {
            3 => Some(StencilLevel::R3Center),
            5 => Some(StencilLevel::R5),
            7 => Some(StencilLevel::R7),
            9 => Some(StencilLevel::R9),
            _ => None,
        }
    }

    pub fn rows(self) -> &'static [&'static [f64]] {
        match self {
            StencilLevel::R3Minus => &R3_MINUS,
            StencilLevel::R3Center => &R3_CENTER,
            StencilLevel::R3Plus => &R3_PLUS,
            StencilLevel::R5 => &R5,
            StencilLevel::R7 => &R7,
            StencilLevel::R9 => &R9,
        }
    }
}

const R3_MINUS: [&[f64]; 2] = [&[1.0, -3.0, 2.0], &[0.5, -1.0, 0.5]];
const R3_CENTER: [&[f64]; 2] = [&[0.0, -1.0, 1.0], &[0.5, -1.0, 0.5]];
const R3_PLUS: [&[f64]; 2] = [&[-1.0, 1.0, 0.0], &[0.5, -1.0, 0.5]];

const R5: [&[f64]; 4] = [
    &[0.0, 1.0 / 12.0, -15.0 / 12.0, 15.0 / 12.0, -1.0 / 12.0],
    &[-1.0 / 8.0, 6.0 / 8.0, -8.0 / 8.0, 2.0 / 8.0, 1.0 / 8.0],
    &[0.0, -1.0 / 6.0, 3.0 / 6.0, -3.0 / 6.0, 1.0 / 6.0],
    &[1.0 / 24.0, -4.0 / 24.0, 6.0 / 24.0, -4.0 / 24.0, 1.0 / 24.0],
];

const R7: [&[f64]; 6] = [
    &[0.0, -2.0 / 180.0, 25.0 / 180.0, -245.0 / 180.0, 245.0 / 180.0, -25.0 / 180.0, 2.0 / 180.0],
    &[7.0 / 240.0, -57.0 / 240.0, 210.0 / 240.0, -230.0 / 240.0, 15.0 / 240.0, 63.0 / 240.0, -8.0 / 240.0],
    &[0.0, 1.0 / 36.0, -11.0 / 36.0, 28.0 / 36.0, -28.0 / 36.0, 11.0 / 36.0, -1.0 / 36.0],
    &[-2.0 / 144.0, 15.0 / 144.0, -39.0 / 144.0, 46.0 / 144.0, -24.0 / 144.0, 3.0 / 144.0, 1.0 / 144.0],
    &[0.0, -1.0 / 120.0, 5.0 / 120.0, -10.0 / 120.0, 10.0 / 120.0, -5.0 / 120.0, 1.0 / 120.0],
    &[1.0 / 720.0, -6.0 / 720.0, 15.0 / 720.0, -20.0 / 720.0, 15.0 / 720.0, -6.0 / 720.0, 1.0 / 720.0],
];

const R9: [&[f64]; 8] = [
    &[
        0.0,
        9.0 / 5040.0,
        -119.0 / 5040.0,
        889.0 / 5040.0,
        -7175.0 / 5040.0,
        7175.0 / 5040.0,
        -889.0 / 5040.0,
        119.0 / 5040.0,
        -9.0 / 5040.0,
    ],
    &[
        -205.0 / 30240.0,
        2081.0 / 30240.0,
        -9835.0 / 30240.0,
        28679.0 / 30240.0,
        -27895.0 / 30240.0,
        -2065.0 / 30240.0,
        11459.0 / 30240.0,
        -2455.0 / 30240.0,
        236.0 / 30240.0,
    ],
    &[
        0.0,
        -7.0 / 1440.0,
        89.0 / 1440.0,
        -587.0 / 1440.0,
        1365.0 / 1440.0,
        -1365.0 / 1440.0,
        587.0 / 1440.0,
        -89.0 / 1440.0,
        7.0 / 1440.0,
    ],
    &[
        13.0 / 3456.0,
        -128.0 / 3456.0,
        556.0 / 3456.0,
        -1160.0 / 3456.0,
        1174.0 / 3456.0,
        -464.0 / 3456.0,
        -68.0 / 3456.0,
        88.0 / 3456.0,
        -11.0 / 3456.0,
    ],
    &[
        0.0,
        1.0 / 480.0,
        -11.0 / 480.0,
        41.0 / 480.0,
        -75.0 / 480.0,
        75.0 / 480.0,
        -41.0 / 480.0,
        11.0 / 480.0,
        -1.0 / 480.0,
    ],
    &[
        -5.0 / 8640.0,
        46.0 / 8640.0,
        -170.0 / 8640.0,
        334.0 / 8640.0,
        -380.0 / 8640.0,
        250.0 / 8640.0,
        -86.0 / 8640.0,
        10.0 / 8640.0,
        1.0 / 8640.0,
    ],
    &[
        0.0,
        -1.0 / 5040.0,
        7.0 / 5040.0,
        -21.0 / 5040.0,
        35.0 / 5040.0,
        -35.0 / 5040.0,
        21.0 / 5040.0,
        -7.0 / 5040.0,
        1.0 / 5040.0,
    ],
    &[
        1.0 / 40320.0,
        -8.0 / 40320.0,
        28.0 / 40320.0,
        -56.0 / 40320.0,
        70.0 / 40320.0,
        -56.0 / 40320.0,
        28.0 / 40320.0,
        -8.0 / 40320.0,
        1.0 / 40320.0,
    ],
];

/// Modal coefficients `W_x1 .. W_x(len-1)` of `level` from its window.
pub fn modal_coefficients(level: StencilLevel, window: &[f64]) -> Result<Vec<f64>> {
    if window.len() != level.len() {
        return Err(SolverError::WindowSizeMismatch { expected: level.len(), got: window.len() });
    }
    let mut out = [0.0; 8];
    modal_into(level, window, &mut out);
    Ok(out[..level.degree()].to_vec())
}

/// Unchecked kernel: writes `level.degree()` coefficients into `out`.
#[inline]
pub(crate) fn modal_into(level: StencilLevel, window: &[f64], out: &mut [f64]) {
    debug_assert_eq!(window.len(), level.len());
    // rows annihilate constants, so differencing against one entry is exact
    // algebra and keeps uniform data exactly flat
    let base = window[window.len() / 2];
    for (o, row) in out.iter_mut().zip(level.rows()) {
        *o = row.iter().zip(window).map(|(c, w)| c * (w - base)).sum();
    }
}
