//! Zero-mean polynomial basis on the reconstruction cell.
//!
//! Local coordinate `xi = x / dx` with the cell occupying `[-1, 0]` and the
//! right interface at `xi = 0`. `Z_n(xi) = xi^n + c_n` where `c_n` makes the
//! cell average of `Z_n` vanish: `c_n = -(-1)^n / (n + 1)`.

/// Highest basis degree supported (9-cell stencil).
pub const MAX_DEGREE: usize = 8;

/// `c_1 .. c_8` at indices `1..=8`; index 0 unused.
pub const ZERO_MEAN_CONSTANTS: [f64; MAX_DEGREE + 1] =
    [0.0, 1.0 / 2.0, -1.0 / 3.0, 1.0 / 4.0, -1.0 / 5.0, 1.0 / 6.0, -1.0 / 7.0, 1.0 / 8.0, -1.0 / 9.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZeroMeanBasis {
    pub order: usize,
}

impl ZeroMeanBasis {
    pub fn new(order: usize) -> Self {
        assert!(order <= MAX_DEGREE);
        ZeroMeanBasis { order }
    }

    pub fn constant(n: usize) -> f64 {
        ZERO_MEAN_CONSTANTS[n]
    }

    /// `Z_n(xi)`; `Z_0 = 1`.
    pub fn value(n: usize, xi: f64) -> f64 {
        if n == 0 {
            1.0
        } else {
            xi.powi(n as i32) + ZERO_MEAN_CONSTANTS[n]
        }
    }

    /// `dZ_n / dxi`.
    pub fn derivative(n: usize, xi: f64) -> f64 {
        if n == 0 {
            0.0
        } else {
            n as f64 * xi.powi(n as i32 - 1)
        }
    }
}

/// Reconstructed polynomial `P(xi) = w0 + sum_n modal[n-1] Z_n(xi)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Polynomial {
    pub w0: f64,
    pub modal: [f64; MAX_DEGREE],
}

impl Polynomial {
    pub fn constant(w0: f64) -> Self {
        Polynomial { w0, modal: [0.0; MAX_DEGREE] }
    }

    /// Value at `xi`.
    #[inline]
    pub fn value(&self, xi: f64) -> f64 {
        let mut acc = self.w0;
        let mut pow = 1.0;
        for n in 1..=MAX_DEGREE {
            pow *= xi;
            acc += self.modal[n - 1] * (pow + ZERO_MEAN_CONSTANTS[n]);
        }
        acc
    }

    /// `dP/dxi` at `xi`; divide by `dx` for the physical slope.
    #[inline]
    pub fn derivative(&self, xi: f64) -> f64 {
        let mut acc = 0.0;
        let mut pow = 1.0;
        for n in 1..=MAX_DEGREE {
            acc += n as f64 * self.modal[n - 1] * pow;
            pow *= xi;
        }
        acc
    }

    /// Value and derivative at `xi` in one pass.
    #[inline]
    pub fn eval(&self, xi: f64) -> (f64, f64) {
        let mut v = self.w0;
        let mut d = 0.0;
        let mut pow = 1.0;
        for n in 1..=MAX_DEGREE {
            let m = self.modal[n - 1];
            d += n as f64 * m * pow;
            pow *= xi;
            v += m * (pow + ZERO_MEAN_CONSTANTS[n]);
        }
        (v, d)
    }
}

/// `(value, dP/dxi)` of `w0 + sum modal_n Z_n` at `xi`.
pub fn evaluate_polynomial(w0: f64, modal: &[f64], xi: f64) -> (f64, f64) {
    assert!(modal.len() <= MAX_DEGREE);
    let mut p = Polynomial::constant(w0);
    p.modal[..modal.len()].copy_from_slice(modal);
    p.eval(xi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::GaussRule;

    #[test]
    fn zero_cell_mean() {
        let g = GaussRule::unit(8);
        for n in 1..=MAX_DEGREE {
            let avg = g.average(-1.0, 0.0, |x| ZeroMeanBasis::value(n, x));
            assert!(avg.abs() < 1e-14, "n={n} avg={avg}");
        }
        assert_eq!(ZeroMeanBasis::value(0, 0.3), 1.0);
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(evaluate_polynomial(2.5, &[0.0; 4], -0.3), (2.5, 0.0));
        // f(x) = x, average -1/2 on [-1,0]
        let (v, d) = evaluate_polynomial(-0.5, &[1.0, 0.0, 0.0, 0.0], 0.0);
        assert!(v.abs() < 1e-15);
        assert!((d - 1.0).abs() < 1e-15);
        // f(x) = x^2, average 1/3
        let (v, d) = evaluate_polynomial(1.0 / 3.0, &[0.0, 1.0, 0.0, 0.0], 0.0);
        assert!(v.abs() < 1e-15);
        assert!(d.abs() < 1e-15);
    }

    #[test]
    fn mean_is_w0() {
        let g = GaussRule::unit(6);
        let p = Polynomial { w0: 1.7, modal: [0.3, -1.2, 0.8, 2.0, -0.4, 0.1, 0.05, -0.02] };
        let avg = g.average(-1.0, 0.0, |x| p.value(x));
        assert!((avg - 1.7).abs() < 1e-14);
        let (v, d) = p.eval(-0.37);
        assert!((v - p.value(-0.37)).abs() < 1e-15);
        assert!((d - p.derivative(-0.37)).abs() < 1e-15);
    }
}
