//! Microscopic slopes: solve `<psi psi> a = b` in closed form.

use super::moments::MomentTable;

/// Coefficients of `a = a1 + a2 u + a3 v + a4 (u^2+v^2+xi^2)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MicroSlope(pub [f64; 4]);

/// Solves `M a = b` where `M = <psi_i psi_j>` of the Maxwellian in `table`
/// and `b = (1/rho) dW`.
pub fn micro_slope(b: &[f64; 4], table: &MomentTable) -> MicroSlope {
    let (u, v, lambda, k) = (table.u, table.v, table.lambda, table.k);
    let e = u * u + v * v + (k + 2.0) / (2.0 * lambda);
    let r4 = 2.0 * b[3] - e * b[0];
    let r3 = b[2] - v * b[0];
    let r2 = b[1] - u * b[0];
    let a4 = 4.0 * lambda * lambda / (k + 2.0) * (r4 - 2.0 * u * r2 - 2.0 * v * r3);
    let a3 = 2.0 * lambda * r3 - v * a4;
    let a2 = 2.0 * lambda * r2 - u * a4;
    let a1 = b[0] - u * a2 - v * a3 - 0.5 * a4 * e;
    MicroSlope([a1, a2, a3, a4])
}

/// The moment matrix `<psi_i psi_j>` in the closed form with `B_1..B_4`.
pub fn moment_matrix(table: &MomentTable) -> [[f64; 4]; 4] {
    let (u, v, lambda, k) = (table.u, table.v, table.lambda, table.k);
    let q = u * u + v * v;
    let b1 = 0.5 * (q + (k + 2.0) / (2.0 * lambda));
    let b2 = 0.5 * (u * u * u + v * v * u + (k + 4.0) * u / (2.0 * lambda));
    let b3 = 0.5 * (v * v * v + u * u * v + (k + 4.0) * v / (2.0 * lambda));
    let b4 = 0.25 * (q * q + (k + 4.0) * q / lambda + (k * k + 6.0 * k + 8.0) / (4.0 * lambda * lambda));
    let h = 1.0 / (2.0 * lambda);
    [[1.0, u, v, b1], [u, u * u + h, u * v, b2], [v, u * v, v * v + h, b3], [b1, b2, b3, b4]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gks::moments::Half;
    use proptest::prelude::*;

    fn matvec(m: &[[f64; 4]; 4], a: &[f64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for i in 0..4 {
            out[i] = (0..4).map(|j| m[i][j] * a[j]).sum();
        }
        out
    }

    #[test]
    fn zero_and_density_gradient() {
        let t = MomentTable::from_parts(1.0, 0.4, -0.7, 1.3, 3.0);
        assert_eq!(micro_slope(&[0.0; 4], &t).0, [0.0; 4]);
        let m = moment_matrix(&t);
        let b = [m[0][0] * 2.0, m[1][0] * 2.0, m[2][0] * 2.0, m[3][0] * 2.0];
        let a = micro_slope(&b, &t).0;
        for (x, y) in a.iter().zip([2.0, 0.0, 0.0, 0.0]) {
            assert!((x - y).abs() < 1e-13, "{a:?}");
        }
    }

    proptest! {
        #[test]
        fn printed_matrix_roundtrip(u in -3.0f64..3.0, v in -3.0f64..3.0, lambda in 0.2f64..5.0,
                                    b in proptest::array::uniform4(-2.0f64..2.0)) {
            let t = MomentTable::from_parts(1.0, u, v, lambda, 3.0);
            let a = micro_slope(&b, &t);
            let back = matvec(&moment_matrix(&t), &a.0);
            let scale = b.iter().map(|x| x.abs()).fold(1.0, f64::max) * (1.0 + u * u + v * v + 1.0 / lambda).powi(2);
            for i in 0..4 {
                prop_assert!((back[i] - b[i]).abs() <= 1e-12 * scale, "{:?} vs {:?}", back, b);
            }
            // the tabulated moments reproduce the same matrix-vector product
            let via_moments = t.a_psi(Half::Full, &a.0, 0, 0);
            for i in 0..4 {
                prop_assert!((via_moments[i] - b[i]).abs() <= 1e-12 * scale);
            }
        }
    }
}
