//! Lax-Friedrichs interface flux.

use crate::error::Result;
use crate::state::{euler_flux, to_primitive, Conserved, GasModel};

/// Local-frame flux from left/right Gauss-point states.
pub fn lf_flux(wl: Conserved, wr: Conserved, gas: &GasModel) -> Result<Conserved> {
    let ql = to_primitive(wl, gas)?;
    let qr = to_primitive(wr, gas)?;
    let sl = ql.u.abs() + ql.sound_speed(gas);
    let sr = qr.u.abs() + qr.sound_speed(gas);
    let s = sl.max(sr);
    Ok((euler_flux(ql, gas) + euler_flux(qr, gas)) * 0.5 - (wr - wl) * (0.5 * s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::Primitive;
    use proptest::prelude::*;

    const AIR: GasModel = GasModel { gamma: 1.4, mu: 0.0, prandtl: 1.0 };

    #[test]
    fn consistency_examples() {
        let w = Primitive::new(1.0, 0.0, 0.0, 1.0).to_conserved(&AIR);
        assert_eq!(lf_flux(w, w, &AIR).unwrap(), Conserved::new(0.0, 1.0, 0.0, 0.0));
        let q = Primitive::new(1.0, 1.0, 0.3, 1.0);
        let w = q.to_conserved(&AIR);
        let f = lf_flux(w, w, &AIR).unwrap();
        assert!((f - euler_flux(q, &AIR)).max_abs() < 1e-14);
    }

    #[test]
    fn sod_mass_flux() {
        let wl = Primitive::new(1.0, 0.0, 0.0, 1.0).to_conserved(&AIR);
        let wr = Primitive::new(0.125, 0.0, 0.0, 0.1).to_conserved(&AIR);
        let f = lf_flux(wl, wr, &AIR).unwrap();
        let expect = 0.5 * 1.4f64.sqrt() * 0.875;
        assert!((f.rho - expect).abs() < 1e-14);
        assert!((f.rho - 0.5176).abs() < 1e-4);
    }

    #[test]
    fn rejects_bad_state() {
        let wl = Conserved::new(1.0, 0.0, 0.0, -1.0);
        let wr = Primitive::new(1.0, 0.0, 0.0, 1.0).to_conserved(&AIR);
        assert!(lf_flux(wl, wr, &AIR).is_err());
    }

    proptest! {
        #[test]
        fn consistent_and_mirror_symmetric(r in 0.1f64..5.0, u in -3.0f64..3.0, v in -3.0f64..3.0,
                                           p in 0.1f64..5.0, r2 in 0.1f64..5.0, p2 in 0.1f64..5.0) {
            let a = Primitive::new(r, u, v, p);
            let w = a.to_conserved(&AIR);
            let f = lf_flux(w, w, &AIR).unwrap();
            prop_assert!((f - euler_flux(a, &AIR)).max_abs() <= 1e-14 * euler_flux(a, &AIR).max_abs().max(1.0));

            // mirror: (L, R) -> (mirror R, mirror L) flips the normal direction
            let b = Primitive::new(r2, -u, v, p2);
            let wb = b.to_conserved(&AIR);
            let mirror = |q: Primitive| Primitive::new(q.rho, -q.u, q.v, q.p).to_conserved(&AIR);
            let f1 = lf_flux(w, wb, &AIR).unwrap();
            let f2 = lf_flux(mirror(b), mirror(a), &AIR).unwrap();
            prop_assert!((f1.rho + f2.rho).abs() <= 1e-12 * f1.rho.abs().max(1.0));
        }
    }
}
