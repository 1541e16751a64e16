//! Error norms, convergence orders and flow probes.

use crate::grid::{cell_average, Field};
use crate::quadrature::GaussRule;
use crate::state::{Conserved, GasModel, Primitive};

/// Mesh-averaged absolute density error against cell averages of `exact`.
pub fn l1_density_error(field: &Field, gas: &GasModel, points: usize, exact: impl Fn(f64, f64) -> Primitive) -> f64 {
    let rule = GaussRule::unit(points);
    let mesh = &field.mesh;
    let mut sum = 0.0;
    for (i, j, w) in field.interior() {
        let e = cell_average(mesh, &rule, i, j, |x, y| exact(x, y).to_conserved(gas));
        sum += (w.rho - e.rho).abs();
    }
    sum / (mesh.nx * mesh.ny) as f64
}

/// `log2(e_N / e_2N)` for successive pairs; `None` when either error is zero
/// or not finite.
pub fn convergence_orders(errors: &[f64]) -> Vec<Option<f64>> {
    errors
        .windows(2)
        .map(|w| {
            let ok = w.iter().all(|e| e.is_finite() && *e > 0.0);
            ok.then(|| (w[0] / w[1]).log2())
        })
        .collect()
}

/// Largest relative change of total mass and total energy. Momentum is left
/// out: walls exchange it with the flow through pressure and shear.
pub fn relative_drift(before: Conserved, after: Conserved) -> f64 {
    let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(f64::MIN_POSITIVE);
    rel(before.rho, after.rho).max(rel(before.rho_e, after.rho_e))
}

/// Bounds of the primary-vortex search in the viscous shock tube.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VortexWindow {
    pub x: (f64, f64),
    pub y_max: f64,
}

impl Default for VortexWindow {
    fn default() -> Self {
        VortexWindow { x: (0.5, 1.0), y_max: 0.3 }
    }
}

/// Height of the primary vortex.
///
/// The vortex is taken as the region inside the outermost closed density
/// contour around the lowest density in the window, where closed means the
/// region bounded by the contour stays off the window's left, right and top
/// edges. The level is found by bisection. The height is the top of that
/// region, interpolated linearly between cell centres. `None` when no closed
/// contour exists.
pub fn vortex_height(field: &Field, window: VortexWindow) -> Option<f64> {
    let mesh = &field.mesh;
    let cols: Vec<isize> =
        (0..mesh.nx as isize).filter(|&i| (window.x.0..=window.x.1).contains(&mesh.cell_center(i, 0).0)).collect();
    let rows = (0..mesh.ny as isize).take_while(|&j| mesh.cell_center(0, j).1 < window.y_max).count();
    if cols.is_empty() || rows == 0 {
        return None;
    }
    let (ni, nj) = (cols.len(), rows);
    let rho: Vec<f64> =
        (0..nj).flat_map(|j| cols.iter().map(move |&i| (i, j))).map(|(i, j)| field.get(i, j as isize).rho).collect();
    let seed = (0..rho.len()).min_by(|&a, &b| rho[a].total_cmp(&rho[b]))?;
    let region = |level: f64| -> Option<Vec<bool>> {
        let mut inside = vec![false; rho.len()];
        let mut stack = vec![seed];
        inside[seed] = true;
        while let Some(k) = stack.pop() {
            let (i, j) = (k % ni, k / ni);
            if i == 0 || i + 1 == ni || j + 1 == nj {
                return None;
            }
            for n in [k - 1, k + 1, k + ni].into_iter().chain((j > 0).then(|| k - ni)) {
                if !inside[n] && rho[n] < level {
                    inside[n] = true;
                    stack.push(n);
                }
            }
        }
        Some(inside)
    };
    let (mut lo, mut hi) = (rho[seed], rho.iter().copied().fold(f64::MIN, f64::max) + 1.0);
    region(lo)?;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if region(mid).is_some() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let inside = region(lo)?;
    let (_, y0) = mesh.cell_center(0, 0);
    (0..rho.len())
        .filter(|&k| inside[k] && !inside[k + ni])
        .map(|k| {
            let (below, above) = (rho[k], rho[k + ni]);
            let t = if above > below { ((lo - below) / (above - below)).clamp(0.0, 1.0) } else { 0.0 };
            y0 + ((k / ni) as f64 + t) * mesh.dy
        })
        .reduce(f64::max)
}

/// Density along the lowest row, as `(x, rho)`.
pub fn wall_density(field: &Field) -> Vec<(f64, f64)> {
    (0..field.mesh.nx as isize).map(|i| (field.mesh.cell_center(i, 0).0, field.get(i, 0).rho)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Mesh;

    const AIR: GasModel = GasModel { gamma: 1.4, mu: 0.0, prandtl: 1.0 };

    #[test]
    fn orders_and_not_applicable() {
        let o = convergence_orders(&[1.0, 0.25, 0.0625]);
        assert_eq!(o, vec![Some(2.0), Some(2.0)]);
        assert_eq!(convergence_orders(&[0.0, 0.0]), vec![None]);
        assert_eq!(convergence_orders(&[1.0, f64::NAN]), vec![None]);
    }

    #[test]
    fn exact_field_has_zero_error() {
        let mesh = Mesh::new_2d(8, 8, (0.0, 1.0), (0.0, 1.0));
        let f = |x: f64, y: f64| Primitive::new(1.0 + 0.1 * (x * y), 0.5, 0.0, 1.0);
        let field = Field::from_primitive_fn(mesh, &AIR, 4, f);
        assert!(l1_density_error(&field, &AIR, 4, f) < 1e-15);
        let shifted = |x: f64, y: f64| Primitive::new(f(x, y).rho + 0.01, 0.5, 0.0, 1.0);
        assert!((l1_density_error(&field, &AIR, 4, shifted) - 0.01).abs() < 1e-12);
    }

    #[test]
    fn drift_is_relative() {
        let a = Conserved::new(2.0, 0.0, 0.0, 4.0);
        let b = Conserved::new(2.0, 1e-3, 0.0, 4.0 + 1e-9);
        assert!((relative_drift(a, b) - 0.25e-9).abs() < 1e-15);
    }

    fn dip_field(centre: (f64, f64), radius: f64) -> Field {
        let mesh = Mesh::new_2d(100, 50, (0.0, 1.0), (0.0, 0.5));
        Field::from_primitive_fn(mesh, &AIR, 2, move |x, y| {
            let r2 = ((x - centre.0).powi(2) + (y - centre.1).powi(2)) / (radius * radius);
            Primitive::new(1.0 - 0.5 * (1.0 - r2).max(0.0), 0.0, 0.0, 1.0)
        })
    }

    #[test]
    fn vortex_height_is_top_of_closed_density_dip() {
        for (cy, radius) in [(0.08, 0.08), (0.0, 0.15), (0.12, 0.05)] {
            let f = dip_field((0.8, cy), radius);
            let h = vortex_height(&f, VortexWindow::default()).unwrap();
            assert!((h - (cy + radius)).abs() < f.mesh.dy, "{cy} {radius}: {h}");
        }
    }

    #[test]
    fn no_vortex_without_a_closed_dip() {
        let still = dip_field((0.8, 0.1), 0.0);
        assert_eq!(vortex_height(&still, VortexWindow::default()), None);
        // outside the window
        assert_eq!(vortex_height(&dip_field((0.2, 0.1), 0.08), VortexWindow::default()), None);
        // open through the top of the window
        assert_eq!(vortex_height(&dip_field((0.8, 0.3), 0.1), VortexWindow::default()), None);
    }
}
