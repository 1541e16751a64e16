//! Uniform structured mesh, cell-average storage with a ghost ring, and
//! boundary fills.

use std::fmt;
use std::sync::Arc;

use crate::error::{Result, SolverError};
use crate::quadrature::GaussRule;
use crate::state::{Conserved, GasModel, Primitive};

/// Ghost-layer width. The 9-cell stencil centred on the first ghost cell
/// reaches five cells beyond the boundary.
pub const GHOST: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dim {
    One,
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mesh {
    pub nx: usize,
    pub ny: usize,
    pub dx: f64,
    pub dy: f64,
    pub x0: f64,
    pub y0: f64,
    pub gx: usize,
    pub gy: usize,
}

impl Mesh {
    pub fn new_1d(nx: usize, x0: f64, x1: f64) -> Self {
        assert!(nx > 0 && x1 > x0);
        Mesh { nx, ny: 1, dx: (x1 - x0) / nx as f64, dy: 1.0, x0, y0: 0.0, gx: GHOST, gy: 0 }
    }

    pub fn new_2d(nx: usize, ny: usize, (x0, x1): (f64, f64), (y0, y1): (f64, f64)) -> Self {
        assert!(nx > 0 && ny > 0 && x1 > x0 && y1 > y0);
        Mesh { nx, ny, dx: (x1 - x0) / nx as f64, dy: (y1 - y0) / ny as f64, x0, y0, gx: GHOST, gy: GHOST }
    }

    pub fn dim(&self) -> Dim {
        if self.gy == 0 {
            Dim::One
        } else {
            Dim::Two
        }
    }

    /// Padded row length.
    pub fn px(&self) -> usize {
        self.nx + 2 * self.gx
    }

    pub fn py(&self) -> usize {
        self.ny + 2 * self.gy
    }

    pub fn len(&self) -> usize {
        self.px() * self.py()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Storage index of cell `(i, j)`; ghosts have negative or `>= n` indices.
    #[inline]
    pub fn idx(&self, i: isize, j: isize) -> usize {
        debug_assert!(i >= -(self.gx as isize) && i < (self.nx + self.gx) as isize);
        debug_assert!(j >= -(self.gy as isize) && j < (self.ny + self.gy) as isize);
        ((j + self.gy as isize) as usize) * self.px() + (i + self.gx as isize) as usize
    }

    pub fn cell_center(&self, i: isize, j: isize) -> (f64, f64) {
        let x = self.x0 + (i as f64 + 0.5) * self.dx;
        let y = match self.dim() {
            Dim::One => 0.0,
            Dim::Two => self.y0 + (j as f64 + 0.5) * self.dy,
        };
        (x, y)
    }

    pub fn cell_area(&self) -> f64 {
        self.dx * self.dy
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    pub mesh: Mesh,
    pub cells: Vec<Conserved>,
    pub time: f64,
}

impl Field {
    pub fn uniform(mesh: Mesh, w: Conserved) -> Self {
        Field { mesh, cells: vec![w; mesh.len()], time: 0.0 }
    }

    /// Cell averages of a pointwise primitive profile, integrated with an
    /// `n`-point Gauss rule per direction.
    pub fn from_primitive_fn(mesh: Mesh, gas: &GasModel, points: usize, f: impl Fn(f64, f64) -> Primitive) -> Self {
        let rule = GaussRule::unit(points);
        let mut field = Field::uniform(mesh, Conserved::ZERO);
        for j in 0..mesh.ny as isize {
            for i in 0..mesh.nx as isize {
                let w = cell_average(&mesh, &rule, i, j, |x, y| f(x, y).to_conserved(gas));
                field.set(i, j, w);
            }
        }
        field
    }

    #[inline]
    pub fn get(&self, i: isize, j: isize) -> Conserved {
        self.cells[self.mesh.idx(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: isize, j: isize, w: Conserved) {
        let k = self.mesh.idx(i, j);
        self.cells[k] = w;
    }

    pub fn interior(&self) -> impl Iterator<Item = (isize, isize, Conserved)> + '_ {
        let (nx, ny) = (self.mesh.nx as isize, self.mesh.ny as isize);
        (0..ny).flat_map(move |j| (0..nx).map(move |i| (i, j, self.get(i, j))))
    }

    pub fn conserved_total(&self) -> Conserved {
        conserved_total(self)
    }
}

/// Average of a conservative-valued point function over cell `(i, j)`.
pub fn cell_average(mesh: &Mesh, rule: &GaussRule, i: isize, j: isize, f: impl Fn(f64, f64) -> Conserved) -> Conserved {
    let xa = mesh.x0 + i as f64 * mesh.dx;
    let mut acc = Conserved::ZERO;
    match mesh.dim() {
        Dim::One => {
            for (t, w) in rule.nodes.iter().zip(&rule.weights) {
                acc += f(xa + t * mesh.dx, 0.0) * *w;
            }
        }
        Dim::Two => {
            let ya = mesh.y0 + j as f64 * mesh.dy;
            for (ty, wy) in rule.nodes.iter().zip(&rule.weights) {
                for (tx, wx) in rule.nodes.iter().zip(&rule.weights) {
                    acc += f(xa + tx * mesh.dx, ya + ty * mesh.dy) * (wx * wy);
                }
            }
        }
    }
    acc
}

/// Sum over interior cells of `W |Omega|`.
pub fn conserved_total(field: &Field) -> Conserved {
    let area = field.mesh.cell_area();
    let mut acc = Conserved::ZERO;
    for (_, _, w) in field.interior() {
        acc += w;
    }
    acc * area
}

/// Pointwise state imposed on ghost cells; `None` defers to the fallback rule.
pub type ProfileFn = dyn Fn(f64, f64, f64) -> Option<Conserved> + Send + Sync;

#[derive(Clone)]
pub enum Boundary {
    Periodic,
    /// Mirror with the normal momentum negated (slip wall).
    Reflective,
    /// Zero-gradient copy of the nearest interior cell.
    Outflow,
    /// Mirror with both momentum components negated.
    NoSlipAdiabaticWall,
    SymmetryWall,
    Profile {
        profile: Arc<ProfileFn>,
        otherwise: Box<Boundary>,
    },
}

impl Boundary {
    pub fn profile(
        f: impl Fn(f64, f64, f64) -> Option<Conserved> + Send + Sync + 'static,
        otherwise: Boundary,
    ) -> Self {
        Boundary::Profile { profile: Arc::new(f), otherwise: Box::new(otherwise) }
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self, Boundary::Periodic)
    }
}

impl fmt::Debug for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Boundary::Periodic => write!(f, "Periodic"),
            Boundary::Reflective => write!(f, "Reflective"),
            Boundary::Outflow => write!(f, "Outflow"),
            Boundary::NoSlipAdiabaticWall => write!(f, "NoSlipAdiabaticWall"),
            Boundary::SymmetryWall => write!(f, "SymmetryWall"),
            Boundary::Profile { otherwise, .. } => write!(f, "Profile(otherwise {otherwise:?})"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BoundarySpec {
    pub x_lo: Boundary,
    pub x_hi: Boundary,
    pub y_lo: Boundary,
    pub y_hi: Boundary,
}

impl BoundarySpec {
    pub fn all(b: Boundary) -> Self {
        BoundarySpec { x_lo: b.clone(), x_hi: b.clone(), y_lo: b.clone(), y_hi: b }
    }

    pub fn validate(&self) -> Result<()> {
        if self.x_lo.is_periodic() != self.x_hi.is_periodic() || self.y_lo.is_periodic() != self.y_hi.is_periodic() {
            return Err(SolverError::UnpairedPeriodic);
        }
        for b in [&self.x_lo, &self.x_hi, &self.y_lo, &self.y_hi] {
            if let Boundary::Profile { otherwise, .. } = b {
                if otherwise.is_periodic() || matches!(**otherwise, Boundary::Profile { .. }) {
                    return Err(SolverError::Config("profile boundary fallback must be a local rule".into()));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Axis {
    X,
    Y,
}

/// Populates every ghost cell at time `t`. x-sides are filled on interior rows
/// first; y-sides then run over all padded columns, which fills the corners.
pub fn fill_ghosts(field: &mut Field, spec: &BoundarySpec, t: f64) -> Result<()> {
    spec.validate()?;
    let mesh = field.mesh;
    if mesh.nx < mesh.gx || (mesh.dim() == Dim::Two && mesh.ny < mesh.gy) {
        return Err(SolverError::Config(format!("mesh {}x{} smaller than ghost width {}", mesh.nx, mesh.ny, mesh.gx)));
    }
    for j in 0..mesh.ny as isize {
        fill_side(field, &spec.x_lo, Axis::X, false, j, t);
        fill_side(field, &spec.x_hi, Axis::X, true, j, t);
    }
    if mesh.dim() == Dim::Two {
        for i in -(mesh.gx as isize)..(mesh.nx + mesh.gx) as isize {
            fill_side(field, &spec.y_lo, Axis::Y, false, i, t);
            fill_side(field, &spec.y_hi, Axis::Y, true, i, t);
        }
    }
    Ok(())
}

fn fill_side(field: &mut Field, b: &Boundary, axis: Axis, high: bool, line: isize, t: f64) {
    let mesh = field.mesh;
    let (n, g) = match axis {
        Axis::X => (mesh.nx as isize, mesh.gx as isize),
        Axis::Y => (mesh.ny as isize, mesh.gy as isize),
    };
    let at = |k: isize| match axis {
        Axis::X => (k, line),
        Axis::Y => (line, k),
    };
    for layer in 0..g {
        let ghost = if high { n + layer } else { -1 - layer };
        let mirror = if high { n - 1 - layer } else { layer };
        let (gi, gj) = at(ghost);
        let w = ghost_value(field, b, axis, high, layer, n, &at, gi, gj, mirror, t);
        field.set(gi, gj, w);
    }
}

#[allow(clippy::too_many_arguments)]
fn ghost_value(
    field: &Field,
    b: &Boundary,
    axis: Axis,
    high: bool,
    layer: isize,
    n: isize,
    at: &dyn Fn(isize) -> (isize, isize),
    gi: isize,
    gj: isize,
    mirror: isize,
    t: f64,
) -> Conserved {
    let mirrored = || {
        let (mi, mj) = at(mirror);
        field.get(mi, mj)
    };
    match b {
        Boundary::Periodic => {
            let src = if high { layer } else { n - 1 - layer };
            let (si, sj) = at(src);
            field.get(si, sj)
        }
        Boundary::Reflective | Boundary::SymmetryWall => {
            let mut w = mirrored();
            match axis {
                Axis::X => w.rho_u = -w.rho_u,
                Axis::Y => w.rho_v = -w.rho_v,
            }
            w
        }
        Boundary::NoSlipAdiabaticWall => {
            let mut w = mirrored();
            w.rho_u = -w.rho_u;
            w.rho_v = -w.rho_v;
            w
        }
        Boundary::Outflow => {
            let (si, sj) = at(if high { n - 1 } else { 0 });
            field.get(si, sj)
        }
        Boundary::Profile { profile, otherwise } => {
            let (x, y) = field.mesh.cell_center(gi, gj);
            match profile(x, y, t) {
                Some(w) => w,
                None => ghost_value(field, otherwise, axis, high, layer, n, at, gi, gj, mirror, t),
            }
        }
    }
}
