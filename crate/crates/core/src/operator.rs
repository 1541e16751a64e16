//! Semi-discrete finite-volume operator: ASE-DF reconstruction on each axis,
//! tangential reconstruction to the interface Gauss points, interface fluxes
//! and the divergence.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SolverError};
use crate::flux_lf::lf_flux;
use crate::gks::{gks_flux, GaussPointInput, GksParams};
use crate::grid::{Boundary, BoundarySpec, Dim, Field, Mesh};
use crate::quadrature::GaussRule;
use crate::reconstruction::df::sigma_point;
use crate::reconstruction::{build_polynomial, ladder_choice, LadderChoice, SchemeConfig};
use crate::state::{to_primitive, Conserved, Frame, GasModel, Primitive};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FluxKind {
    Lf,
    Gks,
}

impl std::fmt::Display for FluxKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FluxKind::Lf => "lf",
            FluxKind::Gks => "gks",
        })
    }
}

impl std::str::FromStr for FluxKind {
    type Err = SolverError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lf" => Ok(FluxKind::Lf),
            "gks" => Ok(FluxKind::Gks),
            other => Err(SolverError::Config(format!("unknown flux '{other}', expected lf or gks"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scheme {
    pub gas: GasModel,
    pub recon: SchemeConfig,
    pub flux: FluxKind,
    pub gks: GksParams,
}

/// Per-direction interface strengths in padded cell layout: `x[idx(i, j)]`
/// belongs to the face between `(i-1, j)` and `(i, j)`, `y[idx(i, j)]` to the
/// face between `(i, j-1)` and `(i, j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaTable {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl SigmaTable {
    fn new(mesh: &Mesh) -> Self {
        SigmaTable { x: vec![0.0; mesh.len()], y: vec![0.0; mesh.len()] }
    }
}

/// DF activity of the most recent pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PassStats {
    /// Interior (cell, direction) reconstructions that took the DF-damped branch.
    pub df_limited: usize,
    pub reconstructions: usize,
    /// Interface Gauss-point states that came out non-physical and were
    /// replaced by the adjacent cell average.
    pub first_order_fallbacks: usize,
}

/// Mirror taken across a solid boundary face.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Wall {
    /// Normal momentum reverses.
    Slip,
    /// Both momentum components reverse.
    NoSlip,
}

impl Wall {
    fn of(b: &Boundary) -> Option<Wall> {
        match b {
            Boundary::Reflective | Boundary::SymmetryWall => Some(Wall::Slip),
            Boundary::NoSlipAdiabaticWall => Some(Wall::NoSlip),
            _ => None,
        }
    }

    /// Mirror image of a global-frame state across a face normal to `ax`.
    #[inline]
    fn mirror(self, w: Conserved, ax: &Axis) -> Conserved {
        let mut m = w;
        let (normal, tangential) = if ax.swap { (&mut m.rho_v, &mut m.rho_u) } else { (&mut m.rho_u, &mut m.rho_v) };
        *normal = -*normal;
        if self == Wall::NoSlip {
            *tangential = -*tangential;
        }
        m
    }

    /// Mirror of a Gauss point: the normal slope also changes sign.
    #[inline]
    fn mirror_point(self, p: &[Conserved; 3], ax: &Axis) -> [Conserved; 3] {
        [self.mirror(p[0], ax), self.mirror(p[1], ax) * -1.0, self.mirror(p[2], ax)]
    }
}

/// How a ghost index maps back into the interior.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Image {
    Shift,
    Mirror,
}

/// Interior image of index `k` along an axis of `n` cells; `face` selects face
/// numbering (face `k` sits between cells `k - 1` and `k`).
fn image_index(k: isize, n: isize, face: bool, lo: Option<Image>, hi: Option<Image>) -> Option<isize> {
    let top = if face { n } else { n - 1 };
    let f = face as isize;
    if k < 0 {
        match lo? {
            Image::Shift => Some(k + n),
            Image::Mirror => Some(-k - 1 + f),
        }
    } else if k > top {
        match hi? {
            Image::Shift => Some(k - n),
            Image::Mirror => Some(2 * n - k - 1 + f),
        }
    } else {
        Some(k)
    }
}

#[derive(Clone, Copy)]
struct Axis {
    /// Normal axis is y: `(a, b)` maps to `(i, j) = (b, a)`.
    swap: bool,
    n: usize,
    nt: usize,
    dn: f64,
    dt: f64,
    frame: Frame,
    tang_sign: f64,
}

impl Axis {
    #[inline]
    fn cell(&self, a: isize, b: isize) -> (isize, isize) {
        if self.swap {
            (b, a)
        } else {
            (a, b)
        }
    }
}

/// Reconstructed data along interface lines of one axis.
struct Lines {
    nf: usize,
    h: isize,
    wl: Vec<Conserved>,
    wr: Vec<Conserved>,
    dl: Vec<Conserved>,
    dr: Vec<Conserved>,
}

impl Lines {
    #[inline]
    fn at(&self, b: isize, f: usize) -> usize {
        (b + self.h) as usize * self.nf + f
    }
}

/// Result of one operator evaluation, in padded field layout (ghosts zero).
#[derive(Debug, Clone)]
pub struct Rhs {
    pub l: Vec<Conserved>,
    pub dl: Option<Vec<Conserved>>,
}

pub struct SpatialOperator {
    pub scheme: Scheme,
    mesh: Mesh,
    sigma: SigmaTable,
    next: SigmaTable,
    primed: bool,
    rule: GaussRule,
    stats: PassStats,
    /// Solid walls as `[x_lo, x_hi, y_lo, y_hi]`.
    walls: [Option<Wall>; 4],
    /// Sides whose ghost cells are images of interior cells, in the same order.
    images: [Option<Image>; 4],
    /// `(step, stage)` reported in errors.
    pub context: (usize, usize),
}

impl SpatialOperator {
    pub fn new(mesh: Mesh, scheme: Scheme) -> Result<Self> {
        scheme.recon.validate()?;
        scheme.gas.validate()?;
        let points = match mesh.dim() {
            Dim::One => 1,
            Dim::Two => scheme.recon.gauss_points(),
        };
        Ok(SpatialOperator {
            scheme,
            mesh,
            sigma: SigmaTable::new(&mesh),
            next: SigmaTable::new(&mesh),
            primed: false,
            rule: GaussRule::unit(points),
            stats: PassStats::default(),
            walls: [None; 4],
            images: [None; 4],
            context: (0, 0),
        })
    }

    /// Wall faces take the outer state as the mirror image of the inner one at
    /// each Gauss point, so no mass or energy crosses them whatever the ghost
    /// reconstruction does.
    pub fn set_walls(&mut self, bc: &BoundarySpec) {
        let sides = [&bc.x_lo, &bc.x_hi, &bc.y_lo, &bc.y_hi];
        self.walls = sides.map(Wall::of);
        self.images = sides.map(|b| match b {
            Boundary::Periodic => Some(Image::Shift),
            b if Wall::of(b).is_some() => Some(Image::Mirror),
            _ => None,
        });
    }

    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    pub fn sigmas(&self) -> &SigmaTable {
        &self.sigma
    }

    pub fn last_stats(&self) -> PassStats {
        self.stats
    }

    /// Forget the feedback history; the next pass bootstraps from cell averages.
    pub fn reset_sigmas(&mut self) {
        self.primed = false;
    }

    fn invalid(&self, i: isize, j: isize, reason: impl Into<String>) -> SolverError {
        SolverError::StateInvalid { step: self.context.0, stage: self.context.1, i, j, reason: reason.into() }
    }

    fn primitive(&self, w: Conserved, i: isize, j: isize, what: &str) -> Result<Primitive> {
        to_primitive(w, &self.scheme.gas).map_err(|e| self.invalid(i, j, format!("{what}: {e}")))
    }

    /// Local-frame value and primitive state of one side of a Gauss point. A
    /// non-physical reconstruction drops to first order: the value becomes
    /// the average of cell `(i, j)` and both slopes vanish.
    fn physical_point(
        &mut self,
        field: &Field,
        point: &mut [Conserved; 3],
        frame: Frame,
        i: isize,
        j: isize,
    ) -> Result<(Conserved, Primitive)> {
        let w = frame.to_local(point[0]);
        if let Ok(q) = to_primitive(w, &self.scheme.gas) {
            return Ok((w, q));
        }
        self.stats.first_order_fallbacks += 1;
        *point = [field.get(i, j), Conserved::ZERO, Conserved::ZERO];
        let w = frame.to_local(point[0]);
        Ok((w, self.primitive(w, i, j, "cell average")?))
    }

    /// Feedback history, for rolling back a rejected step.
    pub fn feedback(&self) -> (SigmaTable, bool) {
        (self.sigma.clone(), self.primed)
    }

    pub fn restore_feedback(&mut self, (sigma, primed): (SigmaTable, bool)) {
        self.sigma = sigma;
        self.primed = primed;
    }

    /// Strengths from the piecewise-constant data. Faces fed back from the
    /// previous pass keep the larger of the two, so a jump that formed since
    /// then is seen without a pass of delay.
    fn bootstrap_sigmas(&mut self, field: &Field) -> Result<()> {
        let m = self.mesh;
        let (gx, gy) = (m.gx as isize, m.gy as isize);
        let (nx, ny) = (m.nx as isize, m.ny as isize);
        let gas = self.scheme.gas;
        let mut axes = vec![(false, Frame::X)];
        if m.dim() == Dim::Two {
            axes.push((true, Frame::Y));
        }
        for (is_y, frame) in axes {
            for j in -gy..ny + gy {
                for i in -gx..nx + gx {
                    let (pi, pj) = if is_y { (i, j - 1) } else { (i - 1, j) };
                    if pi < -gx || pj < -gy {
                        continue;
                    }
                    let interior = if is_y {
                        (0..nx).contains(&i) && (0..=ny).contains(&j)
                    } else {
                        (0..=nx).contains(&i) && (0..ny).contains(&j)
                    };
                    let l = self.primitive(frame.to_local(field.get(pi, pj)), pi, pj, "cell average")?;
                    let r = self.primitive(frame.to_local(field.get(i, j)), i, j, "cell average")?;
                    let s = sigma_point(&l, &r, &gas);
                    let k = m.idx(i, j);
                    let slot = if is_y { &mut self.sigma.y[k] } else { &mut self.sigma.x[k] };
                    *slot = if interior && self.primed { slot.max(s) } else { s };
                }
            }
        }
        self.copy_ghost_sigmas();
        Ok(())
    }

    /// Gives each ghost-position strength the value of its interior image, so
    /// the reconstruction beyond a periodic or wall side repeats the interior
    /// one exactly.
    fn copy_ghost_sigmas(&mut self) {
        let m = self.mesh;
        if self.images.iter().all(Option::is_none) {
            return;
        }
        let (gx, gy) = (m.gx as isize, m.gy as isize);
        let (nx, ny) = (m.nx as isize, m.ny as isize);
        let [xl, xh, yl, yh] = self.images;
        let two_d = m.dim() == Dim::Two;
        for is_y in [false, true].into_iter().take(1 + two_d as usize) {
            let table = if is_y { &mut self.sigma.y } else { &mut self.sigma.x };
            for j in -gy..ny + gy {
                for i in -gx..nx + gx {
                    let ii = image_index(i, nx, !is_y, xl, xh);
                    let jj = if two_d { image_index(j, ny, is_y, yl, yh) } else { Some(j) };
                    if let (Some(ii), Some(jj)) = (ii, jj) {
                        if (ii, jj) != (i, j) {
                            table[m.idx(i, j)] = table[m.idx(ii, jj)];
                        }
                    }
                }
            }
        }
    }

    /// `L(W)` and, for the kinetic flux, `dL/dt`. Ghost cells of `field` must
    /// be filled. `dt` sets the kinetic collision time and time window.
    pub fn evaluate(&mut self, field: &Field, dt: f64) -> Result<Rhs> {
        debug_assert_eq!(field.mesh, self.mesh);
        self.bootstrap_sigmas(field)?;
        self.stats = PassStats::default();
        let want_dl = self.scheme.flux == FluxKind::Gks;
        let mut rhs = Rhs {
            l: vec![Conserved::ZERO; self.mesh.len()],
            dl: want_dl.then(|| vec![Conserved::ZERO; self.mesh.len()]),
        };
        let m = self.mesh;
        let x = Axis { swap: false, n: m.nx, nt: m.ny, dn: m.dx, dt: m.dy, frame: Frame::X, tang_sign: 1.0 };
        self.sweep(field, x, dt, &mut rhs)?;
        if m.dim() == Dim::Two {
            let y = Axis { swap: true, n: m.ny, nt: m.nx, dn: m.dy, dt: m.dx, frame: Frame::Y, tang_sign: -1.0 };
            self.sweep(field, y, dt, &mut rhs)?;
        }
        std::mem::swap(&mut self.sigma, &mut self.next);
        self.primed = true;
        Ok(rhs)
    }

    #[inline]
    fn normal_sigmas(&self, ax: &Axis, a: isize, b: isize) -> [f64; 8] {
        let table = if ax.swap { &self.sigma.y } else { &self.sigma.x };
        let mut s = [0.0; 8];
        for (k, sk) in s.iter_mut().enumerate() {
            let (i, j) = ax.cell(a + k as isize - 3, b);
            *sk = table[self.mesh.idx(i, j)];
        }
        s
    }

    /// Strengths along the tangential direction of normal column `a`.
    #[inline]
    fn tangential_sigmas(&self, ax: &Axis, a: isize, b: isize, h: isize) -> [f64; 8] {
        let table = if ax.swap { &self.sigma.x } else { &self.sigma.y };
        let mut s = [0.0; 8];
        for k in (4 - h as usize)..(4 + h as usize) {
            let (i, j) = ax.cell(a, b + k as isize - 3);
            s[k] = table[self.mesh.idx(i, j)];
        }
        s
    }

    fn reconstruct_normal(&mut self, field: &Field, ax: &Axis, h: isize, slopes: bool) -> Lines {
        let nf = ax.n + 1;
        let rows = ax.nt + 2 * h as usize;
        let mut lines = Lines {
            nf,
            h,
            wl: vec![Conserved::ZERO; rows * nf],
            wr: vec![Conserved::ZERO; rows * nf],
            dl: if slopes { vec![Conserved::ZERO; rows * nf] } else { Vec::new() },
            dr: if slopes { vec![Conserved::ZERO; rows * nf] } else { Vec::new() },
        };
        let cfg = self.scheme.recon;
        let n = ax.n as isize;
        let inv = 1.0 / ax.dn;
        let mut cells = [Conserved::ZERO; 9];
        for b in -h..ax.nt as isize + h {
            let interior_row = (0..ax.nt as isize).contains(&b);
            for a in -1..=n {
                let choice = ladder_choice(&self.normal_sigmas(ax, a, b), &cfg);
                if interior_row && (0..n).contains(&a) {
                    self.stats.reconstructions += 1;
                    if choice.is_df_limited() {
                        self.stats.df_limited += 1;
                    }
                }
                for (k, c) in cells.iter_mut().enumerate() {
                    let (i, j) = ax.cell(a + k as isize - 4, b);
                    *c = field.get(i, j);
                }
                let mut window = [0.0; 9];
                for comp in 0..4 {
                    for k in 0..9 {
                        window[k] = cells[k][comp];
                    }
                    let p = build_polynomial(choice, &window, &cfg);
                    if a < n {
                        let (v, d) = p.eval(0.0);
                        let k = lines.at(b, (a + 1) as usize);
                        lines.wl[k][comp] = v;
                        if slopes {
                            lines.dl[k][comp] = d * inv;
                        }
                    }
                    if a >= 0 {
                        let (v, d) = p.eval(-1.0);
                        let k = lines.at(b, a as usize);
                        lines.wr[k][comp] = v;
                        if slopes {
                            lines.dr[k][comp] = d * inv;
                        }
                    }
                }
            }
        }
        lines
    }

    fn sweep(&mut self, field: &Field, ax: Axis, dt: f64, rhs: &mut Rhs) -> Result<()> {
        let two_d = self.mesh.dim() == Dim::Two;
        let gks = self.scheme.flux == FluxKind::Gks;
        let h = if two_d { self.scheme.recon.half_width() as isize } else { 0 };
        let lines = self.reconstruct_normal(field, &ax, h, gks);
        let cfg = self.scheme.recon;
        let gas = self.scheme.gas;
        let params = self.scheme.gks;
        let ng = self.rule.len();
        let xis: Vec<f64> = self.rule.nodes.iter().map(|t| t - 1.0).collect();
        let inv_t = 1.0 / ax.dt;
        let side = if ax.swap { 2 } else { 0 };
        let (lo_wall, hi_wall) = (self.walls[side], self.walls[side + 1]);

        let nf = ax.n + 1;
        let mut flux = vec![Conserved::ZERO; ax.nt * nf];
        let mut dflux = if gks { vec![Conserved::ZERO; ax.nt * nf] } else { Vec::new() };

        // per Gauss point: value, normal slope, tangential slope
        let mut pl = vec![[Conserved::ZERO; 3]; ng];
        let mut pr = vec![[Conserved::ZERO; 3]; ng];

        for f in 0..nf {
            for b in 0..ax.nt as isize {
                let k0 = lines.at(b, f);
                if two_d {
                    let fa = f as isize;
                    let cl = ladder_choice(&self.tangential_sigmas(&ax, fa - 1, b, h), &cfg);
                    let cr = ladder_choice(&self.tangential_sigmas(&ax, fa, b, h), &cfg);
                    tangential(&lines, &lines.wl, &lines.dl, f, b, h, cl, &cfg, &xis, inv_t, gks, &mut pl);
                    tangential(&lines, &lines.wr, &lines.dr, f, b, h, cr, &cfg, &xis, inv_t, gks, &mut pr);
                } else {
                    pl[0] = [lines.wl[k0], if gks { lines.dl[k0] } else { Conserved::ZERO }, Conserved::ZERO];
                    pr[0] = [lines.wr[k0], if gks { lines.dr[k0] } else { Conserved::ZERO }, Conserved::ZERO];
                }

                let (ci, cj) = ax.cell(f as isize, b);
                let (li, lj) = ax.cell(f as isize - 1, b);
                let wall = if f == 0 {
                    lo_wall
                } else if f == ax.n {
                    hi_wall
                } else {
                    None
                };
                let mut sigma = 0.0;
                let mut fsum = Conserved::ZERO;
                let mut dsum = Conserved::ZERO;
                for g in 0..ng {
                    let ((wl, ql), (wr, qr)) = match wall {
                        Some(w) if f == 0 => {
                            let r = self.physical_point(field, &mut pr[g], ax.frame, ci, cj)?;
                            pl[g] = w.mirror_point(&pr[g], &ax);
                            (self.physical_point(field, &mut pl[g], ax.frame, ci, cj)?, r)
                        }
                        Some(w) => {
                            let l = self.physical_point(field, &mut pl[g], ax.frame, li, lj)?;
                            pr[g] = w.mirror_point(&pl[g], &ax);
                            (l, self.physical_point(field, &mut pr[g], ax.frame, li, lj)?)
                        }
                        None => (
                            self.physical_point(field, &mut pl[g], ax.frame, li, lj)?,
                            self.physical_point(field, &mut pr[g], ax.frame, ci, cj)?,
                        ),
                    };
                    sigma += sigma_point(&ql, &qr, &gas);
                    let wgt = self.rule.weights[g];
                    if gks {
                        let input = GaussPointInput {
                            wl,
                            wr,
                            normal_l: ax.frame.to_local(pl[g][1]),
                            normal_r: ax.frame.to_local(pr[g][1]),
                            tangential_l: ax.frame.to_local(pl[g][2]) * ax.tang_sign,
                            tangential_r: ax.frame.to_local(pr[g][2]) * ax.tang_sign,
                        };
                        let (fg, dg) = gks_flux(&input, &gas, dt, &params)
                            .map_err(|e| self.invalid(ci, cj, format!("kinetic flux: {e}")))?;
                        fsum += ax.frame.to_global(fg) * wgt;
                        dsum += ax.frame.to_global(dg) * wgt;
                    } else {
                        let fg = lf_flux(wl, wr, &gas).map_err(|e| self.invalid(ci, cj, format!("L-F flux: {e}")))?;
                        fsum += ax.frame.to_global(fg) * wgt;
                    }
                }
                if wall.is_some() {
                    // impermeable and adiabatic with the wall at rest; a
                    // no-slip mirror is not a symmetry of the kinetic flux, so
                    // these do not cancel on their own
                    for w in [&mut fsum, &mut dsum] {
                        w.rho = 0.0;
                        w.rho_e = 0.0;
                    }
                }
                let k = self.mesh.idx(ci, cj);
                if ax.swap {
                    self.next.y[k] = sigma / ng as f64;
                } else {
                    self.next.x[k] = sigma / ng as f64;
                }
                let kf = b as usize * nf + f;
                flux[kf] = fsum;
                if gks {
                    dflux[kf] = dsum;
                }
            }
        }

        let inv_n = 1.0 / ax.dn;
        for b in 0..ax.nt {
            for a in 0..ax.n {
                let (i, j) = ax.cell(a as isize, b as isize);
                let k = self.mesh.idx(i, j);
                let kf = b * nf + a;
                rhs.l[k] -= (flux[kf + 1] - flux[kf]) * inv_n;
                if let Some(dl) = rhs.dl.as_mut() {
                    dl[k] -= (dflux[kf + 1] - dflux[kf]) * inv_n;
                }
            }
        }
        Ok(())
    }
}

/// ASE-DF along one interface line: point values, normal slopes and
/// tangential slopes at the Gauss points of face `f`, row `b`.
#[allow(clippy::too_many_arguments)]
#[inline]
fn tangential(
    lines: &Lines,
    values: &[Conserved],
    normal: &[Conserved],
    f: usize,
    b: isize,
    h: isize,
    choice: LadderChoice,
    cfg: &SchemeConfig,
    xis: &[f64],
    inv_t: f64,
    slopes: bool,
    out: &mut [[Conserved; 3]],
) {
    let mut window = [0.0; 9];
    for comp in 0..4 {
        for k in -h..=h {
            window[(k + 4) as usize] = values[lines.at(b + k, f)][comp];
        }
        let p = build_polynomial(choice, &window, cfg);
        for (g, &xi) in xis.iter().enumerate() {
            let (v, d) = p.eval(xi);
            out[g][0][comp] = v;
            out[g][2][comp] = d * inv_t;
        }
        if slopes {
            for k in -h..=h {
                window[(k + 4) as usize] = normal[lines.at(b + k, f)][comp];
            }
            let p = build_polynomial(choice, &window, cfg);
            for (g, &xi) in xis.iter().enumerate() {
                out[g][1][comp] = p.value(xi);
            }
        }
    }
}
