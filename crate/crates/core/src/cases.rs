//! Registered benchmark problems and case configuration files.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SolverError};
use crate::gks::GksParams;
use crate::grid::{Boundary, BoundarySpec, Field, Mesh};
use crate::operator::{FluxKind, Scheme};
use crate::reconstruction::SchemeConfig;
use crate::state::{GasModel, Primitive};
use crate::time::{compute_dt, StepPlan, TimeScheme};

const SQRT3: f64 = 1.732_050_807_568_877_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Problem {
    SinWave1d,
    SinWave2d,
    ShuOsher,
    BlastWave,
    Config3,
    DoubleMach,
    ViscousShockTube,
    JetMach80,
    JetMach20000,
}

impl Problem {
    pub const ALL: [Problem; 9] = [
        Problem::SinWave1d,
        Problem::SinWave2d,
        Problem::ShuOsher,
        Problem::BlastWave,
        Problem::Config3,
        Problem::DoubleMach,
        Problem::ViscousShockTube,
        Problem::JetMach80,
        Problem::JetMach20000,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Problem::SinWave1d => "sin_wave_1d",
            Problem::SinWave2d => "sin_wave_2d",
            Problem::ShuOsher => "shu_osher",
            Problem::BlastWave => "blast_wave",
            Problem::Config3 => "config3",
            Problem::DoubleMach => "double_mach",
            Problem::ViscousShockTube => "viscous_shock_tube",
            Problem::JetMach80 => "jet_mach80",
            Problem::JetMach20000 => "jet_mach20000",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Problem::ALL
            .into_iter()
            .find(|p| p.name() == name)
            .ok_or_else(|| SolverError::Config(format!("unknown case '{name}'")))
    }

    pub fn is_1d(self) -> bool {
        matches!(self, Problem::SinWave1d | Problem::ShuOsher | Problem::BlastWave)
    }

    /// `((x0, x1), (y0, y1))`; the y extent is ignored in 1-D.
    pub fn domain(self) -> ((f64, f64), (f64, f64)) {
        match self {
            Problem::SinWave1d => ((0.0, 2.0), (0.0, 1.0)),
            Problem::SinWave2d => ((0.0, 2.0), (0.0, 2.0)),
            Problem::ShuOsher => ((0.0, 10.0), (0.0, 1.0)),
            Problem::BlastWave => ((0.0, 1.0), (0.0, 1.0)),
            Problem::Config3 => ((0.0, 1.0), (0.0, 1.0)),
            Problem::DoubleMach => ((0.0, 4.0), (0.0, 1.0)),
            Problem::ViscousShockTube => ((0.0, 1.0), (0.0, 0.5)),
            Problem::JetMach80 | Problem::JetMach20000 => ((0.0, 2.0), (0.0, 1.0)),
        }
    }

    pub fn default_mesh(self) -> (usize, usize) {
        match self {
            Problem::SinWave1d => (40, 1),
            Problem::SinWave2d => (40, 40),
            Problem::ShuOsher => (200, 1),
            Problem::BlastWave => (400, 1),
            Problem::Config3 => (500, 500),
            Problem::DoubleMach => (960, 240),
            Problem::ViscousShockTube => (500, 250),
            Problem::JetMach80 => (400, 200),
            Problem::JetMach20000 => (800, 400),
        }
    }

    pub fn t_end(self) -> f64 {
        match self {
            Problem::SinWave1d | Problem::SinWave2d => 2.0,
            Problem::ShuOsher => 1.8,
            Problem::BlastWave => 3.8,
            Problem::Config3 => 0.6,
            Problem::DoubleMach => 0.2,
            Problem::ViscousShockTube => 1.0,
            Problem::JetMach80 => 0.07,
            Problem::JetMach20000 => 1e-4,
        }
    }

    pub fn gas(self) -> GasModel {
        match self {
            Problem::ViscousShockTube => GasModel::viscous(1.4, 1.0 / 200.0),
            Problem::JetMach80 | Problem::JetMach20000 => GasModel::new(5.0 / 3.0),
            _ => GasModel::new(1.4),
        }
    }

    pub fn default_flux(self) -> FluxKind {
        match self {
            Problem::JetMach80 | Problem::JetMach20000 => FluxKind::Lf,
            _ => FluxKind::Gks,
        }
    }

    /// Collision-time constants from the figure captions; zero for the smooth
    /// accuracy tests.
    pub fn gks_params(self) -> GksParams {
        match self {
            Problem::SinWave1d | Problem::SinWave2d => GksParams { c1: 0.0, c2: 0.0 },
            Problem::BlastWave => GksParams { c1: 0.05, c2: 5.0 },
            Problem::ViscousShockTube => GksParams { c1: 1.0, c2: 10.0 },
            _ => GksParams { c1: 0.05, c2: 1.0 },
        }
    }

    pub fn default_dt_rule(self) -> DtRule {
        match self {
            Problem::SinWave1d | Problem::SinWave2d => DtRule::Power,
            _ => DtRule::Cfl,
        }
    }

    /// Pointwise initial state.
    pub fn initial(self, x: f64, y: f64) -> Primitive {
        use std::f64::consts::PI;
        match self {
            Problem::SinWave1d => Primitive::new(1.0 + 0.2 * (PI * x).sin(), 1.0, 0.0, 1.0),
            Problem::SinWave2d => Primitive::new(1.0 + 0.2 * (PI * x).sin() * (PI * y).sin(), 1.0, 1.0, 1.0),
            Problem::ShuOsher => {
                if x < 1.0 {
                    Primitive::new(3.857134, 2.629369, 0.0, 10.33333)
                } else {
                    Primitive::new(1.0 + 0.2 * (5.0 * x).sin(), 0.0, 0.0, 1.0)
                }
            }
            Problem::BlastWave => {
                let p = if x < 0.1 {
                    1000.0
                } else if x < 0.9 {
                    0.01
                } else {
                    100.0
                };
                Primitive::new(1.0, 0.0, 0.0, p)
            }
            Problem::Config3 => match (x >= 0.7, y >= 0.7) {
                (false, false) => Primitive::new(0.138, 1.206, 1.206, 0.129),
                (true, false) => Primitive::new(0.5323, 0.0, 1.206, 0.3),
                (true, true) => Primitive::new(1.5, 0.0, 0.0, 1.5),
                (false, true) => Primitive::new(0.5323, 1.206, 0.0, 0.3),
            },
            Problem::DoubleMach => {
                if y < SQRT3 * (x - 1.0 / 6.0) {
                    DMR_PRE
                } else {
                    DMR_POST
                }
            }
            Problem::ViscousShockTube => {
                let g = 1.4;
                if x < 0.5 {
                    Primitive::new(120.0, 0.0, 0.0, 120.0 / g)
                } else {
                    Primitive::new(1.2, 0.0, 0.0, 1.2 / g)
                }
            }
            Problem::JetMach80 | Problem::JetMach20000 => JET_AMBIENT,
        }
    }

    /// Exact solution where one is known.
    pub fn exact(self, x: f64, y: f64, t: f64) -> Option<Primitive> {
        match self {
            Problem::SinWave1d => Some(self.initial(x - t, 0.0)),
            Problem::SinWave2d => Some(self.initial(x - t, y - t)),
            _ => None,
        }
    }

    pub fn boundaries(self, gas: &GasModel) -> BoundarySpec {
        let gas = *gas;
        match self {
            Problem::SinWave1d | Problem::SinWave2d => BoundarySpec::all(Boundary::Periodic),
            Problem::ShuOsher | Problem::Config3 => BoundarySpec::all(Boundary::Outflow),
            Problem::BlastWave => BoundarySpec::all(Boundary::Reflective),
            Problem::DoubleMach => {
                let post = DMR_POST.to_conserved(&gas);
                let pre = DMR_PRE.to_conserved(&gas);
                BoundarySpec {
                    x_lo: Boundary::profile(move |_, _, _| Some(post), Boundary::Outflow),
                    x_hi: Boundary::Outflow,
                    y_lo: Boundary::profile(move |x, _, _| (x < 1.0 / 6.0).then_some(post), Boundary::Reflective),
                    // exact trace of the moving oblique shock along the top
                    y_hi: Boundary::profile(
                        move |x, _, t| Some(if x < dmr_shock_foot(t) { post } else { pre }),
                        Boundary::Outflow,
                    ),
                }
            }
            Problem::ViscousShockTube => BoundarySpec {
                x_lo: Boundary::NoSlipAdiabaticWall,
                x_hi: Boundary::NoSlipAdiabaticWall,
                y_lo: Boundary::NoSlipAdiabaticWall,
                y_hi: Boundary::SymmetryWall,
            },
            Problem::JetMach80 | Problem::JetMach20000 => {
                let u = if self == Problem::JetMach80 { 30.0 } else { 8000.0 };
                let jet = Primitive::new(5.0, u, 0.0, 0.4127).to_conserved(&gas);
                BoundarySpec {
                    x_lo: Boundary::profile(
                        move |_, y, _| (0.45..=0.55).contains(&y).then_some(jet),
                        Boundary::Outflow,
                    ),
                    x_hi: Boundary::Outflow,
                    y_lo: Boundary::Outflow,
                    y_hi: Boundary::Outflow,
                }
            }
        }
    }
}

const DMR_PRE: Primitive = Primitive::new(1.4, 0.0, 0.0, 1.0);
const DMR_POST: Primitive = Primitive::new(8.0, 7.145, -4.125, 116.8333);
const JET_AMBIENT: Primitive = Primitive::new(0.5, 0.0, 0.0, 0.4127);

/// x where the incident shock meets `y = 1` at time `t`.
pub fn dmr_shock_foot(t: f64) -> f64 {
    1.0 / 6.0 + (1.0 + 20.0 * t) / SQRT3
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DtRule {
    /// CFL-limited step.
    Cfl,
    /// `dt = dx^(r/s)` with spatial order `r` and temporal order `s`.
    Power,
}

/// Contents of a case file. Every field but `case` falls back to the
/// registered problem's defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseConfig {
    pub case: String,
    pub mesh: Option<Vec<usize>>,
    pub order: Option<usize>,
    pub flux: Option<FluxKind>,
    pub sigma_thres: Option<f64>,
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    pub t_end: Option<f64>,
    pub cfl: Option<f64>,
    pub dt_rule: Option<DtRule>,
    pub power_cfl_cap: Option<f64>,
    pub gamma: Option<f64>,
    pub mu: Option<f64>,
    pub max_steps: Option<usize>,
}

impl CaseConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| SolverError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| SolverError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

/// Fully resolved run description.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseSpec {
    pub name: String,
    pub problem: Problem,
    pub nx: usize,
    pub ny: usize,
    pub gas: GasModel,
    pub recon: SchemeConfig,
    pub flux: FluxKind,
    pub gks: GksParams,
    pub t_end: f64,
    pub cfl: f64,
    pub dt_rule: DtRule,
    /// Caps the power-law step at this CFL number.
    pub power_cfl_cap: Option<f64>,
    pub max_steps: Option<usize>,
}

impl CaseSpec {
    pub fn new(problem: Problem) -> Self {
        let (nx, ny) = problem.default_mesh();
        CaseSpec {
            name: problem.name().to_string(),
            problem,
            nx,
            ny,
            gas: problem.gas(),
            recon: SchemeConfig::default(),
            flux: problem.default_flux(),
            gks: problem.gks_params(),
            t_end: problem.t_end(),
            cfl: 0.5,
            dt_rule: problem.default_dt_rule(),
            // dx^(5/4) exceeds the 2-D stability limit on coarse meshes
            power_cfl_cap: (problem == Problem::SinWave2d).then_some(0.5),
            max_steps: None,
        }
    }

    pub fn from_config(cfg: &CaseConfig) -> Result<Self> {
        let problem = Problem::from_name(&cfg.case)?;
        let mut spec = CaseSpec::new(problem);
        if let Some(mesh) = &cfg.mesh {
            spec = spec.with_mesh_list(mesh)?;
        }
        if let Some(order) = cfg.order {
            spec.recon.max_order = order;
        }
        if let Some(f) = cfg.flux {
            spec.flux = f;
        }
        if let Some(s) = cfg.sigma_thres {
            spec.recon.sigma_thres = s;
        }
        if let Some(c1) = cfg.c1 {
            spec.gks.c1 = c1;
        }
        if let Some(c2) = cfg.c2 {
            spec.gks.c2 = c2;
        }
        if let Some(t) = cfg.t_end {
            spec.t_end = t;
        }
        if let Some(c) = cfg.cfl {
            spec.cfl = c;
        }
        if let Some(r) = cfg.dt_rule {
            spec.dt_rule = r;
        }
        if let Some(c) = cfg.power_cfl_cap {
            spec.power_cfl_cap = Some(c);
        }
        if let Some(g) = cfg.gamma {
            spec.gas.gamma = g;
        }
        if let Some(mu) = cfg.mu {
            spec.gas.mu = mu;
        }
        spec.max_steps = cfg.max_steps;
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_config(&CaseConfig::load(path)?)
    }

    fn with_mesh_list(mut self, mesh: &[usize]) -> Result<Self> {
        match (mesh, self.problem.is_1d()) {
            ([n], true) => self.nx = *n,
            ([n], false) => (self.nx, self.ny) = (*n, *n),
            ([nx, ny], false) => (self.nx, self.ny) = (*nx, *ny),
            _ => return Err(SolverError::Config(format!("mesh {mesh:?} does not fit case {}", self.problem.name()))),
        }
        Ok(self)
    }

    /// Parses `NX` or `NXxNY`.
    pub fn with_mesh_str(self, s: &str) -> Result<Self> {
        let parts: std::result::Result<Vec<usize>, _> = s.split(['x', 'X']).map(str::parse).collect();
        let parts = parts.map_err(|_| SolverError::Config(format!("bad mesh '{s}'")))?;
        self.with_mesh_list(&parts)
    }

    pub fn with_mesh(mut self, nx: usize, ny: usize) -> Self {
        self.nx = nx;
        self.ny = if self.problem.is_1d() { 1 } else { ny };
        self
    }

    pub fn with_order(mut self, order: usize) -> Self {
        self.recon.max_order = order;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.recon.validate()?;
        self.gas.validate()?;
        if self.nx == 0 || self.ny == 0 {
            return Err(SolverError::Config("empty mesh".into()));
        }
        if !(self.t_end > 0.0) || !(self.cfl > 0.0) {
            return Err(SolverError::Config("t_end and cfl must be positive".into()));
        }
        Ok(())
    }

    pub fn mesh(&self) -> Mesh {
        let (xr, yr) = self.problem.domain();
        if self.problem.is_1d() {
            Mesh::new_1d(self.nx, xr.0, xr.1)
        } else {
            Mesh::new_2d(self.nx, self.ny, xr, yr)
        }
    }

    pub fn scheme(&self) -> Scheme {
        Scheme { gas: self.gas, recon: self.recon, flux: self.flux, gks: self.gks }
    }

    pub fn time_scheme(&self) -> TimeScheme {
        match self.flux {
            FluxKind::Lf => TimeScheme::SspRk3,
            FluxKind::Gks => TimeScheme::S2o4,
        }
    }

    /// Step rule; a capped power-law step is resolved against the initial
    /// wave speeds.
    pub fn step_plan(&self) -> StepPlan {
        let scheme = self.time_scheme();
        let fixed_dt = match self.dt_rule {
            DtRule::Cfl => None,
            DtRule::Power => {
                let s = match scheme {
                    TimeScheme::SspRk3 => 3.0,
                    TimeScheme::S2o4 => 4.0,
                };
                let dt = self.mesh().dx.powf(self.recon.max_order as f64 / s);
                let cap = self
                    .power_cfl_cap
                    .and_then(|c| compute_dt(&self.initial_field(), &self.gas, c).ok())
                    .unwrap_or(f64::INFINITY);
                Some(dt.min(cap))
            }
        };
        StepPlan { cfl: self.cfl, scheme, fixed_dt }
    }

    /// Gauss points per direction used to average the initial data.
    pub fn init_points(&self) -> usize {
        5
    }

    pub fn initial_field(&self) -> Field {
        let p = self.problem;
        Field::from_primitive_fn(self.mesh(), &self.gas, self.init_points(), move |x, y| p.initial(x, y))
    }

    pub fn boundaries(&self) -> BoundarySpec {
        self.problem.boundaries(&self.gas)
    }

    /// `asedf run` style label, e.g. `ASE-DF(7,5,3)`.
    pub fn scheme_label(&self) -> String {
        let orders: Vec<String> = (1..=self.recon.half_width()).rev().map(|h| (2 * h + 1).to_string()).collect();
        format!("ASE-DF({})", orders.join(","))
    }
}
