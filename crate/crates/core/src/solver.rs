//! Marching loop: ghost fills, operator evaluation, stage validation and
//! diagnostics.

use crate::error::{Result, SolverError};
use crate::grid::{fill_ghosts, BoundarySpec, Field};
use crate::operator::{FluxKind, PassStats, Scheme, SpatialOperator};
use crate::state::{to_primitive, Conserved};
use crate::time::{compute_dt, step, RhsEvaluator, StepPlan, TimeScheme};

/// Running extrema and DF activity over every accepted stage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunStats {
    pub steps: usize,
    pub min_rho: f64,
    pub min_p: f64,
    /// DF-limited reconstructions summed over all passes.
    pub df_limited: usize,
    pub reconstructions: usize,
    /// Interface points that dropped to first order.
    pub first_order_fallbacks: usize,
    /// Attempts discarded because a stage went non-physical.
    pub rejected_steps: usize,
}

impl Default for RunStats {
    fn default() -> Self {
        RunStats {
            steps: 0,
            min_rho: f64::INFINITY,
            min_p: f64::INFINITY,
            df_limited: 0,
            reconstructions: 0,
            first_order_fallbacks: 0,
            rejected_steps: 0,
        }
    }
}

/// Halvings tried before a non-physical stage is reported.
pub const MAX_HALVINGS: usize = 10;

pub struct Solver {
    pub field: Field,
    pub op: SpatialOperator,
    pub bc: BoundarySpec,
    pub stats: RunStats,
}

struct Stage<'a> {
    op: &'a mut SpatialOperator,
    bc: &'a BoundarySpec,
    stats: &'a mut RunStats,
    step: usize,
}

impl Stage<'_> {
    fn prepare(&mut self, t: f64, state: &Field, stage: usize) -> Result<Field> {
        let mut f = state.clone();
        fill_ghosts(&mut f, self.bc, t)?;
        self.op.context = (self.step, stage);
        Ok(f)
    }

    fn record(&mut self, pass: PassStats) {
        self.stats.df_limited += pass.df_limited;
        self.stats.reconstructions += pass.reconstructions;
        self.stats.first_order_fallbacks += pass.first_order_fallbacks;
    }

    fn as_field(template: &Field, cells: Vec<Conserved>) -> Field {
        Field { mesh: template.mesh, cells, time: template.time }
    }
}

impl RhsEvaluator<Field> for Stage<'_> {
    fn rhs(&mut self, t: f64, state: &Field, dt: f64, stage: usize) -> Result<Field> {
        let f = self.prepare(t, state, stage)?;
        let rhs = self.op.evaluate(&f, dt)?;
        self.record(self.op.last_stats());
        Ok(Self::as_field(state, rhs.l))
    }

    fn rhs_with_derivative(&mut self, t: f64, state: &Field, dt: f64, stage: usize) -> Result<(Field, Field)> {
        let f = self.prepare(t, state, stage)?;
        let rhs = self.op.evaluate(&f, dt)?;
        self.record(self.op.last_stats());
        let dl = rhs.dl.ok_or_else(|| SolverError::Config("flux supplies no time derivative".into()))?;
        Ok((Self::as_field(state, rhs.l), Self::as_field(state, dl)))
    }

    fn accept(&mut self, state: &Field, stage: usize) -> Result<()> {
        let gas = self.op.scheme.gas;
        for (i, j, w) in state.interior() {
            match to_primitive(w, &gas) {
                Ok(q) => {
                    self.stats.min_rho = self.stats.min_rho.min(q.rho);
                    self.stats.min_p = self.stats.min_p.min(q.p);
                }
                Err(e) => {
                    return Err(SolverError::StateInvalid { step: self.step, stage, i, j, reason: e.to_string() })
                }
            }
        }
        Ok(())
    }
}

impl Solver {
    pub fn new(field: Field, scheme: Scheme, bc: BoundarySpec) -> Result<Self> {
        bc.validate()?;
        let mut op = SpatialOperator::new(field.mesh, scheme)?;
        op.set_walls(&bc);
        let mut stats = RunStats::default();
        for (_, _, w) in field.interior() {
            let q = to_primitive(w, &scheme.gas)?;
            stats.min_rho = stats.min_rho.min(q.rho);
            stats.min_p = stats.min_p.min(q.p);
        }
        Ok(Solver { field, op, bc, stats })
    }

    pub fn time_scheme(&self) -> TimeScheme {
        match self.op.scheme.flux {
            FluxKind::Lf => TimeScheme::SspRk3,
            FluxKind::Gks => TimeScheme::S2o4,
        }
    }

    /// Advances one step of size `dt`.
    pub fn advance(&mut self, dt: f64) -> Result<()> {
        let scheme = self.time_scheme();
        let t = self.field.time;
        let n = self.stats.steps;
        let mut stage = Stage { op: &mut self.op, bc: &self.bc, stats: &mut self.stats, step: n };
        let mut next = step(scheme, &self.field, t, dt, &mut stage)?;
        next.time = t + dt;
        self.field = next;
        self.stats.steps += 1;
        Ok(())
    }

    /// Advances by `dt`, halving it while a stage turns non-physical. Returns
    /// the step actually taken.
    pub fn advance_with_retry(&mut self, dt: f64) -> Result<f64> {
        let mut dt = dt;
        let mut halvings = 0;
        loop {
            let feedback = self.op.feedback();
            let stats = self.stats;
            match self.advance(dt) {
                Ok(()) => return Ok(dt),
                Err(SolverError::StateInvalid { .. }) if halvings < MAX_HALVINGS => {
                    self.op.restore_feedback(feedback);
                    self.stats = stats;
                    self.stats.rejected_steps += 1;
                    halvings += 1;
                    dt *= 0.5;
                }
                Err(e) => return Err(e),
            }
        }
    }

    /// Step size for the next step, clipped to land on `t_end`.
    pub fn next_dt(&self, plan: &StepPlan, t_end: f64) -> Result<f64> {
        let dt = match plan.fixed_dt {
            Some(dt) => dt,
            None => compute_dt(&self.field, &self.op.scheme.gas, plan.cfl)?,
        };
        Ok(dt.min(t_end - self.field.time))
    }

    /// Marches to `t_end`, or for at most `max_steps` steps.
    pub fn run(&mut self, plan: &StepPlan, t_end: f64, max_steps: Option<usize>) -> Result<()> {
        let eps = 1e-12 * t_end.abs().max(1.0);
        let mut taken = 0;
        while self.field.time < t_end - eps {
            if max_steps.is_some_and(|m| taken >= m) {
                break;
            }
            let dt = self.next_dt(plan, t_end)?;
            if !(dt > 0.0) || !dt.is_finite() {
                return Err(SolverError::Config(format!("non-positive time step {dt}")));
            }
            self.advance_with_retry(dt)?;
            taken += 1;
        }
        Ok(())
    }

    /// Interior field with ghosts filled for the current time.
    pub fn filled_field(&self) -> Result<Field> {
        let mut f = self.field.clone();
        let t = f.time;
        fill_ghosts(&mut f, &self.bc, t)?;
        Ok(f)
    }
}
