//! Case execution, convergence studies and the timing harness.

use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::cases::CaseSpec;
use crate::diagnostics::{convergence_orders, l1_density_error, relative_drift};
use crate::error::Result;
use crate::grid::Field;
use crate::output;
use crate::solver::{RunStats, Solver};

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub case: String,
    pub scheme: String,
    pub flux: String,
    pub nx: usize,
    pub ny: usize,
    pub t_end: f64,
    pub time: f64,
    pub steps: usize,
    pub l1_error: Option<f64>,
    pub seconds: f64,
    pub min_rho: f64,
    pub min_p: f64,
    pub drift: f64,
    pub df_limited: usize,
    pub reconstructions: usize,
    pub first_order_fallbacks: usize,
    pub rejected_steps: usize,
    pub outputs: Vec<PathBuf>,
}

pub struct CaseRun {
    pub report: RunReport,
    pub field: Field,
}

/// Runs a case to its end time (or step cap) and optionally writes outputs.
pub fn run_case(spec: &CaseSpec, out: Option<&Path>) -> Result<CaseRun> {
    spec.validate()?;
    let field = spec.initial_field();
    let total0 = field.conserved_total();
    let mut solver = Solver::new(field, spec.scheme(), spec.boundaries())?;
    let plan = spec.step_plan();
    let start = Instant::now();
    solver.run(&plan, spec.t_end, spec.max_steps)?;
    let seconds = start.elapsed().as_secs_f64();

    let field = solver.field;
    let p = spec.problem;
    let t = field.time;
    let l1_error = p
        .exact(0.0, 0.0, t)
        .map(|_| l1_density_error(&field, &spec.gas, spec.init_points(), |x, y| p.exact(x, y, t).unwrap()));
    let mut report = report_from(spec, &solver.stats, &field, seconds);
    report.l1_error = l1_error;
    report.drift = relative_drift(total0, field.conserved_total());
    if let Some(dir) = out {
        report.outputs = output::write_outputs(dir, spec, &field, &report)?;
    }
    Ok(CaseRun { report, field })
}

fn report_from(spec: &CaseSpec, stats: &RunStats, field: &Field, seconds: f64) -> RunReport {
    RunReport {
        case: spec.name.clone(),
        scheme: spec.scheme_label(),
        flux: spec.flux.to_string(),
        nx: spec.nx,
        ny: if spec.problem.is_1d() { 1 } else { spec.ny },
        t_end: spec.t_end,
        time: field.time,
        steps: stats.steps,
        l1_error: None,
        seconds,
        min_rho: stats.min_rho,
        min_p: stats.min_p,
        drift: 0.0,
        df_limited: stats.df_limited,
        reconstructions: stats.reconstructions,
        first_order_fallbacks: stats.first_order_fallbacks,
        rejected_steps: stats.rejected_steps,
        outputs: Vec::new(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub l1: f64,
    /// Order against the previous (coarser) level.
    pub order: Option<f64>,
}

/// L1 errors and pairwise orders over square refinements of `family`.
pub fn convergence_suite(family: &CaseSpec, levels: &[usize]) -> Result<Vec<ConvergenceRow>> {
    let mut errors = Vec::with_capacity(levels.len());
    for &n in levels {
        let spec = family.clone().with_mesh(n, n);
        let run = run_case(&spec, None)?;
        errors.push(run.report.l1_error.unwrap_or(f64::NAN));
    }
    let orders = convergence_orders(&errors);
    Ok(levels
        .iter()
        .zip(&errors)
        .enumerate()
        .map(|(k, (&n, &l1))| ConvergenceRow { n, l1, order: if k == 0 { None } else { orders[k - 1] } })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimingRow {
    pub order: usize,
    pub seconds: f64,
    /// Relative to the first entry.
    pub ratio: f64,
}

/// Wall-clock seconds for exactly `steps` steps per order, on one thread.
///
/// Orders are run round-robin `repeats` times and the fastest attempt is kept,
/// which filters out interference from other load on the machine.
pub fn timing_harness(spec: &CaseSpec, steps: usize, orders: &[usize], repeats: usize) -> Result<Vec<TimingRow>> {
    let specs: Vec<CaseSpec> = orders.iter().map(|&o| spec.clone().with_order(o)).collect();
    for s in &specs {
        s.validate()?;
    }
    let mut best = vec![f64::INFINITY; specs.len()];
    for _ in 0..repeats.max(1) {
        for (s, b) in specs.iter().zip(&mut best) {
            *b = b.min(time_steps(s, steps)?);
        }
    }
    Ok(orders
        .iter()
        .zip(&best)
        .map(|(&order, &seconds)| TimingRow { order, seconds, ratio: seconds / best[0] })
        .collect())
}

fn time_steps(spec: &CaseSpec, steps: usize) -> Result<f64> {
    let mut solver = Solver::new(spec.initial_field(), spec.scheme(), spec.boundaries())?;
    let plan = spec.step_plan();
    let start = Instant::now();
    for _ in 0..steps {
        let dt = solver.next_dt(&plan, f64::INFINITY)?;
        solver.advance_with_retry(dt)?;
    }
    Ok(start.elapsed().as_secs_f64())
}
