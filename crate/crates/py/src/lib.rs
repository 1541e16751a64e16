use std::path::PathBuf;

use ::asedf as core;
use core::{CaseSpec, Problem, SolverError};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: SolverError) -> PyErr {
    match e {
        SolverError::Config(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// A registered problem with its scheme and run settings.
#[pyclass(name = "Case")]
#[derive(Clone)]
struct PyCase {
    spec: CaseSpec,
}

#[pymethods]
impl PyCase {
    #[new]
    #[pyo3(signature = (problem, mesh=None, order=None, flux=None, sigma_thres=None, t_end=None))]
    fn new(
        problem: &str,
        mesh: Option<&str>,
        order: Option<usize>,
        flux: Option<&str>,
        sigma_thres: Option<f64>,
        t_end: Option<f64>,
    ) -> PyResult<Self> {
        let mut spec = CaseSpec::new(Problem::from_name(problem).map_err(err)?);
        if let Some(m) = mesh {
            spec = spec.with_mesh_str(m).map_err(err)?;
        }
        if let Some(o) = order {
            spec = spec.with_order(o);
        }
        if let Some(f) = flux {
            spec.flux = f.parse().map_err(err)?;
        }
        if let Some(s) = sigma_thres {
            spec.recon.sigma_thres = s;
        }
        if let Some(t) = t_end {
            spec.t_end = t;
        }
        spec.validate().map_err(err)?;
        Ok(PyCase { spec })
    }

    /// Reads a TOML case file.
    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        Ok(PyCase { spec: CaseSpec::load(&path).map_err(err)? })
    }

    #[getter]
    fn name(&self) -> String {
        self.spec.name.clone()
    }

    #[getter]
    fn mesh(&self) -> (usize, usize) {
        (self.spec.nx, self.spec.ny)
    }

    #[getter]
    fn order(&self) -> usize {
        self.spec.recon.max_order
    }

    #[getter]
    fn flux(&self) -> String {
        self.spec.flux.to_string()
    }

    #[getter]
    fn t_end(&self) -> f64 {
        self.spec.t_end
    }

    #[getter]
    fn scheme(&self) -> String {
        self.spec.scheme_label()
    }

    fn __repr__(&self) -> String {
        format!("Case({}, {}x{}, {}, {})", self.spec.name, self.spec.nx, self.spec.ny, self.scheme(), self.spec.flux)
    }
}

/// Step-by-step access to a running case.
#[pyclass(name = "Solver", unsendable)]
struct PySolver {
    spec: CaseSpec,
    inner: core::Solver,
}

#[pymethods]
impl PySolver {
    #[new]
    fn new(case: &PyCase) -> PyResult<Self> {
        let spec = case.spec.clone();
        let inner = core::Solver::new(spec.initial_field(), spec.scheme(), spec.boundaries()).map_err(err)?;
        Ok(PySolver { spec, inner })
    }

    /// Takes one step, with the case's step rule when `dt` is omitted.
    /// Returns the step actually taken.
    #[pyo3(signature = (dt=None))]
    fn step(&mut self, dt: Option<f64>) -> PyResult<f64> {
        let dt = match dt {
            Some(dt) => dt,
            None => self.inner.next_dt(&self.spec.step_plan(), self.spec.t_end).map_err(err)?,
        };
        self.inner.advance_with_retry(dt).map_err(err)
    }

    /// Marches to `t_end` (the case's own when omitted).
    #[pyo3(signature = (t_end=None, max_steps=None))]
    fn run(&mut self, t_end: Option<f64>, max_steps: Option<usize>) -> PyResult<()> {
        let t_end = t_end.unwrap_or(self.spec.t_end);
        self.inner.run(&self.spec.step_plan(), t_end, max_steps).map_err(err)
    }

    #[getter]
    fn time(&self) -> f64 {
        self.inner.field.time
    }

    #[getter]
    fn steps(&self) -> usize {
        self.inner.stats.steps
    }

    /// `(min_rho, min_p, df_limited, rejected_steps)` so far.
    fn stats(&self) -> (f64, f64, usize, usize) {
        let s = &self.inner.stats;
        (s.min_rho, s.min_p, s.df_limited, s.rejected_steps)
    }

    /// Rows of `(x, y, rho, u, v, p)`, one per interior cell.
    fn primitives(&self) -> PyResult<Vec<(f64, f64, f64, f64, f64, f64)>> {
        let f = &self.inner.field;
        f.interior()
            .map(|(i, j, w)| {
                let q = core::state::to_primitive(w, &self.spec.gas).map_err(err)?;
                let (x, y) = f.mesh.cell_center(i, j);
                Ok((x, y, q.rho, q.u, q.v, q.p))
            })
            .collect()
    }

    /// Sum of cell averages times cell area, as `(rho, rho_u, rho_v, rho_e)`.
    fn conserved_total(&self) -> (f64, f64, f64, f64) {
        let t = self.inner.field.conserved_total().to_array();
        (t[0], t[1], t[2], t[3])
    }

    /// L1 density error against the exact solution, when the case has one.
    fn l1_error(&self) -> Option<f64> {
        let p = self.spec.problem;
        let t = self.inner.field.time;
        p.exact(0.0, 0.0, t)?;
        Some(core::diagnostics::l1_density_error(&self.inner.field, &self.spec.gas, self.spec.init_points(), |x, y| {
            p.exact(x, y, t).unwrap()
        }))
    }
}

/// Runs a case to completion; returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (case, out=None))]
fn run_case<'py>(py: Python<'py>, case: &PyCase, out: Option<PathBuf>) -> PyResult<Bound<'py, PyDict>> {
    let r = core::run_case(&case.spec, out.as_deref()).map_err(err)?.report;
    let d = PyDict::new_bound(py);
    d.set_item("case", r.case)?;
    d.set_item("scheme", r.scheme)?;
    d.set_item("flux", r.flux)?;
    d.set_item("mesh", (r.nx, r.ny))?;
    d.set_item("time", r.time)?;
    d.set_item("steps", r.steps)?;
    d.set_item("l1_error", r.l1_error)?;
    d.set_item("seconds", r.seconds)?;
    d.set_item("min_rho", r.min_rho)?;
    d.set_item("min_p", r.min_p)?;
    d.set_item("conserved_drift", r.drift)?;
    d.set_item("df_limited", r.df_limited)?;
    d.set_item("rejected_steps", r.rejected_steps)?;
    let outputs: Vec<String> = r.outputs.iter().map(|p| p.display().to_string()).collect();
    d.set_item("outputs", outputs)?;
    Ok(d)
}

/// `[(n, l1, order)]` over square refinements of `case`.
#[pyfunction]
fn convergence(case: &PyCase, levels: Vec<usize>) -> PyResult<Vec<(usize, f64, Option<f64>)>> {
    let rows = core::convergence_suite(&case.spec, &levels).map_err(err)?;
    Ok(rows.into_iter().map(|r| (r.n, r.l1, r.order)).collect())
}

/// `[(order, seconds, ratio)]` for `steps` steps per order.
#[pyfunction]
#[pyo3(signature = (case, steps=20, orders=vec![5, 7, 9], repeats=1))]
fn timing(case: &PyCase, steps: usize, orders: Vec<usize>, repeats: usize) -> PyResult<Vec<(usize, f64, f64)>> {
    let rows = core::timing_harness(&case.spec, steps, &orders, repeats).map_err(err)?;
    Ok(rows.into_iter().map(|r| (r.order, r.seconds, r.ratio)).collect())
}

#[pyfunction]
fn problems() -> Vec<&'static str> {
    Problem::ALL.iter().map(|p| p.name()).collect()
}

#[pymodule]
fn asedf(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCase>()?;
    m.add_class::<PySolver>()?;
    m.add_function(wrap_pyfunction!(run_case, m)?)?;
    m.add_function(wrap_pyfunction!(convergence, m)?)?;
    m.add_function(wrap_pyfunction!(timing, m)?)?;
    m.add_function(wrap_pyfunction!(problems, m)?)?;
    Ok(())
}
