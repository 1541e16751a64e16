//! Field and report files: CSV line data, legacy VTK structured points and a
//! `key = value` run report.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::cases::CaseSpec;
use crate::error::{Result, SolverError};
use crate::grid::{Dim, Field};
use crate::runner::RunReport;
use crate::state::{to_primitive, GasModel};

/// `x,rho,u,p` with one row per cell.
pub fn csv_1d(field: &Field, gas: &GasModel) -> Result<String> {
    let mut s = String::from("x,rho,u,p\n");
    for (i, j, w) in field.interior() {
        let q = to_primitive(w, gas)?;
        let (x, _) = field.mesh.cell_center(i, j);
        writeln!(s, "{x:e},{:e},{:e},{:e}", q.rho, q.u, q.p).unwrap();
    }
    Ok(s)
}

/// Legacy ASCII structured points with cell data for density, velocity
/// components, pressure and `log(rho)`.
pub fn vtk_2d(field: &Field, gas: &GasModel, title: &str) -> Result<String> {
    let m = &field.mesh;
    let mut arrays: [(&str, Vec<f64>); 5] = Default::default();
    for (k, name) in ["density", "u", "v", "pressure", "log_density"].into_iter().enumerate() {
        arrays[k].0 = name;
    }
    for (_, _, w) in field.interior() {
        let q = to_primitive(w, gas)?;
        for (k, v) in [q.rho, q.u, q.v, q.p, q.rho.ln()].into_iter().enumerate() {
            arrays[k].1.push(v);
        }
    }
    let mut s = String::new();
    writeln!(s, "# vtk DataFile Version 3.0").unwrap();
    writeln!(s, "{}", title.replace('\n', " ")).unwrap();
    writeln!(s, "ASCII\nDATASET STRUCTURED_POINTS").unwrap();
    writeln!(s, "DIMENSIONS {} {} 1", m.nx + 1, m.ny + 1).unwrap();
    writeln!(s, "ORIGIN {:e} {:e} 0", m.x0, m.y0).unwrap();
    writeln!(s, "SPACING {:e} {:e} 1", m.dx, m.dy).unwrap();
    writeln!(s, "CELL_DATA {}", m.nx * m.ny).unwrap();
    for (name, values) in &arrays {
        writeln!(s, "SCALARS {name} double 1\nLOOKUP_TABLE default").unwrap();
        for v in values {
            writeln!(s, "{v:e}").unwrap();
        }
    }
    Ok(s)
}

#[derive(Debug, Clone, PartialEq)]
pub struct VtkData {
    pub dims: [usize; 3],
    pub origin: [f64; 3],
    pub spacing: [f64; 3],
    pub arrays: Vec<(String, Vec<f64>)>,
}

impl VtkData {
    pub fn array(&self, name: &str) -> Option<&[f64]> {
        self.arrays.iter().find(|(n, _)| n == name).map(|(_, v)| v.as_slice())
    }
}

/// Reads back what [`vtk_2d`] writes.
pub fn parse_vtk(text: &str) -> Result<VtkData> {
    let mut lines = text.lines();
    if !lines.next().is_some_and(|l| l.starts_with("# vtk DataFile")) {
        return Err(malformed("header"));
    }
    lines.next();
    let mut t = lines.flat_map(str::split_whitespace);
    for word in ["ASCII", "DATASET", "STRUCTURED_POINTS"] {
        keyword(&mut t, word)?;
    }
    let mut triple = |key: &str| -> Result<[f64; 3]> {
        keyword(&mut t, key)?;
        Ok([number(&mut t)?, number(&mut t)?, number(&mut t)?])
    };
    let dims = triple("DIMENSIONS")?.map(|v| v as usize);
    let origin = triple("ORIGIN")?;
    let spacing = triple("SPACING")?;
    keyword(&mut t, "CELL_DATA")?;
    let count = number(&mut t)? as usize;
    if count != dims[0].saturating_sub(1) * dims[1].saturating_sub(1) {
        return Err(malformed("cell count does not match dimensions"));
    }
    let mut arrays = Vec::new();
    while let Some(word) = t.next() {
        if word != "SCALARS" {
            return Err(malformed("SCALARS"));
        }
        let name = t.next().ok_or_else(|| malformed("name"))?.to_string();
        t.next();
        t.next();
        keyword(&mut t, "LOOKUP_TABLE")?;
        t.next();
        let values = (0..count).map(|_| number(&mut t)).collect::<Result<Vec<f64>>>()?;
        arrays.push((name, values));
    }
    Ok(VtkData { dims, origin, spacing, arrays })
}

fn malformed(what: &str) -> SolverError {
    SolverError::Io(format!("malformed vtk: {what}"))
}

fn keyword<'a>(t: &mut impl Iterator<Item = &'a str>, word: &str) -> Result<()> {
    match t.next() {
        Some(w) if w == word => Ok(()),
        _ => Err(malformed(word)),
    }
}

fn number<'a>(t: &mut impl Iterator<Item = &'a str>) -> Result<f64> {
    t.next().and_then(|w| w.parse().ok()).ok_or_else(|| malformed("number"))
}

/// `key = value` lines; absent values are written as `n/a`.
pub fn report_text(r: &RunReport) -> String {
    let mut s = String::new();
    let mut kv = |k: &str, v: String| writeln!(s, "{k} = {v}").unwrap();
    kv("case", r.case.clone());
    kv("scheme", r.scheme.clone());
    kv("flux", r.flux.clone());
    kv("mesh", format!("{}x{}", r.nx, r.ny));
    kv("t_end", format!("{:e}", r.t_end));
    kv("time", format!("{:e}", r.time));
    kv("steps", r.steps.to_string());
    kv("l1_error", r.l1_error.map_or("n/a".into(), |e| format!("{e:e}")));
    kv("seconds", format!("{:.3}", r.seconds));
    kv("min_rho", format!("{:e}", r.min_rho));
    kv("min_p", format!("{:e}", r.min_p));
    kv("conserved_drift", format!("{:e}", r.drift));
    kv("df_limited", r.df_limited.to_string());
    kv("reconstructions", r.reconstructions.to_string());
    kv("first_order_fallbacks", r.first_order_fallbacks.to_string());
    kv("rejected_steps", r.rejected_steps.to_string());
    let files: Vec<String> = r.outputs.iter().map(|p| p.display().to_string()).collect();
    kv("outputs", files.join(","));
    s
}

/// Writes the field file and the report into `dir`; returns both paths.
pub fn write_outputs(dir: &Path, spec: &CaseSpec, field: &Field, report: &RunReport) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let stem = format!("{}_{}x{}_r{}", spec.name, report.nx, report.ny, spec.recon.max_order);
    let data = match field.mesh.dim() {
        Dim::One => (dir.join(format!("{stem}.csv")), csv_1d(field, &spec.gas)?),
        Dim::Two => {
            let title = format!("{} {} t={:e}", spec.name, report.scheme, field.time);
            (dir.join(format!("{stem}.vtk")), vtk_2d(field, &spec.gas, &title)?)
        }
    };
    fs::write(&data.0, data.1)?;
    let report_path = dir.join(format!("{stem}.report"));
    let mut r = report.clone();
    r.outputs = vec![data.0.clone(), report_path.clone()];
    fs::write(&report_path, report_text(&r))?;
    Ok(r.outputs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Mesh;
    use crate::state::Primitive;

    const AIR: GasModel = GasModel { gamma: 1.4, mu: 0.0, prandtl: 1.0 };

    #[test]
    fn csv_has_one_row_per_cell() {
        let f =
            Field::from_primitive_fn(Mesh::new_1d(7, 0.0, 1.0), &AIR, 2, |x, _| Primitive::new(1.0 + x, 0.5, 0.0, 2.0));
        let text = csv_1d(&f, &AIR).unwrap();
        let rows: Vec<&str> = text.lines().collect();
        assert_eq!(rows.len(), 8);
        assert_eq!(rows[0], "x,rho,u,p");
        let cols: Vec<f64> = rows[1].split(',').map(|c| c.parse().unwrap()).collect();
        assert!((cols[0] - 1.0 / 14.0).abs() < 1e-15);
        assert!((cols[3] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn vtk_roundtrip() {
        let mesh = Mesh::new_2d(5, 3, (0.0, 2.0), (1.0, 2.5));
        let f = Field::from_primitive_fn(mesh, &AIR, 2, |x, y| Primitive::new(1.0 + x * y, x, -y, 1.0 + x));
        let text = vtk_2d(&f, &AIR, "test").unwrap();
        let d = parse_vtk(&text).unwrap();
        assert_eq!(d.dims, [6, 4, 1]);
        assert_eq!(d.origin, [0.0, 1.0, 0.0]);
        assert_eq!(d.spacing, [0.4, 0.5, 1.0]);
        let rho = d.array("density").unwrap();
        assert_eq!(rho.len(), 15);
        for ((_, _, w), r) in f.interior().zip(rho) {
            assert_eq!(w.rho, *r);
        }
        let logs = d.array("log_density").unwrap();
        assert!(logs.iter().zip(rho).all(|(l, r)| (l - r.ln()).abs() < 1e-15));
        assert!(parse_vtk(&text.replace("CELL_DATA 15", "CELL_DATA 16")).is_err());
        assert!(parse_vtk("garbage").is_err());
    }

    #[test]
    fn report_marks_missing_error() {
        let r = RunReport {
            case: "blast_wave".into(),
            scheme: "ASE-DF(5,3)".into(),
            flux: "gks".into(),
            nx: 400,
            ny: 1,
            t_end: 3.8,
            time: 3.8,
            steps: 10,
            l1_error: None,
            seconds: 1.0,
            min_rho: 0.5,
            min_p: 0.01,
            drift: 0.0,
            df_limited: 0,
            reconstructions: 0,
            first_order_fallbacks: 0,
            rejected_steps: 0,
            outputs: vec![],
        };
        let text = report_text(&r);
        assert!(text.contains("l1_error = n/a\n"));
        assert!(text.contains("min_rho = 5e-1\n"));
    }
}
