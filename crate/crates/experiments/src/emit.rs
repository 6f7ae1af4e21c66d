//! CSV (one row per iterate) and JSON (run summary) output.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::{io_error, Result};
use crate::run::{RunFailure, RunReport, RunSummary};

/// Column names for a run in dimension `dim`.
pub fn csv_header(dim: usize) -> Vec<String> {
    let mut cols = vec!["iter".to_string()];
    cols.extend((1..=dim).map(|i| format!("dir_{i}")));
    cols.extend(["r_k", "measure", "polar_proj_measure", "dist_to_star"].map(String::from));
    cols
}

fn number(x: f64) -> String {
    format!("{x:.16e}")
}

/// Per-iterate table; iterate 0 has empty direction and `r_k` fields.
pub fn write_csv<W: Write>(report: &RunReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(csv_header(report.dim))?;
    for row in &report.iterates {
        let mut rec = vec![row.iter.to_string()];
        match &row.direction {
            Some(d) => rec.extend(d.iter().map(|&x| number(x))),
            None => rec.extend(std::iter::repeat_n(String::new(), report.dim)),
        }
        rec.push(row.r_k.map(number).unwrap_or_default());
        rec.extend([row.measure, row.polar_proj_measure, row.dist_to_star].map(number));
        w.write_record(&rec)?;
    }
    w.flush().map_err(io_error(Path::new("<csv>")))?;
    Ok(())
}

#[derive(Serialize)]
struct JsonSummary<'a> {
    geometry: crate::geometry::Geometry,
    dim: usize,
    resolution: usize,
    seed: Option<u64>,
    iterations: usize,
    eps_quad: f64,
    eps_quad_calibrated: bool,
    equality_band: f64,
    root_tol: f64,
    passed: bool,
    summary: &'a Option<RunSummary>,
    failure: &'a Option<RunFailure>,
    elapsed_seconds: f64,
}

pub fn write_json<W: Write>(report: &RunReport, out: W) -> Result<()> {
    let summary = JsonSummary {
        geometry: report.geometry,
        dim: report.dim,
        resolution: report.resolution,
        seed: report.seed,
        iterations: report.iterates.len().saturating_sub(1),
        eps_quad: report.eps_quad,
        eps_quad_calibrated: report.eps_quad_calibrated,
        equality_band: report.equality_band,
        root_tol: report.root_tol,
        passed: report.passed(),
        summary: &report.summary,
        failure: &report.failure,
        elapsed_seconds: report.elapsed_seconds,
    };
    serde_json::to_writer_pretty(out, &summary)?;
    Ok(())
}

fn create(path: &Path) -> Result<File> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(io_error(dir))?;
    }
    File::create(path).map_err(io_error(path))
}

/// Writes whichever of the two files have a path.
pub fn emit(report: &RunReport, csv_path: Option<&Path>, json_path: Option<&Path>) -> Result<()> {
    if let Some(p) = csv_path {
        write_csv(report, create(p)?)?;
    }
    if let Some(p) = json_path {
        let mut f = create(p)?;
        write_json(report, &mut f)?;
        writeln!(f).map_err(io_error(p))?;
    }
    Ok(())
}
