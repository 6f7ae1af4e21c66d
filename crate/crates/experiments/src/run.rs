use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use stargeom::petty::{converge, ChainReport, ConvergenceTrace, PettyOptions};
use stargeom::{Point, SphereGrid};

use crate::calibrate::calibrate;
use crate::config::{ExperimentConfig, Tolerances};
use crate::error::Result;
use crate::geometry::{Body, Geometry, Trace};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterateRow {
    pub iter: usize,
    pub direction: Option<Vec<f64>>,
    pub r_k: Option<f64>,
    pub measure: f64,
    pub polar_proj_measure: f64,
    pub dist_to_star: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainSummary {
    pub star_perimeter: f64,
    pub star_inverse: f64,
    pub body_inverse: f64,
    pub body_perimeter: f64,
    pub endpoint_gap: f64,
    pub endpoint_holds: bool,
    pub middle_holds: bool,
    pub right_holds: bool,
}

impl From<&ChainReport> for ChainSummary {
    fn from(c: &ChainReport) -> Self {
        Self {
            star_perimeter: c.star_perimeter,
            star_inverse: c.star_inverse,
            body_inverse: c.body_inverse,
            body_perimeter: c.body_perimeter,
            endpoint_gap: c.endpoint_gap(),
            endpoint_holds: c.endpoint_holds(),
            middle_holds: c.middle_holds(),
            right_holds: c.right_holds(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    /// Polar projection measure of the body.
    pub lhs: f64,
    /// Polar projection measure of its rearrangement.
    pub rhs: f64,
    /// `(rhs - lhs) / rhs`.
    pub margin: f64,
    pub inequality_holds: bool,
    pub equality: bool,
    pub monotone: bool,
    /// `(iterate, relative decrease)` of every step that decreased beyond `eps_quad`.
    pub violations: Vec<(usize, f64)>,
    pub max_measure_drift: f64,
    pub measure_preserved: bool,
    pub chain: Option<ChainSummary>,
}

/// Kernel error that stopped a run, and the iterate it occurred at.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunFailure {
    pub iterate: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub geometry: Geometry,
    pub dim: usize,
    pub resolution: usize,
    pub seed: Option<u64>,
    pub eps_quad: f64,
    /// Whether `eps_quad` came from the configuration or from calibration.
    pub eps_quad_calibrated: bool,
    pub equality_band: f64,
    pub root_tol: f64,
    pub iterates: Vec<IterateRow>,
    pub summary: Option<RunSummary>,
    pub failure: Option<RunFailure>,
    pub elapsed_seconds: f64,
}

impl RunReport {
    /// No kernel error, the inequality and its monotone sequence hold, the measure
    /// is preserved and, when evaluated, every chain link holds.
    pub fn passed(&self) -> bool {
        let Some(s) = &self.summary else {
            return false;
        };
        let chain_ok = s.chain.as_ref().is_none_or(|c| c.endpoint_holds && c.middle_holds && c.right_holds);
        self.failure.is_none() && s.inequality_holds && s.monotone && s.measure_preserved && chain_ok
    }
}

/// Runs the verification trace of `body` along `directions`.
///
/// Kernel errors do not propagate: they end the run and are recorded with the
/// iterate at which they occurred.
pub fn run_body(
    body: &Body,
    directions: &[Point],
    tolerances: &Tolerances,
    eps_quad: f64,
    with_chain: bool,
) -> RunReport {
    let clock = Instant::now();
    let grid = body.chart().grid();
    let options = PettyOptions { eps_quad, equality_band: tolerances.equality_band };
    let mut report = RunReport {
        geometry: body.geometry(),
        dim: body.dim(),
        resolution: grid.resolution(),
        seed: None,
        eps_quad,
        eps_quad_calibrated: tolerances.eps_quad.is_none(),
        equality_band: tolerances.equality_band,
        root_tol: tolerances.root_tol,
        iterates: Vec::new(),
        summary: None,
        failure: None,
        elapsed_seconds: 0.0,
    };
    let fail = |iterate: usize, e: &dyn std::fmt::Display| Some(RunFailure { iterate, message: e.to_string() });
    let mut trace = match Trace::start(body, options) {
        Ok(t) => t,
        Err(e) => {
            report.failure = fail(0, &e);
            report.elapsed_seconds = clock.elapsed().as_secs_f64();
            return report;
        }
    };
    for (i, u) in directions.iter().enumerate() {
        if let Err(e) = trace.step(u) {
            report.failure = fail(i + 1, &e);
            break;
        }
    }
    let petty = trace.report();
    let dim = body.dim();
    report.iterates = petty
        .iterates
        .iter()
        .map(|r| IterateRow {
            iter: r.index,
            direction: r.direction.map(|d| d.as_slice()[..dim].to_vec()),
            r_k: r.r_k,
            measure: r.measure,
            polar_proj_measure: r.polar_projection_measure,
            dist_to_star: r.distance_to_rearrangement,
        })
        .collect();
    let chain = if with_chain && report.failure.is_none() {
        match trace.chain(body) {
            Ok(c) => c.as_ref().map(ChainSummary::from),
            Err(e) => {
                report.failure = fail(0, &e);
                None
            }
        }
    } else {
        None
    };
    let drift = petty.max_measure_drift();
    report.summary = Some(RunSummary {
        lhs: petty.lhs,
        rhs: petty.rhs,
        margin: petty.relative_margin(),
        inequality_holds: petty.inequality_holds(),
        equality: petty.is_equality(),
        monotone: petty.is_monotone(),
        violations: petty.violations.clone(),
        max_measure_drift: drift,
        measure_preserved: drift <= tolerances.root_tol,
        chain,
    });
    report.elapsed_seconds = clock.elapsed().as_secs_f64();
    report
}

/// Loads the body, calibrates `eps_quad` when it is not configured, and runs.
pub fn run_experiment(config: &ExperimentConfig) -> Result<RunReport> {
    config.validate()?;
    let def = config.body.load()?;
    let grid = Arc::new(SphereGrid::new(def.dim, config.resolution)?);
    let body = Body::build(config.geometry, &def, grid)?;
    let directions = config.schedule.directions(def.dim)?;
    let eps_quad = match config.tolerances.eps_quad {
        Some(e) => e,
        None => calibrate(config.geometry, def.dim, config.resolution)?.eps_quad,
    };
    let mut report = run_body(&body, &directions, &config.tolerances, eps_quad, config.chain);
    report.seed = config.schedule.seed();
    Ok(report)
}

/// Distance trace of `body` along `directions`, sampled every `stride` steps.
pub fn converge_body(body: &Body, directions: &[Point], stride: usize) -> Result<ConvergenceTrace> {
    Ok(match body {
        Body::Euclidean(b) => converge(b, directions, stride)?,
        Body::Spherical(b) => converge(b, directions, stride)?,
        Body::Hyperbolic(b) => converge(b, directions, stride)?,
    })
}
