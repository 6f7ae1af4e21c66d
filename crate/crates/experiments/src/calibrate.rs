//! Quadrature allowance from the equality case: a centered ball or cap is fixed
//! by every symmetrization and attains equality, so every deviation it shows is
//! discretization noise.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use stargeom::hyperbolic::{HyperbolicBody, DEFAULT_DISK_MARGIN};
use stargeom::petty::{verify_petty, EuclideanBody, PettyGeometry, PettyOptions};
use stargeom::spherical::{SphericalBody, DEFAULT_POLE_MARGIN};
use stargeom::{SphereGrid, StarBody};

use crate::error::Result;
use crate::geometry::Geometry;
use crate::schedule::random_directions;

/// Multiple of the observed equality-case residual used as the allowance.
pub const SAFETY_FACTOR: f64 = 10.0;
/// Symmetrization steps of the calibration run.
const STEPS: usize = 6;
const SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    pub geometry: Geometry,
    pub dim: usize,
    pub resolution: usize,
    /// Largest relative deviation observed in the equality case.
    pub residual: f64,
    /// `SAFETY_FACTOR * max(residual, machine epsilon)`.
    pub eps_quad: f64,
}

fn residual<G: PettyGeometry>(body: &G, dim: usize) -> Result<f64> {
    let schedule = random_directions(dim, STEPS, SEED)?;
    let report = verify_petty(body, &schedule, PettyOptions { eps_quad: 0.0, equality_band: 0.0 })?;
    let p0 = report.lhs;
    let steps = report.iterates.iter().map(|r| (r.polar_projection_measure - p0).abs() / p0).fold(0.0, f64::max);
    Ok(report.relative_margin().abs().max(steps))
}

/// Runs the equality case of `geometry` on the grid and derives `eps_quad`.
pub fn calibrate(geometry: Geometry, dim: usize, resolution: usize) -> Result<Calibration> {
    let grid = Arc::new(SphereGrid::new(dim, resolution)?);
    let residual = match geometry {
        Geometry::Euclidean => residual(&EuclideanBody(StarBody::ball(grid, 1.0)?), dim)?,
        Geometry::Spherical => residual(&SphericalBody::cap(grid, 0.6, DEFAULT_POLE_MARGIN)?, dim)?,
        Geometry::Hyperbolic => residual(&HyperbolicBody::ball(grid, 0.4, DEFAULT_DISK_MARGIN)?, dim)?,
    };
    let eps_quad = SAFETY_FACTOR * residual.max(f64::EPSILON);
    log::info!("{geometry} n={dim} resolution {resolution}: equality residual {residual:.3e}, eps_quad {eps_quad:.3e}");
    Ok(Calibration { geometry, dim, resolution, residual, eps_quad })
}
