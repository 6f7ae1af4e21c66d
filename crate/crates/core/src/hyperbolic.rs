//! Bodies in hyperbolic space, carried by the chart `y = 2x / (1 - |x|^2)` of the
//! Poincare ball. In the chart the volume element is `(1 + |y|^2)^(-1/2) dy` and
//! geodesics through the origin are rays, so star bodies stay star bodies.

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::DVector;

use crate::error::{GeomError, Result};
use crate::grid::SphereGrid;
use crate::numeric::{adaptive_gauss_legendre, bisect, bracket_root, unit_sphere_area, MonotoneProfile, RadialWeight, RADIAL_QUAD_TOL};
use crate::petty::{verify_petty, IsoperimetricGeometry, PettyGeometry, PettyOptions, PettyReport};
use crate::starbody::{boundary_hausdorff, StarBody};
use crate::steiner::SteinerPlan;
use crate::Point;

/// Default Euclidean distance kept between Poincare-ball bodies and the unit sphere.
pub const DEFAULT_DISK_MARGIN: f64 = 0.02;
/// Dilation factors in `(1, 1 + CLAMP]` are treated as `1`.
pub const R_K_CLAMP: f64 = 1e-6;
/// Clamps by more than this are reported as warnings; smaller ones are roundoff.
const CLAMP_WARN: f64 = 1e-12;
const R_K_TOL: f64 = 1e-14;

/// `y = 2x / (1 - |x|^2)` for `|x| < 1`.
pub fn phi(x: &DVector<f64>) -> Result<DVector<f64>> {
    let r2 = x.norm_squared();
    if r2 >= 1.0 {
        return Err(GeomError::OutsideBall);
    }
    Ok(x * (2.0 / (1.0 - r2)))
}

/// `x = y / (1 + sqrt(1 + |y|^2))`.
pub fn phi_inverse(y: &DVector<f64>) -> DVector<f64> {
    y / (1.0 + (1.0 + y.norm_squared()).sqrt())
}

/// Chart radius of a Poincare-ball radius.
pub fn disk_to_chart(r: f64) -> f64 {
    2.0 * r / (1.0 - r * r)
}

/// Poincare-ball radius of a chart radius.
pub fn chart_to_disk(y: f64) -> f64 {
    y / (1.0 + (1.0 + y * y).sqrt())
}

/// Hyperbolic distance between points of the Poincare ball,
/// `arccosh(1 + 2|x - y|^2 / ((1 - |x|^2)(1 - |y|^2)))`.
pub fn poincare_distance(x: &Point, y: &Point) -> Result<f64> {
    let (a, b) = (1.0 - x.norm_squared(), 1.0 - y.norm_squared());
    if a <= 0.0 || b <= 0.0 {
        return Err(GeomError::OutsideBall);
    }
    // cosh d = 1 + 2 sinh^2(d / 2).
    Ok(2.0 * ((x - y).norm_squared() / (a * b)).sqrt().asinh())
}

/// Hyperbolic distance between the points with charts `y1` and `y2`.
pub fn chart_distance(y1: &Point, y2: &Point) -> f64 {
    let to_disk = |y: &Point| y / (1.0 + (1.0 + y.norm_squared()).sqrt());
    let (x1, x2) = (to_disk(y1), to_disk(y2));
    let (a, b) = (1.0 - x1.norm_squared(), 1.0 - x2.norm_squared());
    2.0 * ((x1 - x2).norm_squared() / (a * b)).sqrt().asinh()
}

/// `mu_n` of a chart, `int_{S^(n-1)} int_0^rho r^(n-1) (1 + r^2)^(-1/2) dr du`.
pub fn mu_measure(chart: &StarBody) -> f64 {
    let n = chart.dim();
    let vals: Vec<f64> = chart.samples().iter().map(|&r| RadialWeight::Hyperbolic.cumulative(n, r)).collect();
    chart.grid().integrate_values(&vals)
}

/// Hyperbolic volume from Poincare-ball radii, `2^n int int r^(n-1) (1 - r^2)^(-n) dr du`.
pub fn disk_volume(grid: &SphereGrid, disk_radii: &[f64]) -> f64 {
    let n = grid.dim() as i32;
    let scale = 2f64.powi(n);
    let vals: Vec<f64> = disk_radii
        .iter()
        .map(|&big_r| {
            adaptive_gauss_legendre(|r| r.powi(n - 1) / (1.0 - r * r).powi(n), 0.0, big_r, RADIAL_QUAD_TOL) * scale
        })
        .collect();
    grid.integrate_values(&vals)
}

/// Volume of the hyperbolic ball with chart radius `y`.
pub fn ball_measure(n: usize, chart_radius: f64) -> f64 {
    unit_sphere_area(n) * RadialWeight::Hyperbolic.cumulative(n, chart_radius)
}

/// Body in hyperbolic space, stored as its chart image.
#[derive(Debug, Clone)]
pub struct HyperbolicBody {
    chart: StarBody,
    measure: f64,
    delta_disk: f64,
}

/// A hyperbolic Steiner symmetral with its dilation factor.
#[derive(Debug, Clone)]
pub struct HyperbolicSteiner {
    pub body: HyperbolicBody,
    pub r_k: f64,
    pub clamped: bool,
}

impl HyperbolicBody {
    /// Body from chart samples.
    pub fn new(chart: StarBody, delta_disk: f64) -> Result<Self> {
        let limit = 1.0 - delta_disk;
        let radius = chart_to_disk(chart.max_radius());
        if radius > limit {
            return Err(GeomError::DiskMargin { radius, limit });
        }
        let measure = mu_measure(&chart);
        Ok(Self { chart, measure, delta_disk })
    }

    /// Body from Poincare-ball radial samples.
    pub fn from_disk(grid: Arc<SphereGrid>, disk_radii: &[f64], delta_disk: f64) -> Result<Self> {
        let limit = 1.0 - delta_disk;
        for (i, &r) in disk_radii.iter().enumerate() {
            if !r.is_finite() {
                return Err(GeomError::NonFinite { node: i, value: r });
            }
            if r > limit {
                return Err(GeomError::DiskMargin { radius: r, limit });
            }
        }
        Self::new(StarBody::new(grid, disk_radii.iter().map(|&r| disk_to_chart(r)).collect())?, delta_disk)
    }

    /// Geodesic ball about the origin with Poincare-ball radius `disk_radius`.
    pub fn ball(grid: Arc<SphereGrid>, disk_radius: f64, delta_disk: f64) -> Result<Self> {
        let n = grid.len();
        Self::from_disk(grid, &vec![disk_radius; n], delta_disk)
    }

    pub fn chart(&self) -> &StarBody {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn delta_disk(&self) -> f64 {
        self.delta_disk
    }

    pub fn measure(&self) -> f64 {
        self.measure
    }

    /// Poincare-ball radial samples.
    pub fn disk_radii(&self) -> Vec<f64> {
        self.chart.samples().iter().map(|&y| chart_to_disk(y)).collect()
    }

    fn with_chart(&self, chart: StarBody) -> Result<Self> {
        Self::new(chart, self.delta_disk)
    }

    /// Hyperbolic polar body; its chart is the Euclidean polar of the chart.
    pub fn polar(&self) -> Result<HyperbolicBody> {
        self.with_chart(self.chart.polar()?)
    }

    /// Hyperbolic projection body; its chart is `Pi` of the chart.
    pub fn projection_body(&self) -> Result<HyperbolicBody> {
        self.with_chart(self.chart.projection_body()?.to_body()?)
    }

    /// `mu_n` of the polar projection body from the support of `Pi` of the chart.
    pub fn polar_projection_measure(&self) -> Result<f64> {
        let profile = self.chart.projection_body()?;
        let f = MonotoneProfile::hyperbolic(self.dim());
        let vals: Vec<f64> = profile.values().iter().map(|&h| f.eval(h)).collect();
        Ok(profile.grid().integrate_values(&vals))
    }

    /// Hyperbolic Steiner symmetral: the Euclidean symmetral of the chart, dilated
    /// by the factor `r_K` that restores `mu_n`.
    pub fn steiner(&self, u: &Point) -> Result<HyperbolicSteiner> {
        let symmetral = SteinerPlan::new(&self.chart, u)?.radii(1.0);
        let n = self.dim();
        let weights = self.chart.grid().weights();
        let target = self.measure;
        let residual = |r: f64| {
            let m: f64 = symmetral
                .iter()
                .zip(weights)
                .map(|(&rho, w)| w * RadialWeight::Hyperbolic.cumulative(n, r * rho))
                .sum();
            m - target
        };
        let hi = 1.0 + R_K_CLAMP;
        let at_hi = residual(hi);
        if at_hi < 0.0 {
            return Err(GeomError::Bracket { ratio: (at_hi + target) / target });
        }
        let at_lo = residual(R_K_CLAMP);
        if at_lo > 0.0 {
            return Err(GeomError::NoSignChange { lo: R_K_CLAMP, hi });
        }
        let mut r_k = if at_hi == 0.0 { hi } else { bracket_root(residual, R_K_CLAMP, hi, at_lo, at_hi, R_K_TOL) };
        let mut clamped = false;
        if r_k > 1.0 {
            if r_k - 1.0 > CLAMP_WARN {
                log::warn!("hyperbolic dilation factor {r_k} exceeds 1; clamping");
            } else {
                log::debug!("hyperbolic dilation factor {r_k} exceeds 1 by roundoff; clamping");
            }
            r_k = 1.0;
            clamped = true;
        }
        let chart = self.chart.with_samples(symmetral.iter().map(|y| r_k * y).collect())?;
        Ok(HyperbolicSteiner { body: self.with_chart(chart)?, r_k, clamped })
    }

    /// Geodesic ball about the origin with the same volume.
    pub fn rearrangement(&self) -> Result<HyperbolicBody> {
        let n = self.dim();
        let target = self.measure;
        let mut hi = self.chart.max_radius().max(1.0);
        while ball_measure(n, hi) < target {
            hi *= 2.0;
        }
        let y = bisect(|y| ball_measure(n, y) - target, 0.0, hi, 1e-15 * hi)?;
        self.with_chart(StarBody::ball(self.chart.grid().clone(), y)?)
    }

    /// Hyperbolic Hausdorff distance between boundary samples.
    pub fn hausdorff_distance(&self, other: &HyperbolicBody) -> Result<f64> {
        boundary_hausdorff(&self.chart, &other.chart, chart_distance)
    }
}

impl PettyGeometry for HyperbolicBody {
    fn measure(&self) -> f64 {
        self.measure
    }

    fn polar_projection_measure(&self) -> Result<f64> {
        HyperbolicBody::polar_projection_measure(self)
    }

    fn symmetrize(&self, u: &Point) -> Result<(Self, f64)> {
        let s = self.steiner(u)?;
        Ok((s.body, s.r_k))
    }

    fn rearrangement(&self) -> Result<Self> {
        HyperbolicBody::rearrangement(self)
    }

    fn distance(&self, other: &Self) -> Result<f64> {
        self.hausdorff_distance(other)
    }

    fn chart(&self) -> &StarBody {
        &self.chart
    }
}

impl IsoperimetricGeometry for HyperbolicBody {
    fn profile(&self) -> MonotoneProfile {
        MonotoneProfile::hyperbolic(self.dim())
    }
}

pub fn verify_hyperbolic_petty(body: &HyperbolicBody, schedule: &[Point], options: PettyOptions) -> Result<PettyReport> {
    verify_petty(body, schedule, options)
}

/// Hyperbolic area of the disk of Poincare radius `r` in the plane.
pub fn planar_ball_area(r: f64) -> f64 {
    4.0 * PI * r * r / (1.0 - r * r)
}
