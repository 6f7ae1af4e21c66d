//! Bodies in the open upper hemisphere `S^n_+`, carried by their gnomonic chart.
//!
//! The gnomonic map `g(v) = v / v_(n+1) - e_(n+1)` sends great spheres to affine
//! hyperplanes; for a body `K` its chart `g(K)` satisfies `tan rho_s = rho_{g(K)}`
//! and `tan h_s = h_{g(K)}`.

use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

use nalgebra::DVector;

use crate::error::{GeomError, Result};
use crate::grid::SphereGrid;
use crate::numeric::{bisect, bracket_root, spherical_angle_cumulative, unit_sphere_area, MonotoneProfile, RadialWeight};
use crate::petty::{verify_petty, IsoperimetricGeometry, PettyGeometry, PettyOptions, PettyReport};
use crate::starbody::{boundary_hausdorff, StarBody};
use crate::steiner::SteinerPlan;
use crate::Point;

/// Default angular distance kept between bodies and the equator.
pub const DEFAULT_POLE_MARGIN: f64 = 0.05;
/// Correction factors in `(1, 1 + CLAMP]` are treated as `1`.
pub const R_K_CLAMP: f64 = 1e-6;
/// Clamps by more than this are reported as warnings; smaller ones are roundoff.
const CLAMP_WARN: f64 = 1e-12;
/// Bracket width on the correction factor.
pub const R_K_TOL: f64 = 1e-14;

/// Gnomonic chart of a point `v` on `S^n` with `v_(n+1) > 0`; returns a point of `R^n`.
pub fn gnomonic(v: &DVector<f64>) -> Result<DVector<f64>> {
    let n = v.len() - 1;
    let last = v[n];
    if !(last > 0.0) {
        return Err(GeomError::BelowEquator);
    }
    Ok(v.rows(0, n) / last)
}

/// Inverse gnomonic map `x -> (x + e_(n+1)) / |x + e_(n+1)|`.
pub fn gnomonic_inverse(x: &DVector<f64>) -> DVector<f64> {
    let n = x.len();
    let mut v = DVector::zeros(n + 1);
    v.rows_mut(0, n).copy_from(x);
    v[n] = 1.0;
    let norm = v.norm();
    v / norm
}

/// Geodesic distance on the sphere between the points with charts `x` and `y`.
pub fn chart_geodesic_distance(x: &Point, y: &Point) -> f64 {
    let lift = |p: &Point| {
        let s = (1.0 + p.norm_squared()).sqrt();
        (p / s, 1.0 / s)
    };
    let (a, a0) = lift(x);
    let (b, b0) = lift(y);
    let chord = ((a - b).norm_squared() + (a0 - b0).powi(2)).sqrt();
    2.0 * (0.5 * chord).min(1.0).asin()
}

/// Spherical measure of a chart, `int (1 + |x|^2)^(-(n+1)/2) dx`.
pub fn spherical_measure(chart: &StarBody) -> f64 {
    let n = chart.dim();
    let vals: Vec<f64> = chart.samples().iter().map(|&r| RadialWeight::Spherical.cumulative(n, r)).collect();
    chart.grid().integrate_values(&vals)
}

/// Area of the cap `B_s(alpha)` in `S^n`.
pub fn cap_measure(n: usize, alpha: f64) -> f64 {
    unit_sphere_area(n) * spherical_angle_cumulative(n, alpha)
}

/// Body in `S^n_+` given by its gnomonic chart.
#[derive(Debug, Clone)]
pub struct SphericalBody {
    chart: StarBody,
    measure: f64,
    delta_pole: f64,
}

/// A spherical Steiner symmetral with its chord correction factor.
#[derive(Debug, Clone)]
pub struct SphericalSteiner {
    pub body: SphericalBody,
    pub r_k: f64,
    /// Whether `r_k` fell in `(1, 1 + R_K_CLAMP]` and was set to `1`.
    pub clamped: bool,
}

impl SphericalBody {
    pub fn new(chart: StarBody, delta_pole: f64) -> Result<Self> {
        let limit = (FRAC_PI_2 - delta_pole).tan();
        let radius = chart.max_radius();
        if radius > limit {
            return Err(GeomError::PoleMargin { radius, limit });
        }
        let measure = spherical_measure(&chart);
        Ok(Self { chart, measure, delta_pole })
    }

    /// Cap of geodesic radius `alpha` about the north pole.
    pub fn cap(grid: Arc<SphereGrid>, alpha: f64, delta_pole: f64) -> Result<Self> {
        Self::new(StarBody::ball(grid, alpha.tan())?, delta_pole)
    }

    /// Body with the given spherical radial samples (geodesic radii from the pole).
    pub fn from_geodesic_radii(grid: Arc<SphereGrid>, radii: &[f64], delta_pole: f64) -> Result<Self> {
        for (i, &r) in radii.iter().enumerate() {
            if !r.is_finite() {
                return Err(GeomError::NonFinite { node: i, value: r });
            }
            if !(r > 0.0 && r < FRAC_PI_2) {
                return Err(GeomError::PoleMargin { radius: r, limit: FRAC_PI_2 - delta_pole });
            }
        }
        Self::new(StarBody::new(grid, radii.iter().map(|r| r.tan()).collect())?, delta_pole)
    }

    pub fn chart(&self) -> &StarBody {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn delta_pole(&self) -> f64 {
        self.delta_pole
    }

    /// `H^n(K)`, cached at construction.
    pub fn measure(&self) -> f64 {
        self.measure
    }

    /// Spherical radial function `rho_s = arctan rho_{g(K)}`.
    pub fn spherical_radial(&self, u: &Point) -> f64 {
        self.chart.radial(u).atan()
    }

    /// Spherical support function `h_s = arctan h_{g(K)}`.
    pub fn spherical_support(&self, u: &Point) -> f64 {
        self.chart.support(u).atan()
    }

    fn with_chart(&self, chart: StarBody) -> Result<Self> {
        Self::new(chart, self.delta_pole)
    }

    /// Reflected polar `-K°`, whose chart is `-(g(K))*`. Fails when the chart
    /// reaches the margin or the polar would leave it.
    pub fn polar(&self) -> Result<SphericalBody> {
        let grid = self.chart.grid().clone();
        let limit = (FRAC_PI_2 - self.delta_pole).tan();
        let support = self.chart.support_samples();
        let max = support.iter().copied().fold(0.0, f64::max);
        if max >= limit {
            return Err(GeomError::PoleMargin { radius: max, limit });
        }
        let min = support.iter().copied().fold(f64::INFINITY, f64::min);
        let polar_limit = self.delta_pole.tan();
        if min <= polar_limit {
            return Err(GeomError::PolarMargin { support: min, limit: polar_limit });
        }
        let rho = (0..grid.len()).map(|i| 1.0 / support[grid.antipode(i)]).collect();
        self.with_chart(StarBody::new(grid, rho)?)
    }

    /// Support profile of `Pi g(K)`, i.e. `tan h_s(Pi_S K, .)`.
    fn projection_support(&self) -> Result<crate::SupportProfile> {
        let profile = self.chart.projection_body()?;
        let limit = (FRAC_PI_2 - self.delta_pole).tan();
        if profile.max() >= limit {
            return Err(GeomError::PoleMargin { radius: profile.max(), limit });
        }
        Ok(profile)
    }

    /// Spherical projection body `g^-1(Pi g(K))`.
    pub fn projection_body(&self) -> Result<SphericalBody> {
        self.with_chart(self.projection_support()?.to_body()?)
    }

    /// `H^n` of the polar projection body, `int F(h_{Pi g(K)})` with the spherical profile `F`.
    pub fn polar_projection_measure(&self) -> Result<f64> {
        let profile = self.projection_support()?;
        let f = MonotoneProfile::spherical(self.dim());
        let vals: Vec<f64> = profile.values().iter().map(|&h| f.eval(h)).collect();
        Ok(profile.grid().integrate_values(&vals))
    }

    /// Spherical Steiner symmetral: every chord of the Euclidean symmetral of the
    /// chart along `u` is scaled by the factor `r_K` that restores the measure.
    pub fn steiner(&self, u: &Point) -> Result<SphericalSteiner> {
        let plan = SteinerPlan::new(&self.chart, u)?;
        let n = self.dim();
        let weights = self.chart.grid().weights().to_vec();
        let target = self.measure;
        let residual = |r: f64| {
            let m: f64 = plan
                .radii(r)
                .iter()
                .zip(&weights)
                .map(|(&rho, w)| w * RadialWeight::Spherical.cumulative(n, rho))
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
                log::warn!("spherical correction factor {r_k} exceeds 1; clamping");
            } else {
                log::debug!("spherical correction factor {r_k} exceeds 1 by roundoff; clamping");
            }
            r_k = 1.0;
            clamped = true;
        }
        let chart = self.chart.with_samples(plan.radii(r_k))?;
        Ok(SphericalSteiner { body: self.with_chart(chart)?, r_k, clamped })
    }

    /// Centered cap of the same measure.
    pub fn rearrangement(&self) -> Result<SphericalBody> {
        let n = self.dim();
        let hemisphere = cap_measure(n, FRAC_PI_2);
        if self.measure >= hemisphere {
            return Err(GeomError::OutOfRange { value: self.measure, lo: 0.0, hi: hemisphere });
        }
        let alpha = bisect(|a| cap_measure(n, a) - self.measure, 0.0, FRAC_PI_2, 1e-15)?;
        Self::cap(self.chart.grid().clone(), alpha, self.delta_pole)
    }

    /// Spherical Hausdorff distance between boundary samples.
    pub fn hausdorff_distance(&self, other: &SphericalBody) -> Result<f64> {
        boundary_hausdorff(&self.chart, &other.chart, chart_geodesic_distance)
    }
}

impl PettyGeometry for SphericalBody {
    fn measure(&self) -> f64 {
        self.measure
    }

    fn polar_projection_measure(&self) -> Result<f64> {
        SphericalBody::polar_projection_measure(self)
    }

    fn symmetrize(&self, u: &Point) -> Result<(Self, f64)> {
        let s = self.steiner(u)?;
        Ok((s.body, s.r_k))
    }

    fn rearrangement(&self) -> Result<Self> {
        SphericalBody::rearrangement(self)
    }

    fn distance(&self, other: &Self) -> Result<f64> {
        self.hausdorff_distance(other)
    }

    fn chart(&self) -> &StarBody {
        &self.chart
    }
}

impl IsoperimetricGeometry for SphericalBody {
    fn profile(&self) -> MonotoneProfile {
        MonotoneProfile::spherical(self.dim())
    }
}

/// Compares `H^n(Pi°K)` with the cap value and follows the symmetrization schedule.
pub fn verify_spherical_petty(body: &SphericalBody, schedule: &[Point], options: PettyOptions) -> Result<PettyReport> {
    verify_petty(body, schedule, options)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn grid2() -> Arc<SphereGrid> {
        Arc::new(SphereGrid::new(2, 720).unwrap())
    }

    #[test]
    fn gnomonic_round_trip_and_values() {
        let pole = DVector::from_vec(vec![0.0, 0.0, 1.0]);
        assert_eq!(gnomonic(&pole).unwrap(), DVector::from_vec(vec![0.0, 0.0]));
        let a = 0.4f64;
        let v = DVector::from_vec(vec![a.sin(), 0.0, a.cos()]);
        let x = gnomonic(&v).unwrap();
        assert!((x[0] - a.tan()).abs() < 1e-15 && x[1] == 0.0);
        assert!((gnomonic_inverse(&x) - v).norm() < 1e-15);
        assert_eq!(gnomonic(&DVector::from_vec(vec![1.0, 0.0, 0.0])), Err(GeomError::BelowEquator));
    }

    #[test]
    fn cap_measures() {
        for alpha in [0.2, 0.5, PI / 3.0, 1.2] {
            let cap = SphericalBody::cap(grid2(), alpha, DEFAULT_POLE_MARGIN).unwrap();
            assert_relative_eq!(cap.measure(), 2.0 * PI * (1.0 - alpha.cos()), max_relative = 1e-12);
        }
        let g3 = Arc::new(SphereGrid::new(3, 16).unwrap());
        let cap = SphericalBody::cap(g3, 0.7, DEFAULT_POLE_MARGIN).unwrap();
        assert_relative_eq!(cap.measure(), cap_measure(3, 0.7), max_relative = 1e-12);
    }

    #[test]
    fn polar_of_caps() {
        let cap = SphericalBody::cap(grid2(), 0.4, DEFAULT_POLE_MARGIN).unwrap();
        let p = cap.polar().unwrap();
        for r in p.chart().samples() {
            assert!((r.atan() - (FRAC_PI_2 - 0.4)).abs() < 1e-12);
        }
        let pp = p.polar().unwrap();
        assert!(pp.chart().radial_distance(cap.chart()).unwrap() < 1e-10);
    }

    #[test]
    fn projection_body_of_cap() {
        let cap = SphericalBody::cap(grid2(), PI / 4.0, DEFAULT_POLE_MARGIN).unwrap();
        let pi = cap.projection_body().unwrap();
        for r in pi.chart().samples() {
            assert!((r.atan() - 2f64.atan()).abs() < 1e-12);
        }
        let v = cap.polar_projection_measure().unwrap();
        assert_relative_eq!(v, 2.0 * PI * (1.0 - 2.0 / 5f64.sqrt()), max_relative = 1e-12);
    }

    #[test]
    fn steiner_of_cap_and_rotated_ellipse() {
        let cap = SphericalBody::cap(grid2(), 0.5, DEFAULT_POLE_MARGIN).unwrap();
        let s = cap.steiner(&Point::new(0.6, 0.8, 0.0)).unwrap();
        assert!((s.r_k - 1.0).abs() < 1e-12);
        assert!(s.body.chart().radial_distance(cap.chart()).unwrap() < 1e-12);

        let (a, b, t) = (1.2f64, 0.5f64, PI / 6.0);
        let chart = StarBody::from_fn(grid2(), |u| {
            let x = t.cos() * u.x + t.sin() * u.y;
            let y = -t.sin() * u.x + t.cos() * u.y;
            1.0 / ((x / a).powi(2) + (y / b).powi(2)).sqrt()
        })
        .unwrap();
        let k = SphericalBody::new(chart, DEFAULT_POLE_MARGIN).unwrap();
        let s = k.steiner(&Point::new(0.0, 1.0, 0.0)).unwrap();
        assert!(s.r_k < 1.0);
        assert!((s.body.measure() - k.measure()).abs() / k.measure() < 1e-8);
    }

    #[test]
    fn rearrangement_matches_measure() {
        let chart = StarBody::from_fn(grid2(), |u| 0.8 + 0.1 * u.x).unwrap();
        let k = SphericalBody::new(chart, DEFAULT_POLE_MARGIN).unwrap();
        let star = k.rearrangement().unwrap();
        assert_relative_eq!(star.measure(), k.measure(), max_relative = 1e-12);
        let half = SphericalBody::cap(grid2(), PI / 3.0, DEFAULT_POLE_MARGIN).unwrap();
        let r = half.rearrangement().unwrap();
        assert!((r.spherical_radial(&Point::x()) - PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn margin_violations() {
        assert!(matches!(SphericalBody::cap(grid2(), 1.55, DEFAULT_POLE_MARGIN), Err(GeomError::PoleMargin { .. })));
        let big = SphericalBody::cap(grid2(), 1.5, DEFAULT_POLE_MARGIN).unwrap();
        assert!(matches!(big.projection_body(), Err(GeomError::PoleMargin { .. })));
    }
}
