//! Projection bodies `h_{Pi K}(z) = 1/2 int_{dK} |nu . z|`.
//!
//! The main evaluation is exact for piecewise-monotone boundaries: in the plane
//! `int |nu . z| ds` is the total variation of the coordinate `x . z^perp` along the
//! boundary curve. In three dimensions the boundary is cut by the planes containing
//! `z`; each plane contributes the total variation of `s |s| / 2`, where `s` is the
//! coordinate orthogonal to `z` within the plane.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{GeomError, Result};
use crate::grid::SphereGrid;
use crate::interp::{Interpolation, SphereInterpolant};
use crate::section::periodic_total_variation;
use crate::starbody::{tangent_frame, StarBody};
use crate::Point;

/// Support function of a convex body sampled at grid nodes.
#[derive(Debug, Clone)]
pub struct SupportProfile {
    grid: Arc<SphereGrid>,
    h: Vec<f64>,
}

impl SupportProfile {
    pub fn new(grid: Arc<SphereGrid>, h: Vec<f64>) -> Result<Self> {
        if h.len() != grid.len() {
            return Err(GeomError::SampleCount { expected: grid.len(), got: h.len() });
        }
        for (i, &v) in h.iter().enumerate() {
            if !(v.is_finite() && v > 0.0) {
                return Err(GeomError::NonFinite { node: i, value: v });
            }
        }
        Ok(Self { grid, h })
    }

    pub fn grid(&self) -> &Arc<SphereGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.h
    }

    pub fn max(&self) -> f64 {
        self.h.iter().copied().fold(0.0, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.h.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Interpolated support value at an arbitrary unit direction.
    pub fn value_at(&self, u: &Point) -> f64 {
        SphereInterpolant::new(&self.grid, &self.h, Interpolation::Cubic).eval(u)
    }

    /// Polar body, `rho = 1 / h`.
    pub fn polar_body(&self) -> Result<StarBody> {
        StarBody::new(self.grid.clone(), self.h.iter().map(|h| 1.0 / h).collect())
    }

    /// The body itself, materialised as the polar of its polar.
    pub fn to_body(&self) -> Result<StarBody> {
        self.polar_body()?.polar()
    }

    /// Euclidean volume of the polar body, `(1/n) int h^(-n)`.
    pub fn polar_volume(&self) -> f64 {
        let n = self.grid.dim() as i32;
        let vals: Vec<f64> = self.h.iter().map(|h| h.powi(-n)).collect();
        self.grid.integrate_values(&vals) / n as f64
    }

    /// `max |h - h'|` over nodes.
    pub fn distance(&self, other: &SupportProfile) -> Result<f64> {
        if *self.grid != *other.grid {
            return Err(GeomError::GridMismatch);
        }
        Ok(self.h.iter().zip(&other.h).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
    }
}

impl StarBody {
    /// Projection body by exact total-variation evaluation of the boundary integral.
    pub fn projection_body(&self) -> Result<SupportProfile> {
        let grid = self.grid().clone();
        let mut h = vec![f64::NAN; grid.len()];
        for i in 0..grid.len() {
            if !h[i].is_nan() {
                continue;
            }
            let z = *grid.node(i);
            let v = if self.dim() == 2 { self.projection_support_planar(&z) } else { self.projection_support_spatial(&z) };
            h[i] = v;
            h[grid.antipode(i)] = v;
        }
        SupportProfile::new(grid, h)
    }

    fn projection_support_planar(&self, z: &Point) -> f64 {
        let spline = self.circle_spline().expect("planar body has a circle spline");
        let zp = (-z.y, z.x);
        let grid = self.grid();
        let samples: Vec<f64> =
            grid.nodes().iter().zip(self.samples()).map(|(u, r)| r * (u.x * zp.0 + u.y * zp.1)).collect();
        let f = |a: f64| spline.eval(a) * (a.cos() * zp.0 + a.sin() * zp.1);
        0.5 * periodic_total_variation(f, &samples)
    }

    fn projection_support_spatial(&self, z: &Point) -> f64 {
        let (e1, e2) = tangent_frame(z);
        let planes = self.grid().resolution();
        let m = 2 * self.grid().resolution();
        let mut total = 0.0;
        for p in 0..planes {
            let psi = PI * p as f64 / planes as f64;
            let d = e1 * psi.cos() + e2 * psi.sin();
            let s_of = |a: f64| {
                let (sa, ca) = a.sin_cos();
                self.radial(&(d * ca + z * sa)) * ca
            };
            let g_of = |a: f64| {
                let s = s_of(a);
                0.5 * s * s.abs()
            };
            let samples: Vec<f64> = (0..m).map(|k| g_of(2.0 * PI * k as f64 / m as f64)).collect();
            total += periodic_total_variation(g_of, &samples);
        }
        0.5 * total * PI / planes as f64
    }

    /// Projection body by node quadrature of `1/2 int |nu . z| rho^(n-1) / (u . nu) du`
    /// with finite-difference normals. Independent of the exact evaluation.
    pub fn projection_body_quadrature(&self) -> Result<SupportProfile> {
        let grid = self.grid().clone();
        let n = self.dim() as i32;
        let mut normals = Vec::with_capacity(grid.len());
        let mut area = Vec::with_capacity(grid.len());
        for (i, u) in grid.nodes().iter().enumerate() {
            let nu = self.boundary_normal(u)?;
            area.push(grid.weights()[i] * self.samples()[i].powi(n - 1) / nu.dot(u));
            normals.push(nu);
        }
        let h = grid
            .nodes()
            .iter()
            .map(|z| 0.5 * normals.iter().zip(&area).map(|(nu, a)| a * nu.dot(z).abs()).sum::<f64>())
            .collect();
        SupportProfile::new(grid, h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::unit_ball_volume;

    #[test]
    fn projection_body_of_planar_ball() {
        let g = Arc::new(SphereGrid::new(2, 360).unwrap());
        let b = StarBody::ball(g, 1.5).unwrap();
        let p = b.projection_body().unwrap();
        for h in p.values() {
            assert!((h - 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn projection_body_of_spatial_ball() {
        let g = Arc::new(SphereGrid::new(3, 12).unwrap());
        let b = StarBody::ball(g, 0.8).unwrap();
        let p = b.projection_body().unwrap();
        let expected = unit_ball_volume(2) * 0.64;
        for h in p.values() {
            assert!((h - expected).abs() < 1e-12 * expected, "{h} vs {expected}");
        }
    }

    #[test]
    fn projection_body_of_square_is_width() {
        let g = Arc::new(SphereGrid::new(2, 720).unwrap());
        let s = StarBody::from_fn(g.clone(), |u| 1.0 / u.x.abs().max(u.y.abs())).unwrap();
        let p = s.projection_body().unwrap();
        // Width of [-1, 1]^2 orthogonal to z is 2 (|z_1| + |z_2|).
        for (z, h) in g.nodes().iter().zip(p.values()) {
            let exact = 2.0 * (z.x.abs() + z.y.abs());
            assert!((h - exact).abs() < 1e-2 * exact);
        }
    }

    #[test]
    fn exact_and_quadrature_routes_agree() {
        let g = Arc::new(SphereGrid::new(2, 720).unwrap());
        let e = StarBody::from_fn(g, |u| 1.0 / ((u.x / 1.7).powi(2) + (u.y / 0.9).powi(2)).sqrt()).unwrap();
        let a = e.projection_body().unwrap();
        let b = e.projection_body_quadrature().unwrap();
        assert!(a.distance(&b).unwrap() < 1e-4);
    }

    #[test]
    fn materialised_projection_body_of_ball() {
        let g = Arc::new(SphereGrid::new(2, 256).unwrap());
        let b = StarBody::ball(g, 2.0).unwrap();
        let body = b.projection_body().unwrap().to_body().unwrap();
        for r in body.samples() {
            assert!((r - 4.0).abs() < 1e-12);
        }
    }
}
