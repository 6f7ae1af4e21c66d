//! Interpolation of node samples on the circle and the sphere.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::grid::SphereGrid;
use crate::Point;

const TWO_PI: f64 = 2.0 * PI;

/// Interpolation order used between grid nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Interpolation {
    Linear,
    #[default]
    Cubic,
}

/// Uniform periodic interpolant on `[0, 2 pi)`: a periodic cubic spline, or
/// piecewise-linear when built with [`Interpolation::Linear`].
#[derive(Debug, Clone)]
pub struct PeriodicSpline {
    y: Vec<f64>,
    m: Vec<f64>,
    h: f64,
}

impl PeriodicSpline {
    pub fn new(values: Vec<f64>, interp: Interpolation) -> Self {
        let n = values.len();
        assert!(n >= 3, "periodic spline needs at least three samples");
        let h = TWO_PI / n as f64;
        let m = match interp {
            Interpolation::Linear => vec![0.0; n],
            Interpolation::Cubic => {
                let rhs: Vec<f64> = (0..n)
                    .map(|i| 6.0 * (values[(i + 1) % n] - 2.0 * values[i] + values[(i + n - 1) % n]) / (h * h))
                    .collect();
                solve_cyclic_141(&rhs)
            }
        };
        Self { y: values, m, h }
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn samples(&self) -> &[f64] {
        &self.y
    }

    fn locate(&self, x: f64) -> (usize, usize, f64) {
        let n = self.y.len();
        let s = x.rem_euclid(TWO_PI) / self.h;
        let i = (s.floor() as usize).min(n - 1);
        let t = (s - i as f64).clamp(0.0, 1.0);
        (i, (i + 1) % n, t)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let (i, j, t) = self.locate(x);
        let u = 1.0 - t;
        let h2 = self.h * self.h / 6.0;
        u * self.y[i] + t * self.y[j] + h2 * ((u * u * u - u) * self.m[i] + (t * t * t - t) * self.m[j])
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let (i, j, t) = self.locate(x);
        let u = 1.0 - t;
        (self.y[j] - self.y[i]) / self.h + self.h / 6.0 * (-(3.0 * u * u - 1.0) * self.m[i] + (3.0 * t * t - 1.0) * self.m[j])
    }
}

/// Solves the cyclic system `x[i-1] + 4 x[i] + x[i+1] = rhs[i]` by Sherman-Morrison.
fn solve_cyclic_141(rhs: &[f64]) -> Vec<f64> {
    let n = rhs.len();
    let (a, b, c) = (1.0, 4.0, 1.0);
    let gamma = -b;
    let mut diag = vec![b; n];
    diag[0] = b - gamma;
    diag[n - 1] = b - a * c / gamma;
    let x = thomas(a, &diag, c, rhs);
    let mut u = vec![0.0; n];
    u[0] = gamma;
    u[n - 1] = c;
    let z = thomas(a, &diag, c, &u);
    let fact = (x[0] + a * x[n - 1] / gamma) / (1.0 + z[0] + a * z[n - 1] / gamma);
    x.iter().zip(&z).map(|(x, z)| x - fact * z).collect()
}

fn thomas(a: f64, diag: &[f64], c: f64, rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut cp = vec![0.0; n];
    let mut dp = vec![0.0; n];
    cp[0] = c / diag[0];
    dp[0] = rhs[0] / diag[0];
    for i in 1..n {
        let m = diag[i] - a * cp[i - 1];
        cp[i] = c / m;
        dp[i] = (rhs[i] - a * dp[i - 1]) / m;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = dp[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = dp[i] - cp[i] * x[i + 1];
    }
    x
}

/// Interpolant of node values over a whole grid.
#[derive(Debug, Clone)]
pub enum SphereInterpolant {
    Circle(PeriodicSpline),
    /// One periodic spline per latitude ring, blended across rings by
    /// four-point Lagrange interpolation in the polar angle.
    Sphere { rings: Vec<PeriodicSpline>, polar: Vec<f64>, cubic: bool },
}

impl SphereInterpolant {
    pub fn new(grid: &SphereGrid, values: &[f64], interp: Interpolation) -> Self {
        if grid.dim() == 2 {
            return SphereInterpolant::Circle(PeriodicSpline::new(values.to_vec(), interp));
        }
        let n_lon = grid.ring_len();
        let rings = values.chunks(n_lon).map(|c| PeriodicSpline::new(c.to_vec(), interp)).collect();
        SphereInterpolant::Sphere { rings, polar: grid.polar_angles().to_vec(), cubic: interp == Interpolation::Cubic }
    }

    /// Value at a unit direction.
    pub fn eval(&self, u: &Point) -> f64 {
        match self {
            SphereInterpolant::Circle(s) => s.eval(u.y.atan2(u.x)),
            SphereInterpolant::Sphere { .. } => {
                let theta = u.z.clamp(-1.0, 1.0).acos();
                let phi = u.y.atan2(u.x);
                self.eval_angles(theta, phi)
            }
        }
    }

    /// Value at polar angle `theta` and longitude `phi` (three dimensions only).
    pub fn eval_angles(&self, theta: f64, phi: f64) -> f64 {
        let SphereInterpolant::Sphere { rings, polar, cubic } = self else {
            unreachable!("eval_angles on a circle interpolant")
        };
        let n = polar.len() as isize;
        // Extended ring sequence continues across the poles on the opposite meridian.
        let ext = |idx: isize| -> (f64, f64) {
            if idx < 0 {
                let k = (-1 - idx) as usize;
                (-polar[k], rings[k].eval(phi + PI))
            } else if idx >= n {
                let k = (2 * n - 1 - idx) as usize;
                (TWO_PI - polar[k], rings[k].eval(phi + PI))
            } else {
                let k = idx as usize;
                (polar[k], rings[k].eval(phi))
            }
        };
        // First ring with polar angle above theta, in extended indexing.
        let upper = polar.partition_point(|&p| p <= theta) as isize;
        let j = upper - 1;
        if *cubic {
            let pts = [ext(j - 1), ext(j), ext(j + 1), ext(j + 2)];
            lagrange4(&pts, theta)
        } else {
            let (t0, v0) = ext(j);
            let (t1, v1) = ext(j + 1);
            let s = (theta - t0) / (t1 - t0);
            v0 + s * (v1 - v0)
        }
    }
}

/// Lagrange interpolation through four points.
pub(crate) fn lagrange4(pts: &[(f64, f64); 4], x: f64) -> f64 {
    let mut sum = 0.0;
    for i in 0..4 {
        let mut l = 1.0;
        for j in 0..4 {
            if i != j {
                l *= (x - pts[j].0) / (pts[i].0 - pts[j].0);
            }
        }
        sum += l * pts[i].1;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spline_reproduces_nodes_and_trig() {
        let n = 64;
        let vals: Vec<f64> = (0..n).map(|k| (3.0 * TWO_PI * k as f64 / n as f64).sin() + 2.0).collect();
        let s = PeriodicSpline::new(vals.clone(), Interpolation::Cubic);
        for (k, v) in vals.iter().enumerate() {
            assert!((s.eval(TWO_PI * k as f64 / n as f64) - v).abs() < 1e-13);
        }
        for x in [0.1f64, 1.7, 4.0, 6.2, -0.3] {
            let exact = (3.0 * x).sin() + 2.0;
            assert!((s.eval(x) - exact).abs() < 1e-4, "x={x}");
            assert!((s.derivative(x) - 3.0 * (3.0 * x).cos()).abs() < 5e-3);
        }
    }

    #[test]
    fn linear_interpolation_between_nodes() {
        let s = PeriodicSpline::new(vec![0.0, 1.0, 0.0, 1.0], Interpolation::Linear);
        assert!((s.eval(PI / 4.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn sphere_interpolant_is_accurate() {
        let g = SphereGrid::new(3, 24).unwrap();
        let f = |u: &Point| 1.0 + 0.3 * u.x * u.z + 0.2 * u.y * u.y + 0.1 * u.z;
        let vals: Vec<f64> = g.nodes().iter().map(f).collect();
        let it = SphereInterpolant::new(&g, &vals, Interpolation::Cubic);
        for u in [Point::new(0.0, 0.0, 1.0), Point::new(0.3, -0.2, -0.93), Point::new(0.6, 0.8, 0.0), Point::new(0.01, 0.02, -0.9997)] {
            let u = u.normalize();
            assert!((it.eval(&u) - f(&u)).abs() < 1e-4, "{u:?}");
        }
    }
}
