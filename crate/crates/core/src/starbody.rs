//! Star bodies sampled by their radial function on a sphere grid.

use std::sync::Arc;

use crate::error::{GeomError, Result};
use crate::grid::SphereGrid;
use crate::interp::{Interpolation, PeriodicSpline, SphereInterpolant};
use crate::numeric::{bisect, brent_max, unit_ball_volume};
use crate::Point;

/// Normals whose one-sided estimates differ by more than this angle mark a corner.
const CORNER_ANGLE: f64 = 0.1;
/// Nodes with `u . nu` at or below this value are excluded from perimeter sums.
const MIN_RADIAL_COSINE: f64 = 1e-6;
/// Multiplier on the Lipschitz bound allowed between neighbouring nodes.
const LIPSCHITZ_SLACK: f64 = 2.0;

/// A body star-shaped with respect to a ball of radius `inner_radius` about the origin.
#[derive(Debug, Clone)]
pub struct StarBody {
    grid: Arc<SphereGrid>,
    rho: Vec<f64>,
    inner_radius: f64,
    interp: Interpolation,
    interpolant: SphereInterpolant,
}

/// Perimeter together with the nodes that needed special handling.
#[derive(Debug, Clone, PartialEq)]
pub struct PerimeterReport {
    pub value: f64,
    pub corner_nodes: Vec<usize>,
    pub excluded_nodes: Vec<usize>,
}

/// Intersection of a line with a body, as disjoint parameter intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSlice {
    pub intervals: Vec<(f64, f64)>,
}

impl IntervalSlice {
    pub fn length(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }
}

/// Orthonormal pair spanning the tangent plane at `u`.
pub(crate) fn tangent_frame(u: &Point) -> (Point, Point) {
    let a = if u.x.abs() <= u.y.abs() && u.x.abs() <= u.z.abs() {
        Point::x()
    } else if u.y.abs() <= u.z.abs() {
        Point::y()
    } else {
        Point::z()
    };
    let t1 = a.cross(u).normalize();
    let t2 = u.cross(&t1);
    (t1, t2)
}

impl StarBody {
    /// Body with the given node samples; the inner radius defaults to the smallest sample.
    pub fn new(grid: Arc<SphereGrid>, rho: Vec<f64>) -> Result<Self> {
        let inner = rho.iter().copied().fold(f64::INFINITY, f64::min);
        Self::with_options(grid, rho, inner, Interpolation::Cubic)
    }

    pub fn with_options(grid: Arc<SphereGrid>, rho: Vec<f64>, inner_radius: f64, interp: Interpolation) -> Result<Self> {
        if rho.len() != grid.len() {
            return Err(GeomError::SampleCount { expected: grid.len(), got: rho.len() });
        }
        for (i, &r) in rho.iter().enumerate() {
            if !r.is_finite() || r <= 0.0 {
                return Err(GeomError::NonFinite { node: i, value: r });
            }
        }
        if !(inner_radius > 0.0 && inner_radius.is_finite()) {
            return Err(GeomError::NonFinite { node: 0, value: inner_radius });
        }
        for (i, &r) in rho.iter().enumerate() {
            if r < inner_radius * (1.0 - 1e-12) {
                return Err(GeomError::BelowInnerRadius { node: i, value: r, inner: inner_radius });
            }
        }
        let rmax = rho.iter().copied().fold(0.0, f64::max);
        let slope = ((rmax / inner_radius).powi(2) - 1.0).max(0.0).sqrt();
        for (a, b, dist) in grid.neighbour_pairs() {
            let jump = (rho[a] - rho[b]).abs() / rho[a].min(rho[b]);
            // The chord bound |rho'| <= rho sqrt(rho^2 / r^2 - 1) integrated over one spacing.
            let budget = LIPSCHITZ_SLACK * dist * slope * (1.0 + dist * slope) + 1e-9;
            if jump > budget {
                return Err(GeomError::LipschitzBudget { a, b, jump, budget });
            }
        }
        let interpolant = SphereInterpolant::new(&grid, &rho, interp);
        Ok(Self { grid, rho, inner_radius, interp, interpolant })
    }

    /// Samples `f` at the grid nodes.
    pub fn from_fn<F: Fn(&Point) -> f64>(grid: Arc<SphereGrid>, f: F) -> Result<Self> {
        let rho = grid.nodes().iter().map(f).collect();
        Self::new(grid, rho)
    }

    /// Centered Euclidean ball.
    pub fn ball(grid: Arc<SphereGrid>, radius: f64) -> Result<Self> {
        let n = grid.len();
        Self::new(grid, vec![radius; n])
    }

    /// Same grid and interpolation with new samples.
    pub fn with_samples(&self, rho: Vec<f64>) -> Result<Self> {
        Self::with_options(self.grid.clone(), rho.clone(), rho.iter().copied().fold(f64::INFINITY, f64::min), self.interp)
    }

    pub fn grid(&self) -> &Arc<SphereGrid> {
        &self.grid
    }

    pub fn dim(&self) -> usize {
        self.grid.dim()
    }

    pub fn samples(&self) -> &[f64] {
        &self.rho
    }

    pub fn inner_radius(&self) -> f64 {
        self.inner_radius
    }

    pub fn interpolation(&self) -> Interpolation {
        self.interp
    }

    pub fn max_radius(&self) -> f64 {
        self.rho.iter().copied().fold(0.0, f64::max)
    }

    pub fn min_radius(&self) -> f64 {
        self.rho.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub(crate) fn circle_spline(&self) -> Option<&PeriodicSpline> {
        match &self.interpolant {
            SphereInterpolant::Circle(s) => Some(s),
            SphereInterpolant::Sphere { .. } => None,
        }
    }

    /// Interpolated radial function at a unit direction.
    pub fn radial(&self, u: &Point) -> f64 {
        self.interpolant.eval(u)
    }

    /// Radial function extended 1-homogeneously of degree -1 to nonzero vectors.
    pub fn radial_at(&self, x: &Point) -> f64 {
        let r = x.norm();
        self.radial(&(x / r)) / r
    }

    pub fn membership(&self, x: &Point) -> bool {
        let r = x.norm();
        r == 0.0 || r <= self.radial(&(x / r))
    }

    /// Euclidean volume `(1/n) int rho^n`.
    pub fn volume(&self) -> f64 {
        let n = self.dim() as i32;
        self.grid.integrate_values(&self.rho.iter().map(|r| r.powi(n)).collect::<Vec<_>>()) / n as f64
    }

    /// Directional derivative of the radial function along the great circle
    /// `cos(s) u + sin(s) t`, by a central (`side = 0`) or one-sided difference.
    fn directional_derivative(&self, u: &Point, t: &Point, step: f64, side: i8) -> f64 {
        let at = |s: f64| self.radial(&(u * s.cos() + t * s.sin()));
        match side {
            0 => (at(step) - at(-step)) / (2.0 * step),
            1 => (at(step) - self.radial(u)) / step,
            _ => (self.radial(u) - at(-step)) / step,
        }
    }

    fn normal_from_gradient(&self, u: &Point, rho: f64, grad: &Point) -> Point {
        (u * rho - grad).normalize()
    }

    /// Outward unit normal of the boundary at the point `rho(u) u`.
    pub fn boundary_normal(&self, u: &Point) -> Result<Point> {
        let (t1, t2) = self.tangent_basis(u);
        let step = 0.25 * self.grid.spacing();
        let mut grad = t1 * self.directional_derivative(u, &t1, step, 0);
        if let Some(t2) = t2 {
            grad += t2 * self.directional_derivative(u, &t2, step, 0);
        }
        let nu = self.normal_from_gradient(u, self.radial(u), &grad);
        let dot = nu.dot(u);
        if dot <= MIN_RADIAL_COSINE {
            return Err(GeomError::DegenerateNormal { direction: [u.x, u.y, u.z], dot });
        }
        Ok(nu)
    }

    fn tangent_basis(&self, u: &Point) -> (Point, Option<Point>) {
        if self.dim() == 2 {
            (Point::new(-u.y, u.x, 0.0), None)
        } else {
            let (a, b) = tangent_frame(u);
            (a, Some(b))
        }
    }

    /// Boundary measure `int rho^(n-1) / (u . nu)` with corner and degeneracy bookkeeping.
    pub fn perimeter_report(&self) -> PerimeterReport {
        let n = self.dim() as i32;
        let h = self.grid.spacing();
        let central = 0.25 * h;
        let mut corner_nodes = Vec::new();
        let mut excluded_nodes = Vec::new();
        let mut values = vec![0.0; self.grid.len()];
        for (i, u) in self.grid.nodes().iter().enumerate() {
            let rho = self.rho[i];
            let (t1, t2) = self.tangent_basis(u);
            let grad_for = |side: i8, step: f64| {
                let mut g = t1 * self.directional_derivative(u, &t1, step, side);
                if let Some(t2) = &t2 {
                    g += t2 * self.directional_derivative(u, t2, step, side);
                }
                g
            };
            let integrand = |g: &Point| {
                let nu = self.normal_from_gradient(u, rho, g);
                (nu.dot(u), rho.powi(n - 1) / nu.dot(u))
            };
            let g_fwd = grad_for(1, h);
            let g_bwd = grad_for(-1, h);
            let n_fwd = self.normal_from_gradient(u, rho, &g_fwd);
            let n_bwd = self.normal_from_gradient(u, rho, &g_bwd);
            let (dot, value) = if n_fwd.dot(&n_bwd).clamp(-1.0, 1.0).acos() > CORNER_ANGLE {
                corner_nodes.push(i);
                let (d1, v1) = integrand(&g_fwd);
                let (d2, v2) = integrand(&g_bwd);
                (d1.min(d2), 0.5 * (v1 + v2))
            } else {
                integrand(&grad_for(0, central))
            };
            if dot <= MIN_RADIAL_COSINE {
                excluded_nodes.push(i);
            } else {
                values[i] = value;
            }
        }
        PerimeterReport { value: self.grid.integrate_values(&values), corner_nodes, excluded_nodes }
    }

    /// Boundary measure; fails when any node has a degenerate normal.
    pub fn perimeter(&self) -> Result<f64> {
        let report = self.perimeter_report();
        if let Some(&i) = report.excluded_nodes.first() {
            let u = self.grid.node(i);
            return Err(GeomError::DegenerateNormal { direction: [u.x, u.y, u.z], dot: 0.0 });
        }
        Ok(report.value)
    }

    /// Index of the node maximising `rho(u_i) u_i . v`.
    fn best_node(&self, v: &Point) -> (usize, f64) {
        let mut best = (0, f64::NEG_INFINITY);
        for (i, (u, r)) in self.grid.nodes().iter().zip(&self.rho).enumerate() {
            let val = r * u.dot(v);
            if val > best.1 {
                best = (i, val);
            }
        }
        best
    }

    /// Support function `h(v) = max_{x in K} x . v` for a unit `v`.
    pub fn support(&self, v: &Point) -> f64 {
        let (i, node_val) = self.best_node(v);
        let h = self.grid.spacing();
        let refined = if let Some(spline) = self.circle_spline() {
            let t0 = self.grid.node(i).y.atan2(self.grid.node(i).x);
            let (vx, vy) = (v.x, v.y);
            brent_max(|t| spline.eval(t) * (t.cos() * vx + t.sin() * vy), t0 - h, t0 + h, 1e-11).1
        } else {
            let u0 = *self.grid.node(i);
            let (t1, t2) = tangent_frame(&u0);
            let f = |a: f64, b: f64| {
                let w = (u0 + t1 * a + t2 * b).normalize();
                self.radial(&w) * w.dot(v)
            };
            let (mut a, mut b) = (0.0, 0.0);
            let mut width = h;
            let mut best = node_val;
            for _ in 0..4 {
                let (na, va) = brent_max(|x| f(x, b), a - width, a + width, 1e-11);
                a = na;
                let (nb, vb) = brent_max(|x| f(a, x), b - width, b + width, 1e-11);
                b = nb;
                best = best.max(va).max(vb);
                width *= 0.5;
            }
            best
        };
        node_val.max(refined)
    }

    /// Support values at every grid node.
    pub fn support_samples(&self) -> Vec<f64> {
        self.grid.nodes().iter().map(|u| self.support(u)).collect()
    }

    /// Polar body `rho_{K*} = 1 / h_K`, i.e. the polar of the convex hull.
    pub fn polar(&self) -> Result<StarBody> {
        let rho = self.support_samples().into_iter().map(|h| 1.0 / h).collect();
        StarBody::new(self.grid.clone(), rho)
    }

    /// Centered ball with the same volume.
    pub fn rearrangement(&self) -> Result<StarBody> {
        let n = self.dim();
        let r = (self.volume() / unit_ball_volume(n)).powf(1.0 / n as f64);
        StarBody::ball(self.grid.clone(), r)
    }

    /// Intersection of the line `base + t u` with the body, from a scan of the
    /// membership predicate refined by bisection.
    pub fn slice(&self, u: &Point, base: &Point) -> IntervalSlice {
        let u = u.normalize();
        let reach = self.max_radius() * (1.0 + 1e-9) + base.norm();
        let scan = 4 * self.grid.resolution().max(32);
        let inside = |t: f64| self.membership(&(base + u * t));
        let step = 2.0 * reach / scan as f64;
        let mut intervals = Vec::new();
        let mut prev_t = -reach;
        let mut prev_in = inside(prev_t);
        let mut open = if prev_in { Some(prev_t) } else { None };
        let refine = |a: f64, b: f64, a_in: bool| {
            let f = |t: f64| if inside(t) == a_in { -1.0 } else { 1.0 };
            bisect(f, a, b, 1e-10 * reach.max(1.0)).unwrap_or(0.5 * (a + b))
        };
        for k in 1..=scan {
            let t = -reach + step * k as f64;
            let now_in = inside(t);
            if now_in != prev_in {
                let x = refine(prev_t, t, prev_in);
                if now_in {
                    open = Some(x);
                } else if let Some(a) = open.take() {
                    intervals.push((a, x));
                }
            }
            prev_t = t;
            prev_in = now_in;
        }
        if let Some(a) = open {
            intervals.push((a, reach));
        }
        IntervalSlice { intervals }
    }

    /// `max |rho_K - rho_L|` over the nodes.
    pub fn radial_distance(&self, other: &StarBody) -> Result<f64> {
        if *self.grid != *other.grid {
            return Err(GeomError::GridMismatch);
        }
        Ok(self.rho.iter().zip(&other.rho).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
    }

    /// Hausdorff distance of the convex hulls, `max |h_K - h_L|` over the nodes.
    pub fn hausdorff_distance(&self, other: &StarBody) -> Result<f64> {
        if *self.grid != *other.grid {
            return Err(GeomError::GridMismatch);
        }
        Ok(self.grid.nodes().iter().map(|u| (self.support(u) - other.support(u)).abs()).fold(0.0, f64::max))
    }

    /// Boundary points `rho_i u_i`.
    pub fn boundary_points(&self) -> Vec<Point> {
        self.grid.nodes().iter().zip(&self.rho).map(|(u, r)| u * *r).collect()
    }

    /// Image under an invertible linear map, resampled on the same grid.
    pub fn transformed(&self, a: &nalgebra::Matrix3<f64>) -> Result<StarBody> {
        let inv = a.try_inverse().ok_or(GeomError::InvalidSpec("singular linear map".into()))?;
        let rho = self.grid.nodes().iter().map(|u| self.radial_at(&(inv * u))).collect();
        StarBody::new(self.grid.clone(), rho)
    }

    /// Radial function of a dilate `r K`.
    pub fn scaled(&self, r: f64) -> Result<StarBody> {
        self.with_samples(self.rho.iter().map(|x| x * r).collect())
    }
}

/// Two-sided Hausdorff distance between bodies on the same grid, with `metric`
/// measuring the distance between chart points. Boundary samples of one body
/// that lie inside the other contribute zero; every other sample is matched to
/// the nearest point of the other interpolated boundary.
pub fn boundary_hausdorff<M: Fn(&Point, &Point) -> f64>(a: &StarBody, b: &StarBody, metric: M) -> Result<f64> {
    if *a.grid != *b.grid {
        return Err(GeomError::GridMismatch);
    }
    Ok(one_sided_distance(a, b, &metric).max(one_sided_distance(b, a, &metric)))
}

fn one_sided_distance<M: Fn(&Point, &Point) -> f64>(a: &StarBody, b: &StarBody, metric: &M) -> f64 {
    let targets = b.boundary_points();
    let h = b.grid.spacing();
    let mut worst = 0.0f64;
    for x in a.boundary_points() {
        if b.membership(&x) {
            continue;
        }
        let (j, _) = targets
            .iter()
            .enumerate()
            .map(|(j, y)| (j, (x - y).norm_squared()))
            .fold((0, f64::INFINITY), |acc, c| if c.1 < acc.1 { c } else { acc });
        let node_dist = metric(&x, &targets[j]);
        let refined = if let Some(spline) = b.circle_spline() {
            let t0 = b.grid.node(j).y.atan2(b.grid.node(j).x);
            let boundary = |t: f64| {
                let (s, c) = t.sin_cos();
                Point::new(c, s, 0.0) * spline.eval(t)
            };
            -brent_max(|t| -metric(&x, &boundary(t)), t0 - 2.0 * h, t0 + 2.0 * h, 1e-10).1
        } else {
            let u0 = *b.grid.node(j);
            let (t1, t2) = tangent_frame(&u0);
            let boundary = |p: f64, q: f64| {
                let w = (u0 + t1 * p + t2 * q).normalize();
                w * b.radial(&w)
            };
            let (mut p, mut q, mut width) = (0.0, 0.0, 2.0 * h);
            let mut best = node_dist;
            for _ in 0..4 {
                let (np, vp) = brent_max(|s| -metric(&x, &boundary(s, q)), p - width, p + width, 1e-10);
                p = np;
                let (nq, vq) = brent_max(|s| -metric(&x, &boundary(p, s)), q - width, q + width, 1e-10);
                q = nq;
                best = best.min(-vp).min(-vq);
                width *= 0.5;
            }
            best
        };
        worst = worst.max(node_dist.min(refined));
    }
    worst
}
