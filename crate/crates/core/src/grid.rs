//! Quadrature grids on the unit sphere `S^(n-1)` for `n = 2, 3`.

use std::f64::consts::PI;

use crate::error::{GeomError, Result};
use crate::numeric::gauss_legendre;
use crate::Point;

#[derive(Debug, Clone, PartialEq)]
enum Layout {
    /// Equiangular nodes `theta_k = 2 pi k / count`.
    Circle { count: usize },
    /// Gauss-Legendre latitudes (polar angles ascending) times equiangular longitudes.
    LatLon { polar: Vec<f64>, n_lon: usize },
}

/// Nodes and positive weights on `S^(n-1)` with an exact antipodal pairing.
///
/// In two dimensions `resolution` is the node count (even, at least 8). In three
/// dimensions it is the number of Gauss-Legendre latitudes; each latitude carries
/// `2 * resolution` longitudes, and node `j * n_lon + k` sits on ring `j`.
#[derive(Debug, Clone)]
pub struct SphereGrid {
    dim: usize,
    resolution: usize,
    layout: Layout,
    nodes: Vec<Point>,
    weights: Vec<f64>,
    antipode: Vec<usize>,
}

impl PartialEq for SphereGrid {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.resolution == other.resolution
    }
}

impl SphereGrid {
    pub fn new(dim: usize, resolution: usize) -> Result<Self> {
        match dim {
            2 => Self::circle(resolution),
            3 => Self::sphere(resolution),
            _ => Err(GeomError::UnsupportedDimension(dim)),
        }
    }

    fn circle(m: usize) -> Result<Self> {
        if m < 8 || m % 2 != 0 {
            return Err(GeomError::InvalidResolution { resolution: m, reason: "circle grids need an even node count of at least 8" });
        }
        let h = 2.0 * PI / m as f64;
        let nodes = (0..m).map(|k| {
            let t = h * k as f64;
            Point::new(t.cos(), t.sin(), 0.0)
        });
        Ok(Self {
            dim: 2,
            resolution: m,
            layout: Layout::Circle { count: m },
            nodes: nodes.collect(),
            weights: vec![h; m],
            antipode: (0..m).map(|k| (k + m / 2) % m).collect(),
        }
        .with_exact_antipodes())
    }

    fn sphere(n_lat: usize) -> Result<Self> {
        if n_lat < 4 {
            return Err(GeomError::InvalidResolution { resolution: n_lat, reason: "sphere grids need at least 4 latitudes" });
        }
        let n_lon = 2 * n_lat;
        let (z, w) = gauss_legendre(n_lat);
        // Ascending polar angle means descending z.
        let polar: Vec<f64> = z.iter().rev().map(|z| z.acos()).collect();
        let wz: Vec<f64> = w.iter().rev().copied().collect();
        let dphi = 2.0 * PI / n_lon as f64;
        let mut nodes = Vec::with_capacity(n_lat * n_lon);
        let mut weights = Vec::with_capacity(n_lat * n_lon);
        for (j, &theta) in polar.iter().enumerate() {
            let (st, ct) = theta.sin_cos();
            for k in 0..n_lon {
                let (sp, cp) = (dphi * k as f64).sin_cos();
                nodes.push(Point::new(st * cp, st * sp, ct));
                weights.push(wz[j] * dphi);
            }
        }
        let antipode = (0..n_lat * n_lon)
            .map(|i| {
                let (j, k) = (i / n_lon, i % n_lon);
                (n_lat - 1 - j) * n_lon + (k + n_lat) % n_lon
            })
            .collect();
        Ok(Self { dim: 3, resolution: n_lat, layout: Layout::LatLon { polar, n_lon }, nodes, weights, antipode }
            .with_exact_antipodes())
    }

    /// Makes every antipodal node the exact negation of its partner, so that
    /// pairwise summation gives `integrate(f) == integrate(f(-u))` bit for bit.
    fn with_exact_antipodes(mut self) -> Self {
        for i in 0..self.nodes.len() {
            let a = self.antipode[i];
            if i < a {
                self.nodes[a] = -self.nodes[i];
                debug_assert_eq!(self.weights[i], self.weights[a]);
            }
        }
        self
    }

    /// Sum of `w_i v_i`, accumulated over antipodal pairs.
    fn pair_sum<F: FnMut(usize) -> Result<f64>>(&self, mut value: F) -> Result<f64> {
        let mut sum = 0.0;
        for i in 0..self.nodes.len() {
            let a = self.antipode[i];
            if i < a {
                sum += self.weights[i] * value(i)? + self.weights[a] * value(a)?;
            }
        }
        Ok(sum)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Point] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &Point {
        &self.nodes[i]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Index of the node at `-u_i`.
    pub fn antipode(&self, i: usize) -> usize {
        self.antipode[i]
    }

    /// Typical angular spacing between neighbouring nodes.
    pub fn spacing(&self) -> f64 {
        match &self.layout {
            Layout::Circle { count } => 2.0 * PI / *count as f64,
            Layout::LatLon { n_lon, .. } => 2.0 * PI / *n_lon as f64,
        }
    }

    /// Polar angles of the latitude rings, ascending (empty in two dimensions).
    pub fn polar_angles(&self) -> &[f64] {
        match &self.layout {
            Layout::Circle { .. } => &[],
            Layout::LatLon { polar, .. } => polar,
        }
    }

    /// Longitudes per ring in three dimensions, node count in two.
    pub fn ring_len(&self) -> usize {
        match &self.layout {
            Layout::Circle { count } => *count,
            Layout::LatLon { n_lon, .. } => *n_lon,
        }
    }

    /// Quadrature of `f` over the sphere. Fails on a non-finite sample.
    pub fn integrate<F: FnMut(&Point) -> f64>(&self, mut f: F) -> Result<f64> {
        self.pair_sum(|i| {
            let v = f(&self.nodes[i]);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(GeomError::NonFinite { node: i, value: v })
            }
        })
    }

    /// Weighted sum of precomputed node values.
    pub fn integrate_values(&self, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.len());
        self.pair_sum(|i| Ok(values[i])).unwrap_or(f64::NAN)
    }

    /// Pairs of neighbouring node indices, used for Lipschitz checks.
    pub(crate) fn neighbour_pairs(&self) -> Vec<(usize, usize, f64)> {
        match &self.layout {
            Layout::Circle { count } => {
                let h = 2.0 * PI / *count as f64;
                (0..*count).map(|k| (k, (k + 1) % count, h)).collect()
            }
            Layout::LatLon { polar, n_lon } => {
                let mut out = Vec::new();
                let dphi = 2.0 * PI / *n_lon as f64;
                for (j, &t) in polar.iter().enumerate() {
                    for k in 0..*n_lon {
                        let i = j * n_lon + k;
                        out.push((i, j * n_lon + (k + 1) % n_lon, dphi * t.sin()));
                        if j + 1 < polar.len() {
                            out.push((i, (j + 1) * n_lon + k, polar[j + 1] - t));
                        }
                    }
                }
                out
            }
        }
    }
}

/// Angle of a planar direction in `[0, 2 pi)`.
pub fn planar_angle(u: &Point) -> f64 {
    let a = u.y.atan2(u.x);
    if a < 0.0 {
        a + 2.0 * PI
    } else {
        a
    }
}
