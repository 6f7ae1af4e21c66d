//! Euclidean Steiner symmetrization of sampled star bodies, with an optional
//! scaling of every symmetral chord.

use crate::error::{GeomError, Result};
use crate::interp::{Interpolation, PeriodicSpline};
use crate::section::{HalfLengthTable, TableRange};
use crate::starbody::StarBody;
use crate::Point;

/// Chord-table points per half-plane section in three dimensions.
const SECTION_TABLE: usize = 64;

#[derive(Debug, Clone)]
enum NodeQuery {
    /// In the shared plane (two dimensions).
    Planar { b: f64, c: f64 },
    /// In the plane spanned by `u` and the node's component orthogonal to `u`.
    Section { table: HalfLengthTable, b: f64, c: f64 },
    /// Along the symmetrization axis itself.
    Axis { half: f64, c: f64 },
}

/// Precomputed chord data of a body for one direction. Evaluating a plan at a
/// chord scale `r` gives the radial samples of the symmetral with every chord
/// `|t| <= l(s)` replaced by `|t| <= r l(s)`; `r = 1` is the Steiner symmetral.
#[derive(Debug, Clone)]
pub struct SteinerPlan {
    shared: Option<HalfLengthTable>,
    queries: Vec<NodeQuery>,
}

impl SteinerPlan {
    pub fn new(body: &StarBody, u: &Point) -> Result<Self> {
        let norm = u.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(GeomError::InvalidSpec("symmetrization direction must be nonzero".into()));
        }
        let u = u / norm;
        let grid = body.grid();
        if body.dim() == 2 {
            let spline = body.circle_spline().expect("planar body has a circle spline");
            let table = HalfLengthTable::build(spline, (u.x, u.y), TableRange::Full, grid.len());
            let e = Point::new(u.y, -u.x, 0.0);
            let queries = grid.nodes().iter().map(|w| NodeQuery::Planar { b: w.dot(&e), c: w.dot(&u) }).collect();
            return Ok(Self { shared: Some(table), queries });
        }
        let m = 4 * grid.resolution();
        let axis_half = 0.5 * (body.radial(&u) + body.radial(&-u));
        let queries = grid
            .nodes()
            .iter()
            .map(|w| {
                let c = w.dot(&u);
                let perp = w - u * c;
                let b = perp.norm();
                if b < 1e-12 {
                    return NodeQuery::Axis { half: axis_half, c };
                }
                let wp = perp / b;
                let samples = (0..m)
                    .map(|k| {
                        let a = std::f64::consts::TAU * k as f64 / m as f64;
                        body.radial(&(wp * a.cos() + u * a.sin()))
                    })
                    .collect();
                let spline = PeriodicSpline::new(samples, Interpolation::Cubic);
                // In-plane coordinates (wp, u): the chord axis u is (0, 1).
                let table = HalfLengthTable::build(&spline, (0.0, 1.0), TableRange::Positive, SECTION_TABLE);
                NodeQuery::Section { table, b, c }
            })
            .collect();
        Ok(Self { shared: None, queries })
    }

    /// Radial samples of the chord-scaled symmetral.
    pub fn radii(&self, r: f64) -> Vec<f64> {
        self.queries
            .iter()
            .map(|q| match q {
                NodeQuery::Planar { b, c } => self.shared.as_ref().expect("planar table").symmetral_radius(*b, *c, r),
                NodeQuery::Section { table, b, c } => table.symmetral_radius(*b, *c, r),
                NodeQuery::Axis { half, c } => r * half / c.abs(),
            })
            .collect()
    }
}

impl StarBody {
    /// Steiner symmetral with respect to the hyperplane `u^perp`.
    pub fn steiner(&self, u: &Point) -> Result<StarBody> {
        let rho = SteinerPlan::new(self, u)?.radii(1.0);
        self.with_samples(rho)
    }
}
