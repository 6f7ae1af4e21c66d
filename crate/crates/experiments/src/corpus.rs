//! Seeded families of admissible bodies.
//!
//! Generated trig-radial bodies are convex with a curvature margin: a smooth star
//! body is convex exactly when all its sections by planes through the origin are,
//! and a planar star curve `rho(t)` is convex where `rho^2 + 2 rho'^2 - rho rho'' >= 0`.

use std::f64::consts::{FRAC_PI_2, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use stargeom::hyperbolic::{chart_to_disk, DEFAULT_DISK_MARGIN};
use stargeom::spherical::DEFAULT_POLE_MARGIN;
use stargeom::{BodyDefinition, ChartKind, Interpolation, Point, Shape};

use crate::error::{ExperimentError, Result};
use crate::geometry::Geometry;

/// Draws before a family is declared infeasible.
const MAX_ATTEMPTS: usize = 10_000;
/// Finite-difference step along sections for the curvature check.
const CURVATURE_STEP: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// Balls, caps or hyperbolic balls, cycling through `radii` (angles for caps,
    /// geodesic radii for hyperbolic balls, radii otherwise).
    Caps { radii: Vec<f64> },
    /// `c0 (1 + sum_k a_k Re z^k + b_k Im z^k + sum_j d_j u3^j)` with `z = u1 + i u2`,
    /// `k, j <= max_degree` and coefficients of size at most `amplitude / k^2`.
    TrigRadial {
        max_degree: usize,
        amplitude: f64,
        /// Range of `c0`; angles for spherical bodies, chart radii otherwise.
        radius: (f64, f64),
    },
}

impl Family {
    /// Trig-radial family with a chart-appropriate size range.
    pub fn trig_radial(geometry: Geometry, max_degree: usize, amplitude: f64) -> Self {
        let radius = match geometry {
            Geometry::Euclidean => (0.6, 1.5),
            Geometry::Spherical => (0.35, 0.9),
            Geometry::Hyperbolic => (0.35, 1.2),
        };
        Family::TrigRadial { max_degree, amplitude, radius }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub geometry: Geometry,
    pub dim: usize,
    pub seed: u64,
    pub count: usize,
    pub family: Family,
    /// Lower bound on the chart inradius.
    pub inner_floor: f64,
    /// Lower bound on `(rho^2 + 2 rho'^2 - rho rho'') / rho^2` over all central sections.
    pub curvature_floor: f64,
}

impl CorpusSpec {
    pub fn new(geometry: Geometry, dim: usize, seed: u64, count: usize, family: Family) -> Self {
        Self { geometry, dim, seed, count, family, inner_floor: 0.15, curvature_floor: 0.25 }
    }
}

fn definition(spec: &CorpusSpec, body: Shape) -> BodyDefinition {
    let chart = match (&body, spec.geometry) {
        (Shape::HyperbolicBall { .. }, _) => ChartKind::Poincare,
        (_, g) => g.default_chart(),
    };
    BodyDefinition {
        dim: spec.dim,
        chart,
        delta_pole: (spec.geometry == Geometry::Spherical).then_some(DEFAULT_POLE_MARGIN),
        delta_disk: (spec.geometry == Geometry::Hyperbolic).then_some(DEFAULT_DISK_MARGIN),
        interpolation: Interpolation::Cubic,
        body,
    }
}

/// Deterministic list of admissible body definitions.
pub fn generate_corpus(spec: &CorpusSpec) -> Result<Vec<BodyDefinition>> {
    if spec.dim != 2 && spec.dim != 3 {
        return Err(stargeom::GeomError::UnsupportedDimension(spec.dim).into());
    }
    match &spec.family {
        Family::Caps { radii } => {
            if radii.is_empty() && spec.count > 0 {
                return Err(ExperimentError::Config("cap family needs radii".into()));
            }
            (0..spec.count)
                .map(|i| {
                    let r = radii[i % radii.len()];
                    let shape = match spec.geometry {
                        Geometry::Euclidean => Shape::Ball { radius: r },
                        Geometry::Spherical => Shape::Cap { angle: r },
                        Geometry::Hyperbolic => Shape::HyperbolicBall { radius: r },
                    };
                    let def = definition(spec, shape);
                    def.validate()?;
                    check_margins(spec, &def)?;
                    Ok(def)
                })
                .collect()
        }
        Family::TrigRadial { max_degree, amplitude, radius } => {
            if *max_degree == 0 || !(*amplitude > 0.0) || !(radius.0 > 0.0 && radius.0 <= radius.1) {
                return Err(ExperimentError::Config(format!(
                    "trig-radial family needs a positive degree, amplitude and radius range, got {max_degree}, {amplitude}, {radius:?}"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            let mut out = Vec::with_capacity(spec.count);
            let mut attempts = 0;
            let mut last_reason = String::new();
            while out.len() < spec.count {
                if attempts == MAX_ATTEMPTS {
                    return Err(ExperimentError::Infeasible { attempts, reason: last_reason });
                }
                attempts += 1;
                let def = draw_trig(spec, *max_degree, *amplitude, *radius, &mut rng);
                match admissible(spec, &def) {
                    Ok(()) => {
                        out.push(def);
                        attempts = 0;
                    }
                    Err(reason) => last_reason = reason,
                }
            }
            Ok(out)
        }
    }
}

fn draw_trig(spec: &CorpusSpec, max_degree: usize, amplitude: f64, radius: (f64, f64), rng: &mut ChaCha8Rng) -> BodyDefinition {
    let size = rng.random_range(radius.0..=radius.1);
    let c0 = if spec.geometry == Geometry::Spherical { size.tan() } else { size };
    let mut coefficient = |k: usize| c0 * amplitude * rng.random_range(-1.0..=1.0) / (k * k) as f64;
    let cos: Vec<f64> = (1..=max_degree).map(&mut coefficient).collect();
    let sin: Vec<f64> = (1..=max_degree).map(&mut coefficient).collect();
    let zonal: Vec<f64> = if spec.dim == 3 { (1..=max_degree).map(&mut coefficient).collect() } else { Vec::new() };
    definition(spec, Shape::TrigRadial { constant: c0, cos, sin, zonal })
}

/// Nearly uniform points on the unit sphere (or circle).
fn probe_directions(dim: usize) -> Vec<Point> {
    if dim == 2 {
        let m = 720;
        return (0..m).map(|k| {
            let t = TAU * k as f64 / m as f64;
            Point::new(t.cos(), t.sin(), 0.0)
        })
        .collect();
    }
    let m = 600;
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..m)
        .map(|k| {
            let z = 1.0 - 2.0 * (k as f64 + 0.5) / m as f64;
            let r = (1.0 - z * z).sqrt();
            let t = golden * k as f64;
            Point::new(r * t.cos(), r * t.sin(), z)
        })
        .collect()
}

/// Smallest normalized curvature over central sections through the probe directions.
fn curvature_margin(def: &BodyDefinition) -> std::result::Result<f64, String> {
    let rho = |u: &Point| def.radial(u).map_err(|e| e.to_string());
    let mut worst = f64::INFINITY;
    for u in probe_directions(def.dim) {
        let tangents: Vec<Point> = if def.dim == 2 {
            vec![Point::new(-u.y, u.x, 0.0)]
        } else {
            let a = if u.x.abs() < 0.9 { Point::x() } else { Point::y() };
            let e1 = u.cross(&a).normalize();
            let e2 = u.cross(&e1);
            (0..6)
                .map(|k| {
                    let t = std::f64::consts::PI * k as f64 / 6.0;
                    e1 * t.cos() + e2 * t.sin()
                })
                .collect()
        };
        for w in tangents {
            let h = CURVATURE_STEP;
            let r0 = rho(&u)?;
            let rp = rho(&(u * h.cos() + w * h.sin()))?;
            let rm = rho(&(u * h.cos() - w * h.sin()))?;
            let d1 = (rp - rm) / (2.0 * h);
            let d2 = (rp - 2.0 * r0 + rm) / (h * h);
            worst = worst.min((r0 * r0 + 2.0 * d1 * d1 - r0 * d2) / (r0 * r0));
        }
    }
    Ok(worst)
}

fn check_margins(spec: &CorpusSpec, def: &BodyDefinition) -> Result<()> {
    let probes = probe_directions(spec.dim);
    let radii: Vec<f64> = probes.iter().map(|u| def.radial(u)).collect::<stargeom::Result<_>>()?;
    let max = radii.iter().copied().fold(0.0, f64::max);
    let fail = |msg: String| Err(ExperimentError::Config(msg));
    match def.chart {
        ChartKind::Gnomonic => {
            let limit = (FRAC_PI_2 - def.delta_pole.unwrap_or(DEFAULT_POLE_MARGIN)).tan();
            if max >= limit {
                return fail(format!("chart radius {max} reaches the pole margin {limit}"));
            }
        }
        ChartKind::Phi => {
            let limit = 1.0 - def.delta_disk.unwrap_or(DEFAULT_DISK_MARGIN);
            if chart_to_disk(max) >= limit {
                return fail(format!("disk radius {} reaches the disk margin {limit}", chart_to_disk(max)));
            }
        }
        ChartKind::Poincare => {
            let limit = 1.0 - def.delta_disk.unwrap_or(DEFAULT_DISK_MARGIN);
            if max >= limit {
                return fail(format!("disk radius {max} reaches the disk margin {limit}"));
            }
        }
        ChartKind::Euclidean => {}
    }
    Ok(())
}

fn admissible(spec: &CorpusSpec, def: &BodyDefinition) -> std::result::Result<(), String> {
    let Shape::TrigRadial { constant, cos, sin, zonal } = &def.body else {
        return Ok(());
    };
    let inner = constant - cos.iter().chain(sin).chain(zonal).map(|c| c.abs()).sum::<f64>();
    if inner < spec.inner_floor {
        return Err(format!("inradius bound {inner} below {}", spec.inner_floor));
    }
    check_margins(spec, def).map_err(|e| e.to_string())?;
    let margin = curvature_margin(def)?;
    if margin < spec.curvature_floor {
        return Err(format!("curvature margin {margin} below {}", spec.curvature_floor));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caps_cycle_through_angles() {
        let spec = CorpusSpec::new(Geometry::Spherical, 2, 7, 3, Family::Caps { radii: vec![0.3, 0.5, 0.7] });
        let corpus = generate_corpus(&spec).unwrap();
        let angles: Vec<f64> = corpus
            .iter()
            .map(|d| match d.body {
                Shape::Cap { angle } => angle,
                _ => panic!("expected a cap"),
            })
            .collect();
        assert_eq!(angles, vec![0.3, 0.5, 0.7]);
    }

    #[test]
    fn trig_corpus_is_deterministic_and_convex() {
        let spec = CorpusSpec::new(Geometry::Hyperbolic, 3, 5, 6, Family::trig_radial(Geometry::Hyperbolic, 4, 0.15));
        let a = generate_corpus(&spec).unwrap();
        let b = generate_corpus(&spec).unwrap();
        assert_eq!(a, b);
        for def in &a {
            assert!(curvature_margin(def).unwrap() >= spec.curvature_floor);
            assert_eq!(def.chart, ChartKind::Phi);
        }
        let other = generate_corpus(&CorpusSpec { seed: 6, ..spec }).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn curvature_check_rejects_a_dented_body() {
        let spec = CorpusSpec::new(Geometry::Euclidean, 2, 0, 1, Family::trig_radial(Geometry::Euclidean, 4, 0.1));
        let dented = definition(&spec, Shape::TrigRadial { constant: 1.0, cos: vec![0.0, 0.0, 0.0, 0.2], sin: vec![], zonal: vec![] });
        assert!(curvature_margin(&dented).unwrap() < 0.0);
        let ellipse = definition(&spec, Shape::Ellipsoid { semi_axes: vec![2.0, 1.0], rotation: None });
        assert!(curvature_margin(&ellipse).unwrap() > 0.0);
    }

    #[test]
    fn infeasible_family_is_reported() {
        let mut spec = CorpusSpec::new(Geometry::Euclidean, 2, 1, 1, Family::trig_radial(Geometry::Euclidean, 4, 0.1));
        spec.inner_floor = 10.0;
        assert!(matches!(generate_corpus(&spec), Err(ExperimentError::Infeasible { .. })));
    }
}
