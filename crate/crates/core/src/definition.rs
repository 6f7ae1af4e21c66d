//! Text definitions of bodies (TOML), and their sampling on a grid.
//!
//! ```toml
//! dim = 2
//! chart = "gnomonic"          # euclidean | gnomonic | poincare | phi
//! delta_pole = 0.05           # optional
//!
//! [body]
//! kind = "ellipsoid"
//! semi_axes = [1.2, 0.5]
//! rotation = { angle = 0.5235987755982988 }
//! ```

use std::path::Path;
use std::sync::Arc;

use nalgebra::{Matrix3, Rotation3, Unit};
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::grid::SphereGrid;
use crate::hyperbolic::{HyperbolicBody, DEFAULT_DISK_MARGIN};
use crate::interp::Interpolation;
use crate::spherical::{SphericalBody, DEFAULT_POLE_MARGIN};
use crate::starbody::StarBody;
use crate::Point;

/// What the radial samples of a definition describe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChartKind {
    /// A Euclidean body.
    #[default]
    Euclidean,
    /// The gnomonic chart of a body in the upper hemisphere.
    Gnomonic,
    /// A body in the Poincare ball.
    Poincare,
    /// The `y = 2x / (1 - |x|^2)` chart of a hyperbolic body.
    Phi,
}

/// Rotation applied to a shape: `angle` in the `e1 e2` plane, or about `axis` in three dimensions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RotationDef {
    pub angle: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis: Option<[f64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Shape {
    Ball {
        radius: f64,
    },
    Ellipsoid {
        semi_axes: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        rotation: Option<RotationDef>,
    },
    Cube {
        half_width: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        rotation: Option<RotationDef>,
    },
    Superellipsoid {
        semi_axes: Vec<f64>,
        p: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        rotation: Option<RotationDef>,
    },
    /// `constant + sum_k cos[k-1] Re (u1 + i u2)^k + sin[k-1] Im (u1 + i u2)^k + sum_j zonal[j-1] u3^j`.
    TrigRadial {
        constant: f64,
        #[serde(default)]
        cos: Vec<f64>,
        #[serde(default)]
        sin: Vec<f64>,
        #[serde(default)]
        zonal: Vec<f64>,
    },
    /// Intersection of half-spaces `n . x <= c`, each given as `[n..., c]`.
    Polytope {
        halfspaces: Vec<Vec<f64>>,
    },
    /// Raw radial samples in grid node order.
    Samples {
        rho: Vec<f64>,
    },
    /// Spherical cap of geodesic radius `angle` about the pole (gnomonic charts only).
    Cap {
        angle: f64,
    },
    /// Hyperbolic ball of geodesic radius `radius` (Poincare charts only).
    HyperbolicBall {
        radius: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BodyDefinition {
    pub dim: usize,
    #[serde(default)]
    pub chart: ChartKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_pole: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_disk: Option<f64>,
    #[serde(default)]
    pub interpolation: Interpolation,
    pub body: Shape,
}

fn invalid(msg: impl Into<String>) -> GeomError {
    GeomError::InvalidSpec(msg.into())
}

fn rotation_matrix(dim: usize, rot: &Option<RotationDef>) -> Result<Matrix3<f64>> {
    let Some(rot) = rot else {
        return Ok(Matrix3::identity());
    };
    let axis = match (dim, rot.axis) {
        (2, None) | (3, None) => Point::z(),
        (3, Some(a)) => Point::new(a[0], a[1], a[2]),
        (2, Some(_)) => return Err(invalid("planar rotations take no axis")),
        _ => return Err(GeomError::UnsupportedDimension(dim)),
    };
    if axis.norm() == 0.0 {
        return Err(invalid("rotation axis must be nonzero"));
    }
    Ok(*Rotation3::from_axis_angle(&Unit::new_normalize(axis), rot.angle).matrix())
}

impl Shape {
    fn check(&self, dim: usize, chart: ChartKind) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(invalid(format!("{name} must be positive and finite, got {v}")))
            }
        };
        let axes = |a: &Vec<f64>| {
            if a.len() != dim {
                return Err(invalid(format!("expected {dim} semi-axes, got {}", a.len())));
            }
            a.iter().try_for_each(|&v| positive("semi-axis", v))
        };
        match self {
            Shape::Ball { radius } => positive("radius", *radius),
            Shape::Ellipsoid { semi_axes, .. } => axes(semi_axes),
            Shape::Cube { half_width, .. } => positive("half_width", *half_width),
            Shape::Superellipsoid { semi_axes, p, .. } => {
                axes(semi_axes)?;
                if *p >= 1.0 && p.is_finite() {
                    Ok(())
                } else {
                    Err(invalid(format!("superellipsoid exponent must be finite and at least 1, got {p}")))
                }
            }
            Shape::TrigRadial { constant, zonal, .. } => {
                positive("constant", *constant)?;
                if dim == 2 && !zonal.is_empty() {
                    return Err(invalid("zonal terms need three dimensions"));
                }
                Ok(())
            }
            Shape::Polytope { halfspaces } => {
                if halfspaces.is_empty() {
                    return Err(invalid("polytope needs half-spaces"));
                }
                for hs in halfspaces {
                    if hs.len() != dim + 1 {
                        return Err(invalid(format!("half-space needs {} numbers, got {}", dim + 1, hs.len())));
                    }
                    positive("half-space offset", hs[dim])?;
                }
                Ok(())
            }
            Shape::Samples { rho } => rho.iter().try_for_each(|&v| positive("radial sample", v)),
            Shape::Cap { angle } => {
                if chart != ChartKind::Gnomonic {
                    return Err(invalid("caps need the gnomonic chart"));
                }
                positive("angle", *angle)
            }
            Shape::HyperbolicBall { radius } => {
                if chart != ChartKind::Poincare && chart != ChartKind::Phi {
                    return Err(invalid("hyperbolic balls need the poincare or phi chart"));
                }
                positive("radius", *radius)
            }
        }
    }

    /// Radial function at a unit direction, in the coordinates the chart kind names.
    fn radial(&self, dim: usize, chart: ChartKind, u: &Point) -> Result<f64> {
        let r = match self {
            Shape::Ball { radius } => *radius,
            Shape::Ellipsoid { semi_axes, rotation } => {
                let v = rotation_matrix(dim, rotation)?.transpose() * u;
                1.0 / (0..dim).map(|i| (v[i] / semi_axes[i]).powi(2)).sum::<f64>().sqrt()
            }
            Shape::Cube { half_width, rotation } => {
                let v = rotation_matrix(dim, rotation)?.transpose() * u;
                half_width / (0..dim).map(|i| v[i].abs()).fold(0.0, f64::max)
            }
            Shape::Superellipsoid { semi_axes, p, rotation } => {
                let v = rotation_matrix(dim, rotation)?.transpose() * u;
                (0..dim).map(|i| (v[i] / semi_axes[i]).abs().powf(*p)).sum::<f64>().powf(-1.0 / p)
            }
            Shape::TrigRadial { constant, cos, sin, zonal } => {
                let z = nalgebra::Complex::new(u.x, u.y);
                let mut power = nalgebra::Complex::new(1.0, 0.0);
                let mut r = *constant;
                for k in 0..cos.len().max(sin.len()) {
                    power *= z;
                    r += cos.get(k).copied().unwrap_or(0.0) * power.re + sin.get(k).copied().unwrap_or(0.0) * power.im;
                }
                r + zonal.iter().enumerate().map(|(j, d)| d * u.z.powi(j as i32 + 1)).sum::<f64>()
            }
            Shape::Polytope { halfspaces } => halfspaces
                .iter()
                .filter_map(|hs| {
                    let dot: f64 = (0..dim).map(|i| hs[i] * u[i]).sum();
                    (dot > 0.0).then(|| hs[dim] / dot)
                })
                .fold(f64::INFINITY, f64::min),
            Shape::Samples { .. } => return Err(invalid("sampled bodies have no radial function")),
            Shape::Cap { angle } => angle.tan(),
            Shape::HyperbolicBall { radius } => {
                let disk = (0.5 * radius).tanh();
                match chart {
                    ChartKind::Phi => crate::hyperbolic::disk_to_chart(disk),
                    _ => disk,
                }
            }
        };
        Ok(r)
    }
}

impl BodyDefinition {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let def: BodyDefinition = toml::from_str(text).map_err(|e| invalid(e.to_string()))?;
        def.validate()?;
        Ok(def)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| invalid(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim != 2 && self.dim != 3 {
            return Err(GeomError::UnsupportedDimension(self.dim));
        }
        for (name, v) in [("delta_pole", self.delta_pole), ("delta_disk", self.delta_disk)] {
            if let Some(v) = v {
                if !(v > 0.0 && v < 1.0) {
                    return Err(invalid(format!("{name} must lie in (0, 1), got {v}")));
                }
            }
        }
        self.body.check(self.dim, self.chart)
    }

    /// Radial function at a unit direction, in the coordinates named by `chart`.
    /// Sample lists have no radial function and give an error.
    pub fn radial(&self, u: &Point) -> Result<f64> {
        if matches!(self.body, Shape::Samples { .. }) {
            return Err(invalid("sampled bodies have no radial function"));
        }
        self.body.radial(self.dim, self.chart, u)
    }

    /// Radial samples at the grid nodes, in the coordinates named by `chart`.
    pub fn sample(&self, grid: &SphereGrid) -> Result<Vec<f64>> {
        if grid.dim() != self.dim {
            return Err(invalid(format!("definition has dimension {}, grid has {}", self.dim, grid.dim())));
        }
        if let Shape::Samples { rho } = &self.body {
            if rho.len() != grid.len() {
                return Err(GeomError::SampleCount { expected: grid.len(), got: rho.len() });
            }
            return Ok(rho.clone());
        }
        grid.nodes()
            .iter()
            .enumerate()
            .map(|(i, u)| {
                let r = self.radial(u)?;
                if r.is_finite() && r > 0.0 {
                    Ok(r)
                } else {
                    Err(GeomError::NonFinite { node: i, value: r })
                }
            })
            .collect()
    }

    /// Star body of the raw samples.
    pub fn star_body(&self, grid: Arc<SphereGrid>) -> Result<StarBody> {
        let rho = self.sample(&grid)?;
        let inner = rho.iter().copied().fold(f64::INFINITY, f64::min);
        StarBody::with_options(grid, rho, inner, self.interpolation)
    }

    pub fn spherical_body(&self, grid: Arc<SphereGrid>) -> Result<SphericalBody> {
        if self.chart != ChartKind::Gnomonic {
            return Err(invalid("spherical bodies need the gnomonic chart"));
        }
        SphericalBody::new(self.star_body(grid)?, self.delta_pole.unwrap_or(DEFAULT_POLE_MARGIN))
    }

    pub fn hyperbolic_body(&self, grid: Arc<SphereGrid>) -> Result<HyperbolicBody> {
        let delta = self.delta_disk.unwrap_or(DEFAULT_DISK_MARGIN);
        match self.chart {
            ChartKind::Poincare => HyperbolicBody::from_disk(grid.clone(), &self.sample(&grid)?, delta),
            ChartKind::Phi => HyperbolicBody::new(self.star_body(grid)?, delta),
            _ => Err(invalid("hyperbolic bodies need the poincare or phi chart")),
        }
    }
}
