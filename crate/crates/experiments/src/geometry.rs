use std::sync::Arc;

use serde::{Deserialize, Serialize};
use stargeom::hyperbolic::HyperbolicBody;
use stargeom::petty::{
    chain_from_measures, isoperimetric_chain, ChainReport, EuclideanBody, PettyGeometry, PettyOptions, PettyTrace,
};
use stargeom::spherical::SphericalBody;
use stargeom::{BodyDefinition, ChartKind, Point, SphereGrid, StarBody};

use crate::error::{ExperimentError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    Euclidean,
    Spherical,
    Hyperbolic,
}

impl Geometry {
    /// Chart in which generated bodies of this geometry are described.
    pub fn default_chart(self) -> ChartKind {
        match self {
            Geometry::Euclidean => ChartKind::Euclidean,
            Geometry::Spherical => ChartKind::Gnomonic,
            Geometry::Hyperbolic => ChartKind::Phi,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Geometry::Euclidean => "euclidean",
            Geometry::Spherical => "spherical",
            Geometry::Hyperbolic => "hyperbolic",
        }
    }

    fn accepts(self, chart: ChartKind) -> bool {
        match self {
            Geometry::Euclidean => chart == ChartKind::Euclidean,
            Geometry::Spherical => chart == ChartKind::Gnomonic,
            Geometry::Hyperbolic => matches!(chart, ChartKind::Poincare | ChartKind::Phi),
        }
    }
}

impl std::fmt::Display for Geometry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A body of one of the three geometries.
#[derive(Debug, Clone)]
pub enum Body {
    Euclidean(EuclideanBody),
    Spherical(SphericalBody),
    Hyperbolic(HyperbolicBody),
}

/// Applies a generic operation to whichever geometry a [`Body`] holds.
macro_rules! with_body {
    ($body:expr, $b:ident => $e:expr) => {
        match $body {
            Body::Euclidean($b) => $e,
            Body::Spherical($b) => $e,
            Body::Hyperbolic($b) => $e,
        }
    };
}

impl Body {
    pub fn build(geometry: Geometry, def: &BodyDefinition, grid: Arc<SphereGrid>) -> Result<Self> {
        if !geometry.accepts(def.chart) {
            return Err(ExperimentError::Config(format!(
                "a {:?} chart does not describe a {geometry} body",
                def.chart
            )));
        }
        Ok(match geometry {
            Geometry::Euclidean => Body::Euclidean(EuclideanBody(def.star_body(grid)?)),
            Geometry::Spherical => Body::Spherical(def.spherical_body(grid)?),
            Geometry::Hyperbolic => Body::Hyperbolic(def.hyperbolic_body(grid)?),
        })
    }

    pub fn geometry(&self) -> Geometry {
        match self {
            Body::Euclidean(_) => Geometry::Euclidean,
            Body::Spherical(_) => Geometry::Spherical,
            Body::Hyperbolic(_) => Geometry::Hyperbolic,
        }
    }

    pub fn chart(&self) -> &StarBody {
        with_body!(self, b => b.chart())
    }

    pub fn dim(&self) -> usize {
        self.chart().dim()
    }

    pub fn measure(&self) -> f64 {
        with_body!(self, b => b.measure())
    }

    pub fn polar_projection_measure(&self) -> Result<f64> {
        Ok(with_body!(self, b => b.polar_projection_measure())?)
    }

    /// Symmetral and correction factor.
    pub fn symmetrize(&self, u: &Point) -> Result<(Body, f64)> {
        Ok(match self {
            Body::Euclidean(b) => b.symmetrize(u).map(|(s, r)| (Body::Euclidean(s), r))?,
            Body::Spherical(b) => b.symmetrize(u).map(|(s, r)| (Body::Spherical(s), r))?,
            Body::Hyperbolic(b) => b.symmetrize(u).map(|(s, r)| (Body::Hyperbolic(s), r))?,
        })
    }

    pub fn rearrangement(&self) -> Result<Body> {
        Ok(match self {
            Body::Euclidean(b) => Body::Euclidean(b.rearrangement()?),
            Body::Spherical(b) => Body::Spherical(b.rearrangement()?),
            Body::Hyperbolic(b) => Body::Hyperbolic(b.rearrangement()?),
        })
    }

    /// Intrinsic Hausdorff distance; both bodies must share a geometry.
    pub fn distance(&self, other: &Body) -> Result<f64> {
        Ok(match (self, other) {
            (Body::Euclidean(a), Body::Euclidean(b)) => a.distance(b)?,
            (Body::Spherical(a), Body::Spherical(b)) => a.distance(b)?,
            (Body::Hyperbolic(a), Body::Hyperbolic(b)) => a.distance(b)?,
            _ => return Err(ExperimentError::Config("distance between different geometries".into())),
        })
    }

    /// Isoperimetric chain; the Euclidean geometry has none.
    pub fn chain(&self, options: PettyOptions) -> Result<Option<ChainReport>> {
        Ok(match self {
            Body::Euclidean(_) => None,
            Body::Spherical(b) => Some(isoperimetric_chain(b, options)?),
            Body::Hyperbolic(b) => Some(isoperimetric_chain(b, options)?),
        })
    }
}

/// A [`PettyTrace`] over any geometry.
#[derive(Debug, Clone)]
pub(crate) enum Trace {
    Euclidean(PettyTrace<EuclideanBody>),
    Spherical(PettyTrace<SphericalBody>),
    Hyperbolic(PettyTrace<HyperbolicBody>),
}

impl Trace {
    pub(crate) fn start(body: &Body, options: PettyOptions) -> Result<Self> {
        Ok(match body {
            Body::Euclidean(b) => Trace::Euclidean(PettyTrace::start(b, options)?),
            Body::Spherical(b) => Trace::Spherical(PettyTrace::start(b, options)?),
            Body::Hyperbolic(b) => Trace::Hyperbolic(PettyTrace::start(b, options)?),
        })
    }

    pub(crate) fn step(&mut self, u: &Point) -> Result<()> {
        match self {
            Trace::Euclidean(t) => t.step(u).map(|_| ())?,
            Trace::Spherical(t) => t.step(u).map(|_| ())?,
            Trace::Hyperbolic(t) => t.step(u).map(|_| ())?,
        }
        Ok(())
    }

    /// Chain of the traced body, reusing the measures computed at iterate 0.
    pub(crate) fn chain(&self, body: &Body) -> Result<Option<ChainReport>> {
        let (lhs, rhs) = (self.report().lhs, self.report().rhs);
        let options = self.report().options;
        Ok(match (self, body) {
            (Trace::Spherical(t), Body::Spherical(b)) => Some(chain_from_measures(b, t.rearrangement(), lhs, rhs, options)?),
            (Trace::Hyperbolic(t), Body::Hyperbolic(b)) => Some(chain_from_measures(b, t.rearrangement(), lhs, rhs, options)?),
            _ => None,
        })
    }

    pub(crate) fn report(&self) -> &stargeom::petty::PettyReport {
        match self {
            Trace::Euclidean(t) => t.report(),
            Trace::Spherical(t) => t.report(),
            Trace::Hyperbolic(t) => t.report(),
        }
    }
}
