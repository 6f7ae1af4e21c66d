//! Star bodies, polar bodies and projection bodies, with Steiner symmetrization
//! in Euclidean space, on the sphere (through the gnomonic chart) and in
//! hyperbolic space (through the Poincare ball and its radial rescaling).
//!
//! Bodies are represented by radial samples on a [`SphereGrid`]. The spherical and
//! hyperbolic layers keep a Euclidean chart image and transport every operation
//! through the chart.

pub mod definition;
pub mod error;
pub mod grid;
pub mod hyperbolic;
pub mod interp;
pub mod numeric;
pub mod petty;
pub mod projection;
mod section;
pub mod spherical;
pub mod starbody;
pub mod steiner;

/// Points and directions; planar data use `z = 0`.
pub type Point = nalgebra::Vector3<f64>;

pub use error::{GeomError, Result};
pub use grid::SphereGrid;
pub use interp::Interpolation;
pub use definition::{BodyDefinition, ChartKind, Shape};
pub use numeric::{bisect, unit_ball_volume, MonotoneProfile, RadialWeight};
pub use projection::SupportProfile;
pub use starbody::{IntervalSlice, PerimeterReport, StarBody};
pub use steiner::SteinerPlan;
