//! Batch experiments over `stargeom`: seeded body corpora, verification runs of
//! the polar projection inequalities along Steiner symmetrization sequences,
//! convergence studies, isoperimetric chains and CSV/JSON emission.

pub mod calibrate;
pub mod config;
pub mod corpus;
pub mod emit;
pub mod error;
pub mod geometry;
pub mod run;
pub mod schedule;

pub use calibrate::{calibrate, Calibration};
pub use config::{BodySource, ExperimentConfig, OutputPaths, Tolerances};
pub use corpus::{generate_corpus, CorpusSpec, Family};
pub use error::{ExperimentError, Result};
pub use geometry::{Body, Geometry};
pub use run::{run_experiment, run_body, RunReport, RunSummary};
pub use schedule::{random_directions, Schedule};
