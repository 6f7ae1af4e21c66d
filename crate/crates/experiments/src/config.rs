use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use stargeom::BodyDefinition;

use crate::error::{io_error, ExperimentError, Result};
use crate::geometry::Geometry;
use crate::schedule::Schedule;

/// Body definition given inline or as a path to a definition file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BodySource {
    Path(PathBuf),
    Inline(BodyDefinition),
}

impl BodySource {
    pub fn load(&self) -> Result<BodyDefinition> {
        match self {
            BodySource::Path(p) => Ok(BodyDefinition::load(p)?),
            BodySource::Inline(def) => {
                def.validate()?;
                Ok(def.clone())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Relative quadrature allowance; calibrated from the equality case when absent.
    pub eps_quad: Option<f64>,
    /// Allowed relative drift of the body measure.
    pub root_tol: f64,
    /// Relative band within which the two sides count as equal.
    pub equality_band: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { eps_quad: None, root_tol: 1e-6, equality_band: 1e-6 }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        if let Some(e) = self.eps_quad {
            // Zero is allowed so that runs can expose raw quadrature noise.
            if !(e >= 0.0 && e.is_finite()) {
                return Err(ExperimentError::Config(format!("eps_quad must be finite and non-negative, got {e}")));
            }
        }
        for (name, v) in [("root_tol", self.root_tol), ("equality_band", self.equality_band)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(ExperimentError::Config(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct OutputPaths {
    pub csv: Option<PathBuf>,
    pub json: Option<PathBuf>,
}

/// One verification run.
///
/// ```toml
/// geometry = "spherical"
/// resolution = 720
/// body = "bodies/ellipse.toml"
///
/// [schedule]
/// random = 20
/// seed = 7
///
/// [tolerances]
/// equality_band = 1e-6
///
/// [output]
/// csv = "out/ellipse.csv"
/// json = "out/ellipse.json"
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub geometry: Geometry,
    pub body: BodySource,
    pub resolution: usize,
    pub schedule: Schedule,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub output: OutputPaths,
    /// Also evaluate the isoperimetric chain.
    #[serde(default)]
    pub chain: bool,
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let config: Self = toml::from_str(text).map_err(|e| ExperimentError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    /// Reads a configuration; relative paths inside it resolve against its directory.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(io_error(path))?;
        let mut config = Self::from_toml_str(&text)?;
        let base = path.parent().unwrap_or(Path::new(""));
        let rebase = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        if let BodySource::Path(p) = &mut config.body {
            rebase(p);
        }
        config.output.csv.as_mut().map(rebase);
        config.output.json.as_mut().map(rebase);
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        self.tolerances.validate()?;
        if self.resolution == 0 {
            return Err(ExperimentError::Config("resolution must be positive".into()));
        }
        Ok(())
    }
}
