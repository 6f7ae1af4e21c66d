use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, UnitCircle, UnitSphere};
use serde::{Deserialize, Serialize};
use stargeom::Point;

use crate::error::{ExperimentError, Result};

/// Symmetrization directions: an explicit list, or `random` uniform directions drawn from `seed`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Schedule {
    Random { random: usize, seed: u64 },
    Explicit { directions: Vec<Vec<f64>> },
}

impl Schedule {
    pub fn len(&self) -> usize {
        match self {
            Schedule::Random { random, .. } => *random,
            Schedule::Explicit { directions } => directions.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Schedule::Random { seed, .. } => Some(*seed),
            Schedule::Explicit { .. } => None,
        }
    }

    /// Unit directions in dimension `dim`.
    pub fn directions(&self, dim: usize) -> Result<Vec<Point>> {
        match self {
            Schedule::Random { random, seed } => random_directions(dim, *random, *seed),
            Schedule::Explicit { directions } => directions
                .iter()
                .map(|d| {
                    if d.len() != dim {
                        return Err(ExperimentError::Config(format!("direction {d:?} is not {dim}-dimensional")));
                    }
                    let p = Point::new(d[0], d[1], if dim == 3 { d[2] } else { 0.0 });
                    let norm = p.norm();
                    if !(norm.is_finite() && norm > 0.0) {
                        return Err(ExperimentError::Config(format!("direction {d:?} is not a nonzero vector")));
                    }
                    Ok(p / norm)
                })
                .collect(),
        }
    }
}

/// `count` directions uniform on the unit sphere of dimension `dim`.
pub fn random_directions(dim: usize, count: usize, seed: u64) -> Result<Vec<Point>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match dim {
        2 => Ok((0..count)
            .map(|_| {
                let [x, y]: [f64; 2] = UnitCircle.sample(&mut rng);
                Point::new(x, y, 0.0)
            })
            .collect()),
        3 => Ok((0..count)
            .map(|_| {
                let [x, y, z]: [f64; 3] = UnitSphere.sample(&mut rng);
                Point::new(x, y, z)
            })
            .collect()),
        _ => Err(stargeom::GeomError::UnsupportedDimension(dim).into()),
    }
}
