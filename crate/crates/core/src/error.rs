use thiserror::Error;

/// Failures raised by the geometric routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("unsupported dimension {0}; only n = 2 and n = 3 are implemented")]
    UnsupportedDimension(usize),

    #[error("grid resolution {resolution} is invalid: {reason}")]
    InvalidResolution { resolution: usize, reason: &'static str },

    #[error("non-finite value {value} at node {node}")]
    NonFinite { node: usize, value: f64 },

    #[error("expected {expected} samples, got {got}")]
    SampleCount { expected: usize, got: usize },

    #[error("radial value {value} at node {node} is below the inner radius {inner}")]
    BelowInnerRadius { node: usize, value: f64, inner: f64 },

    #[error("radial jump between nodes {a} and {b} exceeds the Lipschitz budget ({jump:.3e} > {budget:.3e})")]
    LipschitzBudget { a: usize, b: usize, jump: f64, budget: f64 },

    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("value {value} lies outside the open range ({lo}, {hi})")]
    OutOfRange { value: f64, lo: f64, hi: f64 },

    #[error("bodies are sampled on different grids")]
    GridMismatch,

    #[error("boundary normal is degenerate in direction {direction:?} (u . nu = {dot:.3e})")]
    DegenerateNormal { direction: [f64; 3], dot: f64 },

    #[error("correction factor is not bracketed in (0, 1]: measure ratio at r = 1 is {ratio}")]
    Bracket { ratio: f64 },

    #[error("chart radius {radius} violates the hemisphere margin (limit {limit})")]
    PoleMargin { radius: f64, limit: f64 },

    #[error("support value {support} is too small for a polar inside the hemisphere margin (limit {limit})")]
    PolarMargin { support: f64, limit: f64 },

    #[error("disk radius {radius} violates the boundary margin (limit {limit})")]
    DiskMargin { radius: f64, limit: f64 },

    #[error("point does not lie in the open upper hemisphere")]
    BelowEquator,

    #[error("point does not lie in the open unit ball")]
    OutsideBall,

    #[error("invalid body definition: {0}")]
    InvalidSpec(String),

    #[error("corpus generation failed: {0}")]
    Infeasible(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
