//! Verification of Petty-type inequalities along Steiner symmetrization
//! sequences, and the isoperimetric chains derived from them.

use crate::error::{GeomError, Result};
use crate::numeric::{unit_ball_volume, MonotoneProfile};
use crate::starbody::{boundary_hausdorff, StarBody};
use crate::Point;

/// A geometry in which bodies can be measured, symmetrized and compared.
pub trait PettyGeometry: Sized + Clone {
    /// Intrinsic volume of the body.
    fn measure(&self) -> f64;

    /// Intrinsic volume of the polar projection body.
    fn polar_projection_measure(&self) -> Result<f64>;

    /// Symmetral in direction `u` and the chord or dilation factor that keeps
    /// the measure fixed (`1` when no correction is needed).
    fn symmetrize(&self, u: &Point) -> Result<(Self, f64)>;

    /// Centered ball or cap of the same measure.
    fn rearrangement(&self) -> Result<Self>;

    /// Intrinsic Hausdorff distance.
    fn distance(&self, other: &Self) -> Result<f64>;

    /// Euclidean chart image.
    fn chart(&self) -> &StarBody;
}

/// A geometry whose polar projection measure is `int F(h_{Pi chart})` for a
/// decreasing profile `F`, giving an isoperimetric chain.
pub trait IsoperimetricGeometry: PettyGeometry {
    fn profile(&self) -> MonotoneProfile;
}

/// Tolerances for a verification run; both are relative to the compared values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PettyOptions {
    /// Quadrature error allowance for inequalities and monotonicity.
    pub eps_quad: f64,
    /// Band within which two values count as equal.
    pub equality_band: f64,
}

impl Default for PettyOptions {
    fn default() -> Self {
        Self { eps_quad: 1e-9, equality_band: 1e-6 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterateRecord {
    pub index: usize,
    pub direction: Option<Point>,
    pub r_k: Option<f64>,
    pub measure: f64,
    pub polar_projection_measure: f64,
    pub distance_to_rearrangement: f64,
}

/// Outcome of [`verify_petty`].
#[derive(Debug, Clone, PartialEq)]
pub struct PettyReport {
    /// Polar projection measure of the body.
    pub lhs: f64,
    /// Polar projection measure of its rearrangement.
    pub rhs: f64,
    pub iterates: Vec<IterateRecord>,
    /// `(iterate index, relative decrease)` for every step that decreased beyond `eps_quad`.
    pub violations: Vec<(usize, f64)>,
    pub options: PettyOptions,
}

impl PettyReport {
    /// `(rhs - lhs) / rhs`.
    pub fn relative_margin(&self) -> f64 {
        (self.rhs - self.lhs) / self.rhs
    }

    pub fn inequality_holds(&self) -> bool {
        self.relative_margin() >= -self.options.eps_quad
    }

    pub fn is_equality(&self) -> bool {
        self.relative_margin().abs() <= self.options.equality_band
    }

    pub fn is_monotone(&self) -> bool {
        self.violations.is_empty()
    }

    /// Largest relative deviation of the body measure from its initial value.
    pub fn max_measure_drift(&self) -> f64 {
        let m0 = self.iterates[0].measure;
        self.iterates.iter().map(|r| (r.measure - m0).abs() / m0).fold(0.0, f64::max)
    }

    /// Largest relative step-to-step measure change.
    pub fn max_step_drift(&self) -> f64 {
        self.iterates.windows(2).map(|w| (w[1].measure - w[0].measure).abs() / w[0].measure).fold(0.0, f64::max)
    }

    pub fn initial_distance(&self) -> f64 {
        self.iterates[0].distance_to_rearrangement
    }

    pub fn final_distance(&self) -> f64 {
        self.iterates.last().map(|r| r.distance_to_rearrangement).unwrap_or(f64::NAN)
    }
}

/// Incremental form of [`verify_petty`]: one symmetrization per [`PettyTrace::step`],
/// so callers can record which iterate failed.
#[derive(Debug, Clone)]
pub struct PettyTrace<G> {
    star: G,
    current: G,
    report: PettyReport,
}

impl<G: PettyGeometry> PettyTrace<G> {
    pub fn start(body: &G, options: PettyOptions) -> Result<Self> {
        let star = body.rearrangement()?;
        let lhs = body.polar_projection_measure()?;
        let rhs = star.polar_projection_measure()?;
        let first = IterateRecord {
            index: 0,
            direction: None,
            r_k: None,
            measure: body.measure(),
            polar_projection_measure: lhs,
            distance_to_rearrangement: body.distance(&star)?,
        };
        let report = PettyReport { lhs, rhs, iterates: vec![first], violations: Vec::new(), options };
        Ok(Self { star, current: body.clone(), report })
    }

    /// Symmetrizes the current iterate in direction `u`.
    pub fn step(&mut self, u: &Point) -> Result<&IterateRecord> {
        let (next, r_k) = self.current.symmetrize(u)?;
        let p = next.polar_projection_measure()?;
        let index = self.report.iterates.len();
        let prev = self.report.iterates[index - 1].polar_projection_measure;
        if p < prev * (1.0 - self.report.options.eps_quad) {
            self.report.violations.push((index, (prev - p) / prev));
        }
        self.report.iterates.push(IterateRecord {
            index,
            direction: Some(*u),
            r_k: Some(r_k),
            measure: next.measure(),
            polar_projection_measure: p,
            distance_to_rearrangement: next.distance(&self.star)?,
        });
        self.current = next;
        Ok(&self.report.iterates[index])
    }

    pub fn current(&self) -> &G {
        &self.current
    }

    pub fn rearrangement(&self) -> &G {
        &self.star
    }

    pub fn report(&self) -> &PettyReport {
        &self.report
    }

    pub fn finish(self) -> PettyReport {
        self.report
    }
}

/// Compares the body with its rearrangement and symmetrizes along `schedule`,
/// recording the polar projection measure after every step.
pub fn verify_petty<G: PettyGeometry>(body: &G, schedule: &[Point], options: PettyOptions) -> Result<PettyReport> {
    let mut trace = PettyTrace::start(body, options)?;
    for u in schedule {
        trace.step(u)?;
    }
    Ok(trace.finish())
}

/// Distances to the rearrangement along a symmetrization sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTrace {
    /// `(iterate index, distance)`, including iterate 0 and the last iterate.
    pub distances: Vec<(usize, f64)>,
    /// Measure of every iterate, starting with the body.
    pub measures: Vec<f64>,
    /// Correction factor of every step.
    pub r_k: Vec<f64>,
}

impl ConvergenceTrace {
    pub fn initial_distance(&self) -> f64 {
        self.distances[0].1
    }

    pub fn final_distance(&self) -> f64 {
        self.distances.last().map(|d| d.1).unwrap_or(f64::NAN)
    }

    /// Final distance as a fraction of the initial one.
    pub fn reduction(&self) -> f64 {
        self.final_distance() / self.initial_distance()
    }

    /// Largest increase between consecutive recorded distances, relative to the initial distance.
    pub fn max_local_increase(&self) -> f64 {
        let d0 = self.initial_distance();
        self.distances.windows(2).map(|w| (w[1].1 - w[0].1) / d0).fold(0.0, f64::max)
    }

    pub fn max_measure_drift(&self) -> f64 {
        let m0 = self.measures[0];
        self.measures.iter().map(|m| (m - m0).abs() / m0).fold(0.0, f64::max)
    }
}

/// Symmetrizes along `schedule`, recording the distance to the rearrangement
/// every `stride` steps and after the last one.
pub fn converge<G: PettyGeometry>(body: &G, schedule: &[Point], stride: usize) -> Result<ConvergenceTrace> {
    let stride = stride.max(1);
    let star = body.rearrangement()?;
    let mut distances = vec![(0, body.distance(&star)?)];
    let mut measures = vec![body.measure()];
    let mut r_k = Vec::with_capacity(schedule.len());
    let mut current = body.clone();
    for (i, u) in schedule.iter().enumerate() {
        let (next, r) = current.symmetrize(u)?;
        current = next;
        measures.push(current.measure());
        r_k.push(r);
        let index = i + 1;
        if index % stride == 0 || index == schedule.len() {
            distances.push((index, current.distance(&star)?));
        }
    }
    Ok(ConvergenceTrace { distances, measures, r_k })
}

/// `c_0 = w_(n-1) / (n w_n)`.
pub fn chain_constant(n: usize) -> f64 {
    unit_ball_volume(n - 1) / (n as f64 * unit_ball_volume(n))
}

/// The four terms of
/// `c0 P(dK*) = F^-1(M(K*) / (n w_n)) <= F^-1(M(K) / (n w_n)) <= c0 P(dK)`,
/// where `P` is the chart perimeter and `M` the polar projection measure.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainReport {
    pub star_perimeter: f64,
    pub star_inverse: f64,
    pub body_inverse: f64,
    pub body_perimeter: f64,
    pub eps_quad: f64,
    pub equality_band: f64,
}

impl ChainReport {
    pub fn endpoint_gap(&self) -> f64 {
        (self.star_perimeter - self.star_inverse).abs() / self.star_perimeter
    }

    pub fn endpoint_holds(&self) -> bool {
        self.endpoint_gap() <= self.equality_band
    }

    pub fn middle_holds(&self) -> bool {
        self.star_inverse <= self.body_inverse * (1.0 + self.eps_quad)
    }

    pub fn right_holds(&self) -> bool {
        self.body_inverse <= self.body_perimeter * (1.0 + self.eps_quad)
    }

    pub fn holds(&self) -> bool {
        self.endpoint_holds() && self.middle_holds() && self.right_holds()
    }
}

pub fn isoperimetric_chain<G: IsoperimetricGeometry>(body: &G, options: PettyOptions) -> Result<ChainReport> {
    let star = body.rearrangement()?;
    let body_measure = body.polar_projection_measure()?;
    let star_measure = star.polar_projection_measure()?;
    chain_from_measures(body, &star, body_measure, star_measure, options)
}

/// [`isoperimetric_chain`] with the rearrangement and both polar projection
/// measures already known.
pub fn chain_from_measures<G: IsoperimetricGeometry>(
    body: &G,
    star: &G,
    body_measure: f64,
    star_measure: f64,
    options: PettyOptions,
) -> Result<ChainReport> {
    let n = body.chart().dim();
    let c0 = chain_constant(n);
    let area = n as f64 * unit_ball_volume(n);
    let profile = body.profile();
    Ok(ChainReport {
        star_perimeter: c0 * star.chart().perimeter()?,
        star_inverse: profile.inverse(star_measure / area)?,
        body_inverse: profile.inverse(body_measure / area)?,
        body_perimeter: c0 * body.chart().perimeter()?,
        eps_quad: options.eps_quad,
        equality_band: options.equality_band,
    })
}

/// Checks that `F^-1` reverses order on `count` increasing values inside the range of `F`.
pub fn inverse_is_monotone(profile: &MonotoneProfile, lo: f64, hi: f64, count: usize) -> Result<bool> {
    if !(lo < hi) || count < 2 {
        return Err(GeomError::OutOfRange { value: lo, lo, hi });
    }
    let mut prev = f64::INFINITY;
    for k in 0..count {
        let y = lo + (hi - lo) * k as f64 / (count - 1) as f64;
        let x = profile.inverse(y)?;
        if x >= prev {
            return Ok(false);
        }
        prev = x;
    }
    Ok(true)
}

/// Euclidean star body with volume, Euclidean Steiner symmetrization and the
/// volume of the polar projection body.
#[derive(Debug, Clone)]
pub struct EuclideanBody(pub StarBody);

impl PettyGeometry for EuclideanBody {
    fn measure(&self) -> f64 {
        self.0.volume()
    }

    fn polar_projection_measure(&self) -> Result<f64> {
        Ok(self.0.projection_body()?.polar_volume())
    }

    fn symmetrize(&self, u: &Point) -> Result<(Self, f64)> {
        Ok((EuclideanBody(self.0.steiner(u)?), 1.0))
    }

    fn rearrangement(&self) -> Result<Self> {
        Ok(EuclideanBody(self.0.rearrangement()?))
    }

    fn distance(&self, other: &Self) -> Result<f64> {
        boundary_hausdorff(&self.0, &other.0, |x, y| (x - y).norm())
    }

    fn chart(&self) -> &StarBody {
        &self.0
    }
}
