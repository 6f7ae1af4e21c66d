//! Independent oracles: Monte-Carlo volumes, the hyperbolic chart metric,
//! disk-side construction, and the two kinds of measure-restoring correction.

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::{Rotation3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stargeom::hyperbolic::{chart_distance, disk_to_chart, HyperbolicBody, DEFAULT_DISK_MARGIN};
use stargeom::spherical::{SphericalBody, DEFAULT_POLE_MARGIN};
use stargeom::{GeomError, Point, SphereGrid, StarBody};

const SAMPLES: usize = 1_000_000;

fn monte_carlo_volume(body: &StarBody, seed: u64) -> f64 {
    let n = body.dim();
    let r = body.max_radius() * 1.01;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hits = (0..SAMPLES)
        .filter(|_| {
            let z = if n == 3 { rng.random_range(-r..r) } else { 0.0 };
            body.membership(&Point::new(rng.random_range(-r..r), rng.random_range(-r..r), z))
        })
        .count();
    hits as f64 / SAMPLES as f64 * (2.0 * r).powi(n as i32)
}

fn ellipsoid(grid: Arc<SphereGrid>, axes: [f64; 3]) -> StarBody {
    StarBody::from_fn(grid, |u| {
        1.0 / ((u.x / axes[0]).powi(2) + (u.y / axes[1]).powi(2) + (u.z / axes[2]).powi(2)).sqrt()
    })
    .unwrap()
}

/// Ball of radius `radius` centered at `center`, which must lie inside it.
fn off_center_ball(grid: Arc<SphereGrid>, center: Point, radius: f64) -> StarBody {
    StarBody::from_fn(grid, |u| {
        let b = center.dot(u);
        b + (b * b + radius * radius - center.norm_squared()).sqrt()
    })
    .unwrap()
}

#[test]
fn monte_carlo_volumes_match_quadrature() {
    let plane = ellipsoid(Arc::new(SphereGrid::new(2, 720).unwrap()), [1.3, 0.6, 1.0]);
    let space = ellipsoid(Arc::new(SphereGrid::new(3, 32).unwrap()), [1.2, 0.8, 0.5]);
    for (body, exact, seed) in [(plane, PI * 1.3 * 0.6, 1), (space, 4.0 / 3.0 * PI * 1.2 * 0.8 * 0.5, 2)] {
        let mc = monte_carlo_volume(&body, seed);
        assert!((mc - body.volume()).abs() / body.volume() < 1e-2, "{mc} vs {}", body.volume());
        assert!((body.volume() - exact).abs() / exact < 1e-6, "{} vs {exact}", body.volume());
    }
}

#[test]
fn hyperbolic_chart_metric_is_sandwiched() {
    // |dy| >= ds >= |dy| / sqrt(1 + |y|^2) for the pullback metric, probed by
    // geodesic distances over chart steps of length 1e-4.
    const STEP: f64 = 1e-4;
    const SLACK: f64 = 1e-3;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..2000 {
        let y = Point::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let d = Point::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let dy = d.normalize() * STEP;
        let ds = chart_distance(&y, &(y + dy));
        let upper = dy.norm();
        let mid = y + 0.5 * dy;
        let lower = upper / (1.0 + mid.norm_squared()).sqrt();
        assert!(ds <= upper * (1.0 + SLACK), "ds {ds} above |dy| {upper} at {y:?}");
        assert!(ds >= lower * (1.0 - SLACK), "ds {ds} below {lower} at {y:?}");
    }
}

#[test]
fn disk_and_chart_constructions_agree() {
    let grid = Arc::new(SphereGrid::new(2, 360).unwrap());
    let disk: Vec<f64> = grid.nodes().iter().map(|u| 0.55 + 0.2 * (3.0 * u.y.atan2(u.x)).cos()).collect();
    let from_disk = HyperbolicBody::from_disk(grid.clone(), &disk, DEFAULT_DISK_MARGIN).unwrap();
    let chart = StarBody::new(grid.clone(), disk.iter().map(|&r| disk_to_chart(r)).collect()).unwrap();
    let from_chart = HyperbolicBody::new(chart, DEFAULT_DISK_MARGIN).unwrap();
    for (a, b) in from_disk.chart().samples().iter().zip(from_chart.chart().samples()) {
        assert!((a - b).abs() <= 1e-10 * b.max(1.0));
    }
    for (a, b) in from_disk.disk_radii().iter().zip(&disk) {
        assert!((a - b).abs() <= 1e-10);
    }
    // A disk body that reaches the margin is rejected on both sides.
    let too_big: Vec<f64> = disk.iter().map(|r| r + 0.3).collect();
    assert!(HyperbolicBody::from_disk(grid.clone(), &too_big, DEFAULT_DISK_MARGIN).is_err());
    let chart = StarBody::new(grid, too_big.iter().map(|&r| disk_to_chart(r.min(0.999))).collect()).unwrap();
    assert!(matches!(HyperbolicBody::new(chart, DEFAULT_DISK_MARGIN), Err(GeomError::DiskMargin { .. })));
}

/// Extent of `body` along `v`, `h(v) + h(-v)`.
fn width(body: &StarBody, v: &Point) -> f64 {
    body.support(v) + body.support(&-v)
}

#[test]
fn spherical_chords_scale_but_hyperbolic_bodies_dilate() {
    let grid = Arc::new(SphereGrid::new(2, 720).unwrap());
    let chart = off_center_ball(grid, Point::new(0.25, 0.1, 0.0), 0.6);
    let u = Point::x();
    let v = Point::y();

    let sph = SphericalBody::new(chart.clone(), DEFAULT_POLE_MARGIN).unwrap();
    let s = sph.steiner(&u).unwrap();
    assert!(s.r_k < 1.0 - 1e-3, "r_K {} too close to 1 to tell the readings apart", s.r_k);
    let (before, after) = (width(&chart, &v), width(s.body.chart(), &v));
    assert!((after - before).abs() <= 1e-6 * before, "spherical width {before} -> {after}");

    let hyp = HyperbolicBody::new(chart.clone(), DEFAULT_DISK_MARGIN).unwrap();
    let h = hyp.steiner(&u).unwrap();
    assert!(h.r_k < 1.0 - 1e-3, "r_K {} too close to 1 to tell the readings apart", h.r_k);
    let after = width(h.body.chart(), &v);
    assert!((after - h.r_k * before).abs() <= 1e-6 * before, "hyperbolic width {before} -> {after}, r_K {}", h.r_k);
}

#[test]
fn balls_are_fixed_by_steiner_symmetrization() {
    for (dim, res) in [(2, 360), (3, 24)] {
        let grid = Arc::new(SphereGrid::new(dim, res).unwrap());
        let ball = StarBody::ball(grid.clone(), 0.8).unwrap();
        let u = Point::new(0.6, -0.48, if dim == 3 { 0.64 } else { 0.0 }).normalize();
        assert!(ball.steiner(&u).unwrap().radial_distance(&ball).unwrap() <= 1e-9);
        let cap = SphericalBody::cap(grid.clone(), 0.7, DEFAULT_POLE_MARGIN).unwrap();
        assert!(cap.steiner(&u).unwrap().body.chart().radial_distance(cap.chart()).unwrap() <= 1e-9);
        let hball = HyperbolicBody::ball(grid, 0.5, DEFAULT_DISK_MARGIN).unwrap();
        assert!(hball.steiner(&u).unwrap().body.chart().radial_distance(hball.chart()).unwrap() <= 1e-9);
    }
}

#[test]
fn steiner_commutes_with_rotations() {
    let grid = Arc::new(SphereGrid::new(3, 24).unwrap());
    let body = ellipsoid(grid, [1.1, 0.7, 0.5]);
    let u = Point::new(1.0, 1.0, 1.0).normalize();
    let rotation = Rotation3::from_axis_angle(&Vector3::z_axis(), 0.9).into_inner();
    let lhs = body.transformed(&rotation).unwrap().steiner(&(rotation * u)).unwrap();
    let rhs = body.steiner(&u).unwrap().transformed(&rotation).unwrap();
    let d = lhs.radial_distance(&rhs).unwrap();
    assert!(d <= 1e-3, "d_R {d}");
}

#[test]
fn spherical_projection_bodies_depend_continuously_on_the_body() {
    let grid = Arc::new(SphereGrid::new(2, 720).unwrap());
    let chart = ellipsoid(grid, [0.8, 0.45, 1.0]);
    let limit = SphericalBody::new(chart.clone(), DEFAULT_POLE_MARGIN).unwrap().projection_body().unwrap();
    let mut previous = f64::INFINITY;
    for k in 1..=8 {
        let scale = 1.0 + 0.2f64.powi(k);
        let body = SphericalBody::new(chart.scaled(scale).unwrap(), DEFAULT_POLE_MARGIN).unwrap();
        let d = body.projection_body().unwrap().chart().radial_distance(limit.chart()).unwrap();
        assert!(d < previous, "distance {d} did not drop below {previous}");
        previous = d;
    }
    assert!(previous < 1e-4);
}
