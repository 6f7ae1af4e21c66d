//! Scalar numerics: ball volumes, root finding, one-dimensional quadrature and
//! the radial kernels that turn chart radii into intrinsic measures.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{GeomError, Result};

/// Volume of the Euclidean unit ball in `R^n`, `pi^(n/2) / Gamma(n/2 + 1)`.
///
/// Uses the recurrence `w_n = 2 pi w_(n-2) / n`, exact up to rounding for every `n`.
pub fn unit_ball_volume(n: usize) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * PI / n as f64 * unit_ball_volume(n - 2),
    }
}

/// Surface area of the unit sphere `S^(n-1)`, equal to `n w_n`.
pub fn unit_sphere_area(n: usize) -> f64 {
    n as f64 * unit_ball_volume(n)
}

/// Bisection on a bracketing interval. Returns the midpoint of the final
/// bracket once its width is at most `tol`; an exact zero ends the search early.
pub fn bisect<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return Err(GeomError::NoSignChange { lo: a, hi: b });
    }
    // 200 halvings exhaust any f64 bracket.
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Illinois false position on `[lo, hi]` with known endpoint values of opposite
/// sign. Faster than bisection on smooth functions and never leaves the bracket.
pub fn bracket_root<F>(mut f: F, lo: f64, hi: f64, flo: f64, fhi: f64, xtol: f64) -> f64
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b, mut fa, mut fb) = (lo, hi, flo, fhi);
    if fa == 0.0 {
        return a;
    }
    if fb == 0.0 {
        return b;
    }
    debug_assert!(fa.signum() != fb.signum(), "bracket_root needs a sign change");
    let mut side = 0i8;
    for _ in 0..100 {
        let mut c = (a * fb - b * fa) / (fb - fa);
        if !(c > a.min(b) && c < a.max(b)) {
            c = 0.5 * (a + b);
        }
        if (b - a).abs() <= xtol {
            return c;
        }
        let fc = f(c);
        if fc == 0.0 {
            return c;
        }
        if fc.signum() == fb.signum() {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
        if (b - a).abs() <= xtol {
            return (a * fb - b * fa) / (fb - fa);
        }
    }
    0.5 * (a + b)
}

/// Brent's method (parabolic steps with golden-section fallback) for a local
/// maximum of `f` on `[a, b]`, to abscissa tolerance `tol`.
pub fn brent_max<F>(mut f: F, a: f64, b: f64, tol: f64) -> (f64, f64)
where
    F: FnMut(f64) -> f64,
{
    const CGOLD: f64 = 0.381_966_011_250_105_1;
    let mut g = |x: f64| -f(x);
    let (mut a, mut b) = if a < b { (a, b) } else { (b, a) };
    let mut x = a + CGOLD * (b - a);
    let (mut w, mut v) = (x, x);
    let mut fx = g(x);
    let (mut fw, mut fv) = (fx, fx);
    let (mut d, mut e) = (0.0f64, 0.0f64);
    for _ in 0..200 {
        let xm = 0.5 * (a + b);
        let tol1 = 0.5 * tol + 1e-15 * x.abs();
        let tol2 = 2.0 * tol1;
        if (x - xm).abs() <= tol2 - 0.5 * (b - a) {
            break;
        }
        let mut golden = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            if p.abs() < (0.5 * q * e).abs() && p > q * (a - x) && p < q * (b - x) {
                e = d;
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = tol1.copysign(xm - x);
                }
                golden = false;
            }
        }
        if golden {
            e = if x >= xm { a - x } else { b - x };
            d = CGOLD * e;
        }
        let u = if d.abs() >= tol1 { x + d } else { x + tol1.copysign(d) };
        let fu = g(u);
        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            (v, fv) = (w, fw);
            (w, fw) = (x, fx);
            (x, fx) = (u, fu);
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                (v, fv) = (w, fw);
                (w, fw) = (u, fu);
            } else if fu <= fv || v == x || v == w {
                (v, fv) = (u, fu);
            }
        }
    }
    (x, -fx)
}

/// Gauss-Legendre nodes (ascending) and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d.is_finite() {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

fn gl10() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(10))
}

fn gl_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let (x, w) = gl10();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    half * x.iter().zip(w).map(|(xi, wi)| wi * f(mid + half * xi)).sum::<f64>()
}

/// Adaptive Gauss-Legendre quadrature of `f` on `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_gauss_legendre<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    fn recurse<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let left = gl_panel(f, a, m);
        let right = gl_panel(f, m, b);
        let split = left + right;
        if depth == 0 || (split - whole).abs() <= tol {
            return split;
        }
        recurse(f, a, m, left, 0.5 * tol, depth - 1) + recurse(f, m, b, right, 0.5 * tol, depth - 1)
    }
    if a == b {
        return 0.0;
    }
    let whole = gl_panel(&f, a, b);
    recurse(&f, a, b, whole, tol, 40)
}

/// Absolute tolerance used by the generic radial quadratures.
pub const RADIAL_QUAD_TOL: f64 = 1e-12;

/// Radial density of a chart: the intrinsic volume element is
/// `weight(r) r^(n-1) dr du` in polar chart coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RadialWeight {
    /// `weight = 1`.
    Euclidean,
    /// Gnomonic chart of the sphere, `weight = (1 + r^2)^(-(n+1)/2)`.
    Spherical,
    /// Hyperbolic chart `y = 2x / (1 - |x|^2)`, `weight = (1 + r^2)^(-1/2)`.
    Hyperbolic,
}

impl RadialWeight {
    pub fn weight(self, n: usize, r: f64) -> f64 {
        match self {
            RadialWeight::Euclidean => 1.0,
            RadialWeight::Spherical => (1.0 + r * r).powf(-0.5 * (n as f64 + 1.0)),
            RadialWeight::Hyperbolic => 1.0 / (1.0 + r * r).sqrt(),
        }
    }

    /// `int_0^upper weight(r) r^(n-1) dr`, closed form for `n = 2, 3`.
    pub fn cumulative(self, n: usize, upper: f64) -> f64 {
        let r = upper;
        match (self, n) {
            (RadialWeight::Euclidean, _) => r.powi(n as i32) / n as f64,
            (RadialWeight::Spherical, 2) => {
                let s = (1.0 + r * r).sqrt();
                r * r / (s * (1.0 + s))
            }
            (RadialWeight::Spherical, 3) => {
                if r < 1e-3 {
                    let r2 = r * r;
                    r * r2 * (1.0 / 3.0 - r2 * (2.0 / 5.0 - r2 * 3.0 / 7.0))
                } else {
                    0.5 * (r.atan() - r / (1.0 + r * r))
                }
            }
            (RadialWeight::Hyperbolic, 2) => r * r / ((1.0 + r * r).sqrt() + 1.0),
            (RadialWeight::Hyperbolic, 3) => {
                if r < 1e-3 {
                    let r2 = r * r;
                    r * r2 * (1.0 / 3.0 - r2 * (1.0 / 10.0 - r2 * 3.0 / 56.0))
                } else {
                    0.5 * (r * (1.0 + r * r).sqrt() - r.asinh())
                }
            }
            _ => self.cumulative_quadrature(n, upper),
        }
    }

    /// The same integral by adaptive Gauss-Legendre quadrature, for any `n`.
    pub fn cumulative_quadrature(self, n: usize, upper: f64) -> f64 {
        let f = |r: f64| self.weight(n, r) * r.powi(n as i32 - 1);
        adaptive_gauss_legendre(f, 0.0, upper, RADIAL_QUAD_TOL)
    }

    /// Total mass of the chart, `int_0^inf weight(r) r^(n-1) dr` (infinite when unbounded).
    pub fn total(self, n: usize) -> f64 {
        match self {
            RadialWeight::Spherical => spherical_angle_cumulative(n, PI / 2.0),
            _ => f64::INFINITY,
        }
    }
}

/// `int_0^s sin^(n-1)(r) dr`, the geodesic-radius cumulative of the sphere.
pub fn spherical_angle_cumulative(n: usize, s: f64) -> f64 {
    match n {
        2 => {
            let h = (0.5 * s).sin();
            2.0 * h * h
        }
        3 => 0.5 * s - 0.25 * (2.0 * s).sin(),
        _ => adaptive_gauss_legendre(|r: f64| r.sin().powi(n as i32 - 1), 0.0, s, RADIAL_QUAD_TOL),
    }
}

/// Whether a profile increases or decreases on its domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
}

type ScalarFn = std::sync::Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A strictly monotone scalar function `(0, inf) -> R` with bisection inverse.
#[derive(Clone)]
pub struct MonotoneProfile {
    f: ScalarFn,
    monotonicity: Monotonicity,
    convex: bool,
    domain: (f64, f64),
}

impl std::fmt::Debug for MonotoneProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MonotoneProfile")
            .field("monotonicity", &self.monotonicity)
            .field("convex", &self.convex)
            .field("domain", &self.domain)
            .finish()
    }
}

impl MonotoneProfile {
    pub fn new<F>(f: F, monotonicity: Monotonicity, convex: bool, domain: (f64, f64)) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self { f: std::sync::Arc::new(f), monotonicity, convex, domain }
    }

    /// `F(t) = int_0^(pi/2 - arctan t) sin^(n-1)`, the measure profile of polar
    /// projection bodies on the sphere.
    pub fn spherical(n: usize) -> Self {
        Self::new(
            move |t| spherical_angle_cumulative(n, (1.0 / t).atan()),
            Monotonicity::Decreasing,
            true,
            (0.0, f64::INFINITY),
        )
    }

    /// `F(t) = int_0^(1/t) r^(n-1) / sqrt(1 + r^2)`, the hyperbolic counterpart.
    pub fn hyperbolic(n: usize) -> Self {
        Self::new(
            move |t| RadialWeight::Hyperbolic.cumulative(n, 1.0 / t),
            Monotonicity::Decreasing,
            true,
            (0.0, f64::INFINITY),
        )
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.f)(t)
    }

    pub fn monotonicity(&self) -> Monotonicity {
        self.monotonicity
    }

    pub fn is_convex(&self) -> bool {
        self.convex
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    /// Solves `F(x) = y` by bracket expansion and bisection.
    pub fn inverse(&self, y: f64) -> Result<f64> {
        let (lo_dom, hi_dom) = self.domain;
        let sign = match self.monotonicity {
            Monotonicity::Increasing => 1.0,
            Monotonicity::Decreasing => -1.0,
        };
        // g is increasing in x in both cases.
        let g = |x: f64| sign * (self.eval(x) - y);
        let mut lo = if lo_dom > 0.0 { lo_dom } else { 1.0 };
        let mut hi = if hi_dom.is_finite() { hi_dom } else { 1.0 };
        let mut steps = 0;
        while g(lo) > 0.0 {
            lo = 0.5 * (lo + lo_dom.max(0.0));
            steps += 1;
            if steps > 2100 || lo <= lo_dom || lo < 1e-300 {
                return Err(self.range_error(y));
            }
        }
        steps = 0;
        while g(hi) < 0.0 {
            hi *= 2.0;
            steps += 1;
            if steps > 2100 || hi >= hi_dom || !hi.is_finite() {
                return Err(self.range_error(y));
            }
        }
        let tol = 1e-15 * hi.abs().max(f64::MIN_POSITIVE);
        bisect(g, lo, hi, tol)
    }

    fn range_error(&self, y: f64) -> GeomError {
        let a = self.eval(self.domain.0.max(1e-300));
        let b = self.eval(if self.domain.1.is_finite() { self.domain.1 } else { 1e300 });
        GeomError::OutOfRange { value: y, lo: a.min(b), hi: a.max(b) }
    }
}
