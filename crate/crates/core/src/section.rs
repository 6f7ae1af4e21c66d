//! Planar cross-sections of star bodies: chord half-lengths perpendicular to a
//! direction, and total variation of a coordinate along the boundary curve.
//!
//! A section is a star-shaped closed curve `alpha -> rho(alpha) (cos alpha, sin alpha)`
//! given by a periodic interpolant in the section's own angle.

use std::f64::consts::PI;

use crate::interp::PeriodicSpline;
use crate::numeric::{bracket_root, brent_max};

const TWO_PI: f64 = 2.0 * PI;
/// Sub-samples per interpolant spacing when splitting a curve into monotone pieces.
const SUBSAMPLE: usize = 4;
/// Angular tolerance for refining extrema.
const EXTREMUM_TOL: f64 = 1e-10;

/// Local extrema of a periodic function, refined on the interpolant. Returns
/// `(angle, value)` pairs in increasing angle order.
pub(crate) fn periodic_extrema<F: Fn(f64) -> f64>(f: F, samples: &[f64]) -> Vec<(f64, f64)> {
    let m = samples.len();
    let h = TWO_PI / m as f64;
    let mut out = Vec::new();
    for k in 0..m {
        let prev = samples[(k + m - 1) % m];
        let here = samples[k];
        let next = samples[(k + 1) % m];
        let (dl, dr) = (here - prev, next - here);
        let is_max = dl > 0.0 && dr <= 0.0;
        let is_min = dl < 0.0 && dr >= 0.0;
        if !(is_max || is_min) {
            continue;
        }
        let a = h * k as f64;
        let (x, v) = if is_max {
            brent_max(&f, a - h, a + h, EXTREMUM_TOL)
        } else {
            let (x, v) = brent_max(|t| -f(t), a - h, a + h, EXTREMUM_TOL);
            (x, -v)
        };
        // Keep the sample if refinement went the wrong way.
        let (x, v) = if (is_max && v < here) || (is_min && v > here) { (a, here) } else { (x, v) };
        out.push((x, v));
    }
    out
}

/// Total variation of a periodic function over one period, from its extrema.
pub(crate) fn periodic_total_variation<F: Fn(f64) -> f64>(f: F, samples: &[f64]) -> f64 {
    let ext = periodic_extrema(f, samples);
    if ext.len() < 2 {
        return 0.0;
    }
    let n = ext.len();
    (0..n).map(|i| (ext[(i + 1) % n].1 - ext[i].1).abs()).sum()
}

/// Which part of the chord axis a table covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum TableRange {
    /// The whole projection `[-X_minus, X_plus]`.
    Full,
    /// Only `[0, X_plus]`.
    Positive,
}

/// Squared chord half-lengths `l(s)^2` of a planar section, for lines parallel to
/// a unit direction `u` at signed offset `s` along `e = (u_y, -u_x)`.
#[derive(Debug, Clone)]
pub(crate) struct HalfLengthTable {
    lo: f64,
    hi: f64,
    ds: f64,
    sq: Vec<f64>,
}

impl HalfLengthTable {
    /// Sweeps the boundary curve once. Every monotone piece of `s(alpha)` crosses
    /// the table abscissae it spans; increasing pieces enter (lower chord end),
    /// decreasing pieces exit (upper chord end).
    pub(crate) fn build(spline: &PeriodicSpline, u: (f64, f64), range: TableRange, n_tab: usize) -> Self {
        let e = (u.1, -u.0);
        let point = |a: f64| {
            let r = spline.eval(a);
            let (s, c) = a.sin_cos();
            (r * c, r * s)
        };
        let s_of = |a: f64| {
            let (x, y) = point(a);
            x * e.0 + y * e.1
        };
        let t_of = |a: f64| {
            let (x, y) = point(a);
            x * u.0 + y * u.1
        };
        let m = spline.len() * SUBSAMPLE;
        let h = TWO_PI / m as f64;
        let mut alpha: Vec<f64> = (0..m).map(|k| h * k as f64).collect();
        // s = rho cos(alpha - alpha_e), so only the half-turn about alpha_e can reach
        // positive abscissae; elsewhere a negative placeholder keeps the sweep idle.
        let alpha_e = e.1.atan2(e.0);
        let needed = |a: f64| {
            let offset = (a - alpha_e + PI).rem_euclid(TWO_PI) - PI;
            range == TableRange::Full || offset.abs() <= 0.5 * PI + 2.0 * h
        };
        let mut s: Vec<f64> = alpha.iter().map(|&a| if needed(a) { s_of(a) } else { -1.0 }).collect();
        let extrema = periodic_extrema(s_of, &s);
        for (a, v) in extrema {
            let k = ((a.rem_euclid(TWO_PI) / h).round() as usize) % m;
            // Extrema sit within one sub-sample of their detecting node.
            let mut a_adj = a;
            if k == 0 && a > PI {
                a_adj -= TWO_PI;
            }
            alpha[k] = a_adj;
            s[k] = v;
        }
        let lo_full = s.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = s.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = match range {
            TableRange::Full => lo_full,
            TableRange::Positive => 0.0,
        };
        let ds = (hi - lo) / n_tab as f64;
        let abscissa = |j: usize| lo + (j as f64 + 0.5) * ds;
        let mut sum = vec![0.0; n_tab];
        let index_range = |a: f64, b: f64| {
            // Abscissae in [a, b).
            let first = ((a - lo) / ds - 0.5).ceil().max(0.0) as usize;
            let mut j = first.saturating_sub(1);
            while j < n_tab && abscissa(j) < a {
                j += 1;
            }
            let start = j;
            while j < n_tab && abscissa(j) < b {
                j += 1;
            }
            start..j
        };
        for k in 0..m {
            let k1 = (k + 1) % m;
            let (a0, mut a1) = (alpha[k], alpha[k1]);
            if k1 == 0 {
                a1 += TWO_PI;
            }
            let (s0, s1) = (s[k], s[k1]);
            if s0 == s1 {
                continue;
            }
            let (smin, smax, sign) = if s1 > s0 { (s0, s1, -1.0) } else { (s1, s0, 1.0) };
            for j in index_range(smin, smax) {
                let target = abscissa(j);
                let root = bracket_root(|a| s_of(a) - target, a0, a1, s0 - target, s1 - target, 1e-14);
                sum[j] += sign * t_of(root);
            }
        }
        let sq = sum.into_iter().map(|l| (0.5 * l).max(0.0).powi(2)).collect();
        Self { lo, hi, ds, sq }
    }

    /// Half-length at offset `s`; zero outside the projection.
    pub(crate) fn half_length(&self, s: f64) -> f64 {
        if s < self.lo || s > self.hi {
            return 0.0;
        }
        let n = self.sq.len();
        let q = (s - self.lo) / self.ds - 0.5;
        let i0 = ((q.floor() as isize) - 1).clamp(0, n as isize - 4) as usize;
        let x = q - i0 as f64;
        // Lagrange weights on the abscissae 0, 1, 2, 3.
        let w0 = -(x - 1.0) * (x - 2.0) * (x - 3.0) / 6.0;
        let w1 = x * (x - 2.0) * (x - 3.0) / 2.0;
        let w2 = -x * (x - 1.0) * (x - 3.0) / 2.0;
        let w3 = x * (x - 1.0) * (x - 2.0) / 6.0;
        let v = w0 * self.sq[i0] + w1 * self.sq[i0 + 1] + w2 * self.sq[i0 + 2] + w3 * self.sq[i0 + 3];
        v.max(0.0).sqrt()
    }

    /// Radius of the symmetral scaled by `r` along the in-plane direction with
    /// components `b` along `e` and `c` along `u`: the boundary of
    /// `{(s, t) : |t| <= r l(s)}` on that ray.
    pub(crate) fn symmetral_radius(&self, b: f64, c: f64, r: f64) -> f64 {
        let c = c.abs();
        let reach = if b >= 0.0 { self.hi } else { -self.lo };
        if b.abs() < 1e-13 {
            return r * self.half_length(0.0) / c;
        }
        if c < 1e-13 {
            return reach / b.abs();
        }
        let t_max = reach / b.abs();
        let phi = |t: f64| r * self.half_length(b * t) - c * t;
        let end = phi(t_max * (1.0 - 1e-15));
        if end >= 0.0 {
            return t_max;
        }
        let start = phi(0.0);
        if start <= 0.0 {
            return 0.0;
        }
        bracket_root(phi, 0.0, t_max, start, end, 1e-14 * t_max)
    }
}
