//! Coordinates on the tower `ℂ_{Log z} → ℂ_z^×` and on the range `ℂ_w^×`.
//!
//! The monodromy group `Γ_g = 2π√−1·ℤ` and the winding group
//! `Γ_w = (2π√−1/τ)·ℤ` both act on the covering coordinate `Log z` by
//! translation. The lift `w = exp(τ·Log z)` turns the first action into
//! multiplication by `q = exp(2π√−1·τ)` and is invariant under the second.
//!
//! The base point is `z = 1` with `Log z = 0`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::TWO_PI_I;

/// Relative mismatch allowed between `exp(start)` and the first path vertex.
pub const START_MATCH_TOL: f64 = 1e-9;

/// Minimum distance from a path segment to the origin, relative to the
/// segment's scale.
pub const PATH_CLEARANCE: f64 = 1e-12;

/// Bisection depth limit for a single segment during branch tracking.
const MAX_SUBDIVISION_DEPTH: u32 = 64;

/// A modulus `τ` in the upper half plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpperHalfTau(Complex64);

impl UpperHalfTau {
    pub fn new(tau: Complex64) -> Result<Self> {
        if !(tau.re.is_finite() && tau.im.is_finite()) {
            return Err(Error::Domain(format!("tau = {tau} is not finite")));
        }
        if tau.im <= 0.0 {
            return Err(Error::Domain(format!("Im(tau) = {} must be positive", tau.im)));
        }
        Ok(Self(tau))
    }

    /// Recovers `τ` from a nome via the principal logarithm, `τ = Log q / 2π√−1`.
    ///
    /// The result has `Re τ ∈ (−1/2, 1/2]`.
    pub fn from_nome(q: Nome) -> Result<Self> {
        Self::new(q.value().ln() / TWO_PI_I)
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn nome(self) -> Result<Nome> {
        nome(self)
    }
}

/// The nome `q`, with `0 < |q| < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Nome(Complex64);

impl Nome {
    pub fn new(q: Complex64) -> Result<Self> {
        let r = q.norm();
        if !r.is_finite() {
            return Err(Error::Domain(format!("q = {q} is not finite")));
        }
        if r == 0.0 || r >= 1.0 {
            return Err(Error::Domain(format!("|q| = {r} must lie in (0, 1)")));
        }
        Ok(Self(q))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn abs(self) -> f64 {
        self.0.norm()
    }

    /// `q^n` by repeated squaring.
    pub fn pow(self, n: i64) -> Complex64 {
        cpow(self.0, n)
    }
}

/// A value of `Log z` on the universal cover of `ℂ^×`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoveringPoint {
    pub logz: Complex64,
}

impl CoveringPoint {
    pub fn new(logz: Complex64) -> Self {
        Self { logz }
    }

    /// The point over `z` on the principal sheet (`Im Log z ∈ (−π, π]`).
    pub fn principal(z: Complex64) -> Result<Self> {
        if z == Complex64::new(0.0, 0.0) || !z.norm().is_finite() {
            return Err(Error::Domain(format!("z = {z} has no logarithm")));
        }
        Ok(Self { logz: z.ln() })
    }

    /// The projection `z = exp(Log z)`.
    pub fn project(self) -> Complex64 {
        self.logz.exp()
    }
}

/// A point of `ℂ_w^×`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WPoint(Complex64);

impl WPoint {
    pub fn new(w: Complex64) -> Result<Self> {
        if !(w.re.is_finite() && w.im.is_finite()) {
            return Err(Error::Domain(format!("w = {w} is not finite")));
        }
        if w.norm() == 0.0 {
            return Err(Error::Domain("w must be non-zero".into()));
        }
        Ok(Self(w))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }
}

/// A polyline in `ℂ_z^×` that stays away from the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSpec {
    vertices: Vec<Complex64>,
}

impl PathSpec {
    pub fn new(vertices: Vec<Complex64>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidContinuation(
                "a path needs at least two vertices".into(),
            ));
        }
        for (i, v) in vertices.iter().enumerate() {
            if !(v.re.is_finite() && v.im.is_finite()) || v.norm() == 0.0 {
                return Err(Error::InvalidContinuation(format!(
                    "vertex {i} = {v} is zero or not finite"
                )));
            }
        }
        for (i, pair) in vertices.windows(2).enumerate() {
            let (a, b) = (pair[0], pair[1]);
            let scale = a.norm().max(b.norm());
            if segment_origin_distance(a, b) <= PATH_CLEARANCE * scale {
                return Err(Error::InvalidContinuation(format!(
                    "segment {i} from {a} to {b} passes through 0"
                )));
            }
        }
        Ok(Self { vertices })
    }

    /// Closed polygon through `vertices`, returning to the first one.
    pub fn closed(mut vertices: Vec<Complex64>) -> Result<Self> {
        if let Some(&first) = vertices.first() {
            vertices.push(first);
        }
        Self::new(vertices)
    }

    /// Axis-aligned square loop with the given centre and half side, starting
    /// and ending at its lower-right corner.
    pub fn square_loop(center: Complex64, half_side: f64, counterclockwise: bool) -> Result<Self> {
        let corners = [
            Complex64::new(half_side, -half_side),
            Complex64::new(half_side, half_side),
            Complex64::new(-half_side, half_side),
            Complex64::new(-half_side, -half_side),
        ];
        let mut vertices: Vec<Complex64> = corners.iter().map(|c| center + c).collect();
        if !counterclockwise {
            vertices[1..].reverse();
        }
        Self::closed(vertices)
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    pub fn first(&self) -> Complex64 {
        self.vertices[0]
    }

    pub fn last(&self) -> Complex64 {
        self.vertices[self.vertices.len() - 1]
    }

    /// This path followed by `next`, which must start where this one ends.
    pub fn then(&self, next: &PathSpec) -> Result<Self> {
        let (end, start) = (self.last(), next.first());
        if (end - start).norm() > START_MATCH_TOL * end.norm() {
            return Err(Error::InvalidContinuation(format!(
                "cannot join a path ending at {end} to one starting at {start}"
            )));
        }
        let mut vertices = self.vertices.clone();
        vertices.extend_from_slice(&next.vertices[1..]);
        Self::new(vertices)
    }
}

fn segment_origin_distance(a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return a.norm();
    }
    let t = (-(a.re * d.re + a.im * d.im) / len2).clamp(0.0, 1.0);
    (a + d * t).norm()
}

/// `z^n` for any integer `n`, by repeated squaring.
pub fn cpow(z: Complex64, n: i64) -> Complex64 {
    let mut base = if n < 0 { z.inv() } else { z };
    let mut e = n.unsigned_abs();
    let mut acc = Complex64::new(1.0, 0.0);
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        e >>= 1;
        if e > 0 {
            base *= base;
        }
    }
    acc
}

/// `q = exp(2π√−1·τ)`.
pub fn nome(tau: UpperHalfTau) -> Result<Nome> {
    Nome::new((TWO_PI_I * tau.value()).exp())
}

/// The lifted map `w = exp(τ·Log z)`.
///
/// Fails only when the exponential leaves the representable range.
pub fn period_lift(p: CoveringPoint, tau: UpperHalfTau) -> Result<WPoint> {
    WPoint::new((tau.value() * p.logz).exp())
}

/// `u = τ/(2π√−1)·Log z`, so that `exp(2π√−1·u) = w`.
pub fn u_coord(p: CoveringPoint, tau: UpperHalfTau) -> Complex64 {
    tau.value() / TWO_PI_I * p.logz
}

/// Deck transformation by `n ∈ ℤ ≅ Γ_g`.
pub fn monodromy_act(p: CoveringPoint, n: i64) -> CoveringPoint {
    CoveringPoint::new(p.logz + TWO_PI_I * n as f64)
}

/// Translation by `n` generators of the winding group `Γ_w = (2π√−1/τ)·ℤ`.
pub fn winding_act(p: CoveringPoint, n: i64, tau: UpperHalfTau) -> CoveringPoint {
    CoveringPoint::new(p.logz + TWO_PI_I / tau.value() * n as f64)
}

/// Reduces `w` into the annulus `|q| < |w| ≤ 1` by the `q^ℤ` action.
///
/// Returns `(w·q^k, k)`.
pub fn reduce_annulus(w: WPoint, q: Nome) -> (WPoint, i64) {
    let ln_q = q.abs().ln();
    let ratio = w.value().norm().ln() / ln_q;
    let mut k = -(ratio.floor() as i64);
    let mut reduced = w.value() * q.pow(k);
    // floor() can land one step off when |w| sits on an annulus edge
    for _ in 0..4 {
        let r = reduced.norm();
        if r > 1.0 {
            reduced *= q.value();
            k += 1;
        } else if r <= q.abs() {
            reduced /= q.value();
            k -= 1;
        } else {
            break;
        }
    }
    (WPoint(reduced), k)
}

/// Continues `Log z` along `path` from `start`, tracking the branch.
///
/// Returns the end point on the cover and the number of sheets crossed,
/// which for a closed loop is its winding number about 0.
pub fn continue_log(path: &PathSpec, start: CoveringPoint) -> Result<(CoveringPoint, i64)> {
    let v0 = path.first();
    let z0 = start.project();
    if (z0 - v0).norm() > START_MATCH_TOL * v0.norm() {
        return Err(Error::InvalidContinuation(format!(
            "exp(start) = {z0} does not match the first vertex {v0}"
        )));
    }

    let total_arg: f64 = path
        .vertices()
        .windows(2)
        .map(|pair| arg_increment(pair[0], pair[1], 0))
        .sum();

    let v1 = path.last();
    let logz = Complex64::new(
        start.logz.re + (v1.norm().ln() - v0.norm().ln()),
        start.logz.im + total_arg,
    );
    let sheets = (total_arg - (v1.arg() - v0.arg())) / TAU;
    Ok((CoveringPoint::new(logz), sheets.round() as i64))
}

/// Continuous change of `arg z` along the segment `a → b`, bisected until
/// every piece turns by less than `π/2`.
fn arg_increment(a: Complex64, b: Complex64, depth: u32) -> f64 {
    let d = (b / a).arg();
    if d.abs() < FRAC_PI_2 || depth >= MAX_SUBDIVISION_DEPTH {
        debug_assert!(d.abs() < PI);
        return d;
    }
    let mid = (a + b) * 0.5;
    arg_increment(a, mid, depth + 1) + arg_increment(mid, b, depth + 1)
}
