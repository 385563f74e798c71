//! Seeded samplers for moduli, annulus points and loops, shared by the
//! identity checker, the examples and the test suites.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::Rng;

use crate::coords::{Nome, PathSpec, UpperHalfTau, WPoint};
use crate::TWO_PI_I;

/// `q` with `|q|` uniform in `[r_min, r_max]` and uniform argument.
pub fn nome<R: Rng>(rng: &mut R, r_min: f64, r_max: f64) -> Nome {
    let r = rng.gen_range(r_min..=r_max);
    let theta = rng.gen_range(-PI..PI);
    Nome::new(Complex64::from_polar(r, theta)).expect("radius inside (0, 1)")
}

/// `τ` with `Re τ ∈ [−1/2, 1/2]` and `Im τ ∈ [im_min, im_max]`.
pub fn tau<R: Rng>(rng: &mut R, im_min: f64, im_max: f64) -> UpperHalfTau {
    let t = Complex64::new(rng.gen_range(-0.5..=0.5), rng.gen_range(im_min..=im_max));
    UpperHalfTau::new(t).expect("positive imaginary part")
}

/// `τ` in the standard fundamental domain `|Re τ| ≤ 1/2, |τ| ≥ 1`, with
/// `Im τ ≤ im_max`.
pub fn tau_fundamental<R: Rng>(rng: &mut R, im_max: f64) -> UpperHalfTau {
    loop {
        let t = tau(rng, 3f64.sqrt() / 2.0, im_max);
        if t.value().norm() >= 1.0 {
            return t;
        }
    }
}

/// A point of the reduced annulus `|q| < |w| ≤ 1` at distance at least
/// `clearance` from the poles `w = 1` and `w = q` on its boundary.
pub fn reduced_w<R: Rng>(rng: &mut R, q: Nome, clearance: f64) -> WPoint {
    let r_q = q.abs();
    loop {
        let r = rng.gen_range(r_q..=1.0);
        if r <= r_q {
            continue;
        }
        let w = Complex64::from_polar(r, rng.gen_range(-PI..PI));
        if (w - 1.0).norm() >= clearance && (w - q.value()).norm() >= clearance {
            return WPoint::new(w).expect("non-zero");
        }
    }
}

/// `u = a + bτ` with `a, b ∈ [−1/2, 1/2)` at distance at least `clearance`
/// from every lattice point.
pub fn parallelogram_u<R: Rng>(rng: &mut R, tau: UpperHalfTau, clearance: f64) -> Complex64 {
    let t = tau.value();
    loop {
        let u = t * rng.gen_range(-0.5..0.5) + rng.gen_range(-0.5..0.5);
        let near = [-1.0, 0.0, 1.0]
            .iter()
            .flat_map(|&a| [-1.0, 0.0, 1.0].map(move |b| (u - t * b - a).norm()))
            .fold(f64::INFINITY, f64::min);
        if near >= clearance {
            return u;
        }
    }
}

/// A covering coordinate with `Re Log z ∈ [−re, re]` and `Im Log z` spread
/// over several sheets.
pub fn covering_logz<R: Rng>(rng: &mut R, re: f64, sheets: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-re..=re), rng.gen_range(-sheets..=sheets) * TAU)
}

/// A counterclockwise star-shaped polygon around 0 with 3 to 8 vertices.
/// Consecutive vertices are less than `π` apart in angle, so the loop
/// winds once.
pub fn loop_around_origin<R: Rng>(rng: &mut R) -> PathSpec {
    loop {
        let k = rng.gen_range(3..=8usize);
        let mut angles: Vec<f64> = (0..k).map(|_| rng.gen_range(0.0..TAU)).collect();
        angles.sort_by(f64::total_cmp);
        let gaps_ok = angles
            .windows(2)
            .map(|p| p[1] - p[0])
            .chain(std::iter::once(angles[0] + TAU - angles[k - 1]))
            .all(|g| g < PI * 0.95 && g > 1e-3);
        if !gaps_ok {
            continue;
        }
        let offset = rng.gen_range(-PI..PI);
        let vertices = angles
            .iter()
            .map(|a| Complex64::from_polar(rng.gen_range(0.2..3.0), a + offset))
            .collect();
        if let Ok(path) = PathSpec::closed(vertices) {
            return path;
        }
    }
}

/// `2π√−1/τ · s`: the covering coordinate reached after `s` winding steps.
pub fn winding_steps(tau: UpperHalfTau, s: f64) -> Complex64 {
    TWO_PI_I / tau.value() * s
}
