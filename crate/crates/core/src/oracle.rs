//! Brute-force reference evaluators.
//!
//! These are slow on purpose and share no code with [`crate::qseries`]:
//! `℘` and `℘′` come straight from the lattice sums over `ℤ + ℤτ`, and `E₂`
//! from its row-ordered double sum. Box truncation of the lattice sums leaves
//! an `O(R⁻²)` error (odd terms cancel in a symmetric box), which
//! [`wp_richardson`] removes by extrapolating over `R, 2R, 4R`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::coords::UpperHalfTau;
use crate::error::{Error, Result};
use crate::qseries::EPS_POLE;

pub const DEFAULT_CUTOFF: u32 = 200;

/// Half side of the square box `|m|, |n| ≤ radius` of lattice points summed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct LatticeCutoff(u32);

impl LatticeCutoff {
    pub fn new(radius: u32) -> Result<Self> {
        if radius == 0 {
            return Err(Error::Domain("lattice cutoff radius must be at least 1".into()));
        }
        Ok(Self(radius))
    }

    pub fn radius(self) -> u32 {
        self.0
    }
}

impl Default for LatticeCutoff {
    fn default() -> Self {
        Self(DEFAULT_CUTOFF)
    }
}

/// Representative of `u` modulo `ℤ + ℤτ` in the centred parallelogram
/// `{a + bτ : a, b ∈ [−1/2, 1/2)}`, with the lattice vector subtracted as
/// `(m, n)` for `ω = m + nτ`.
pub fn reduce_lattice(u: Complex64, tau: UpperHalfTau) -> (Complex64, i64, i64) {
    let t = tau.value();
    let n = (u.im / t.im).round();
    let shifted = u - t * n;
    let m = (shifted.re - shifted.im / t.im * t.re).round();
    (shifted - m, m as i64, n as i64)
}

fn check_pole(u: Complex64, tau: UpperHalfTau) -> Result<()> {
    let (r, _, n) = reduce_lattice(u, tau);
    // the reduced point can still be closest to a neighbouring corner
    let t = tau.value();
    let distance = [-1.0, 0.0, 1.0]
        .iter()
        .flat_map(|&a| [-1.0, 0.0, 1.0].map(move |b| (r - t * b - a).norm()))
        .fold(f64::INFINITY, f64::min);
    if distance < EPS_POLE {
        return Err(Error::Pole { index: -n, distance });
    }
    Ok(())
}

/// Box partial sums `(℘_R(u), ℘′_R(u))` for each radius in `radii`, from one
/// sweep over the largest box. Rows are summed in parallel and combined in
/// a fixed order, so results do not depend on scheduling.
pub fn wp_box_sums(
    u: Complex64,
    tau: UpperHalfTau,
    radii: &[LatticeCutoff],
) -> Result<Vec<(Complex64, Complex64)>> {
    check_pole(u, tau)?;
    let mut sorted: Vec<i64> = radii.iter().map(|c| c.radius() as i64).collect();
    sorted.sort_unstable();
    sorted.dedup();
    let Some(&outer) = sorted.last() else {
        return Ok(Vec::new());
    };
    let t = tau.value();
    let zero = Complex64::new(0.0, 0.0);

    // one entry per row n, holding that row's contribution to each radius
    let rows: Vec<Vec<(Complex64, Complex64)>> = (-outer..=outer)
        .into_par_iter()
        .map(|n| {
            let mut out = vec![(zero, zero); sorted.len()];
            let mut acc = (zero, zero);
            let term = |m: i64| {
                let omega = t * n as f64 + m as f64;
                let d = u - omega;
                let d2 = d * d;
                let mut wp = d2.inv();
                if m != 0 || n != 0 {
                    wp -= (omega * omega).inv();
                }
                (wp, -(d2 * d).inv() * 2.0)
            };
            let mut next = 0i64;
            for (slot, &radius) in sorted.iter().enumerate() {
                if radius < n.abs() {
                    continue;
                }
                for m in next..=radius {
                    let (a, b) = term(m);
                    acc.0 += a;
                    acc.1 += b;
                    if m != 0 {
                        let (a, b) = term(-m);
                        acc.0 += a;
                        acc.1 += b;
                    }
                }
                next = radius + 1;
                out[slot] = acc;
            }
            out
        })
        .collect();

    let mut totals = vec![(zero, zero); sorted.len()];
    for row in &rows {
        for (total, part) in totals.iter_mut().zip(row) {
            total.0 += part.0;
            total.1 += part.1;
        }
    }
    Ok(radii
        .iter()
        .map(|c| {
            let slot = sorted.binary_search(&(c.radius() as i64)).unwrap();
            totals[slot]
        })
        .collect())
}

/// `℘(u; τ)` summed over the box `|m|, |n| ≤ radius`:
/// `1/u² + Σ′ [1/(u − ω)² − 1/ω²]`.
pub fn wp_lattice(u: Complex64, tau: UpperHalfTau, cutoff: LatticeCutoff) -> Result<Complex64> {
    Ok(wp_box_sums(u, tau, &[cutoff])?[0].0)
}

/// `℘′(u; τ) = −2·Σ_ω 1/(u − ω)³` over the same box.
pub fn wp_prime_lattice(u: Complex64, tau: UpperHalfTau, cutoff: LatticeCutoff) -> Result<Complex64> {
    Ok(wp_box_sums(u, tau, &[cutoff])?[0].1)
}

/// Both box sums at once.
pub fn wp_pair_lattice(
    u: Complex64,
    tau: UpperHalfTau,
    cutoff: LatticeCutoff,
) -> Result<(Complex64, Complex64)> {
    Ok(wp_box_sums(u, tau, &[cutoff])?[0])
}

/// Extrapolates `v(R), v(2R), v(4R)` assuming `v(R) = V + a·R⁻² + b·R⁻⁴ + …`.
pub fn richardson(v: [Complex64; 3]) -> Complex64 {
    let first = (v[1] * 4.0 - v[0]) / 3.0;
    let second = (v[2] * 4.0 - v[1]) / 3.0;
    (second * 16.0 - first) / 15.0
}

/// `(℘, ℘′)` extrapolated from the boxes of radius `R`, `2R` and `4R`.
pub fn wp_richardson(
    u: Complex64,
    tau: UpperHalfTau,
    base: LatticeCutoff,
) -> Result<(Complex64, Complex64)> {
    let r = base.radius();
    let radii = [base, LatticeCutoff::new(2 * r)?, LatticeCutoff::new(4 * r)?];
    let s = wp_box_sums(u, tau, &radii)?;
    Ok((
        richardson([s[0].0, s[1].0, s[2].0]),
        richardson([s[0].1, s[1].1, s[2].1]),
    ))
}

/// `1/sin²(πmτ)`, which is negligible once `|Im(πmτ)|` is large.
fn inv_sin_sq(x: Complex64) -> Complex64 {
    if x.im.abs() > 300.0 {
        return Complex64::new(0.0, 0.0);
    }
    let s = x.sin();
    (s * s).inv()
}

/// `E₂(τ) = (3/π²)·Σ_m (Σ′_n 1/(mτ + n)²)`, inner sum over `n` first,
/// rows `|m| ≤ radius`.
///
/// Each inner sum is replaced by its closed form: `π²/3` for `m = 0` and
/// `π²/sin²(πmτ)` otherwise.
pub fn e2_double_sum(tau: UpperHalfTau, cutoff: LatticeCutoff) -> Complex64 {
    let t = tau.value();
    let r = cutoff.radius() as i64;
    let rows: Complex64 = (-r..=r)
        .filter(|&m| m != 0)
        .map(|m| inv_sin_sq(t * (PI * m as f64)) * (PI * PI))
        .sum();
    (rows + PI * PI / 3.0) * (3.0 / (PI * PI))
}

/// Asymptotic trigamma `ψ′(x) = Σ_{k≥0} 1/(x + k)²`, accurate for `|x| ≳ 20`
/// away from the negative real axis.
fn trigamma_asymptotic(x: Complex64) -> Complex64 {
    let inv = x.inv();
    let inv2 = inv * inv;
    // 1/x + 1/(2x²) + Σ B_{2k}/x^{2k+1}
    let series = Complex64::new(1.0 / 6.0, 0.0)
        + inv2
            * (Complex64::new(-1.0 / 30.0, 0.0)
                + inv2
                    * (Complex64::new(1.0 / 42.0, 0.0)
                        + inv2 * (Complex64::new(-1.0 / 30.0, 0.0) + inv2 * (5.0 / 66.0))));
    inv + inv2 * 0.5 + inv2 * inv * series
}

/// Same row-ordered double sum as [`e2_double_sum`], with every inner sum
/// taken explicitly over `|n| ≤ radius` and the two remaining tails
/// `Σ_{n>R} 1/(n ± mτ)²` closed by the trigamma asymptotic series.
///
/// `τ` is first translated to `|Re τ| ≤ 1/2`; each full inner sum is
/// unchanged by that shift.
pub fn e2_double_sum_direct(tau: UpperHalfTau, cutoff: LatticeCutoff) -> Complex64 {
    let t = tau.value();
    let t = t - t.re.round();
    let r = cutoff.radius() as i64;
    let tail_start = (r + 1) as f64;
    let rows: Vec<Complex64> = (-r..=r)
        .into_par_iter()
        .map(|m| {
            let c = t * m as f64;
            let mut row: Complex64 = (-r..=r)
                .filter(|&n| m != 0 || n != 0)
                .map(|n| {
                    let d = c + n as f64;
                    (d * d).inv()
                })
                .sum();
            row += trigamma_asymptotic(c + tail_start) + trigamma_asymptotic(-c + tail_start);
            row
        })
        .collect();
    rows.iter().sum::<Complex64>() * (3.0 / (PI * PI))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tau(re: f64, im: f64) -> UpperHalfTau {
        UpperHalfTau::new(c(re, im)).unwrap()
    }

    fn cut(r: u32) -> LatticeCutoff {
        LatticeCutoff::new(r).unwrap()
    }

    #[test]
    fn cutoff_must_be_positive() {
        assert!(LatticeCutoff::new(0).is_err());
        assert_eq!(LatticeCutoff::default().radius(), 200);
    }

    #[test]
    fn trigamma_against_direct_sum() {
        for x in [c(60.0, 0.0), c(50.0, 30.0), c(25.0, -40.0)] {
            let direct: Complex64 = (0..2_000_000)
                .map(|k| {
                    let d = x + k as f64;
                    (d * d).inv()
                })
                .sum();
            // remaining tail ≈ 1/(x + 2e6)
            let direct = direct + (x + 2_000_000.0 - 0.5).inv();
            assert!((direct - trigamma_asymptotic(x)).norm() < 1e-12, "{x}");
        }
    }

    #[test]
    fn wp_is_even_and_wp_prime_odd() {
        let t = tau(0.1, 1.2);
        let u = c(0.23, 0.31);
        let (a, ap) = wp_pair_lattice(u, t, cut(40)).unwrap();
        let (b, bp) = wp_pair_lattice(-u, t, cut(40)).unwrap();
        assert!((a - b).norm() < 1e-12 * a.norm());
        assert!((ap + bp).norm() < 1e-12 * ap.norm());
    }

    #[test]
    fn wp_periodic_within_cutoff_error() {
        let t = tau(-0.2, 0.9);
        let u = c(0.17, 0.2);
        let base = wp_lattice(u, t, cut(200)).unwrap();
        for shift in [c(1.0, 0.0), t.value()] {
            let shifted = wp_lattice(u + shift, t, cut(200)).unwrap();
            assert!((shifted - base).norm() < 5e-2, "{shift}");
        }
    }

    #[test]
    fn wp_half_period_for_large_im_tau() {
        // ℘(1/2) → (2π√−1)²(−1/4) − π²/3 = 2π²/3
        let v = wp_richardson(c(0.5, 0.0), tau(0.0, 6.0), cut(100)).unwrap();
        assert!((v.0 - c(2.0 * PI * PI / 3.0, 0.0)).norm() < 1e-6);
        assert!(v.1.norm() < 1e-8);
    }

    #[test]
    fn wp_prime_matches_finite_differences() {
        let t = tau(0.3, 1.05);
        let u = c(0.21, 0.4);
        let exact = wp_prime_lattice(u, t, cut(30)).unwrap();
        let err = |h: f64| {
            let fd = (wp_lattice(u + h, t, cut(30)).unwrap() - wp_lattice(u - h, t, cut(30)).unwrap())
                / (2.0 * h);
            (fd - exact).norm()
        };
        let (e1, e2) = (err(1e-3), err(5e-4));
        assert!(e2 < e1 / 3.5, "{e1} {e2}");
        assert!(e2 < 1e-3);
    }

    #[test]
    fn box_sums_nest() {
        let t = tau(0.05, 1.3);
        let u = c(0.11, -0.27);
        let sums = wp_box_sums(u, t, &[cut(5), cut(12), cut(7)]).unwrap();
        for (i, r) in [5, 12, 7].into_iter().enumerate() {
            let single = wp_pair_lattice(u, t, cut(r)).unwrap();
            assert!((sums[i].0 - single.0).norm() < 1e-12);
            assert!((sums[i].1 - single.1).norm() < 1e-12);
        }
    }

    #[test]
    fn lattice_poles() {
        let t = tau(0.4, 0.8);
        let r = wp_lattice(t.value() * 2.0 - 3.0, t, cut(10));
        assert!(matches!(r, Err(Error::Pole { index: -2, .. })));
        assert!(wp_lattice(c(0.0, 0.0), t, cut(10)).is_err());
    }

    #[test]
    fn reduce_lattice_roundtrip() {
        let t = tau(0.35, 0.7);
        let u = c(3.3, -2.9);
        let (r, m, n) = reduce_lattice(u, t);
        assert!((r + t.value() * n as f64 + m as f64 - u).norm() < 1e-13);
        let b = r.im / t.value().im;
        let a = r.re - b * t.value().re;
        assert!(a.abs() <= 0.5 + 1e-12 && b.abs() <= 0.5 + 1e-12);
    }

    #[test]
    fn e2_routes_agree() {
        for t in [tau(0.0, 1.0), tau(0.31, 0.74), tau(-0.45, 1.9), tau(1.2, 0.6)] {
            let a = e2_double_sum(t, cut(200));
            let b = e2_double_sum_direct(t, cut(200));
            assert!((a - b).norm() < 1e-10, "{:?}: {a} vs {b}", t);
        }
    }

    #[test]
    fn e2_limits() {
        assert!((e2_double_sum(tau(0.0, 1.0), cut(200)) - 3.0 / PI).norm() < 1e-12);
        assert!((e2_double_sum(tau(0.2, 30.0), cut(50)) - 1.0).norm() < 1e-12);
        let a = e2_double_sum(tau(0.17, 0.8), cut(200));
        let b = e2_double_sum(tau(1.17, 0.8), cut(200));
        assert!((a - b).norm() < 1e-12);
    }
}
