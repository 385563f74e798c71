//! Truncated q-series with rigorous tail bounds.
//!
//! The central object is
//!
//! ```text
//!   W(w, q) = Σ_{m∈ℤ} w q^m / (1 − w q^m)²
//! ```
//!
//! which is invariant under `w ↦ w q` and under `(w, q) ↦ (1/w, 1/q)`, with
//! double poles on `w ∈ q^ℤ`. Evaluation first reduces `w` into the annulus
//! `|q| < |w| ≤ 1`. On that annulus every term with `m ≥ 1` has `|w q^m| ≤ |q|^m`
//! and every term with `m = −k ≤ −1`, rewritten through the involution as the
//! `k`-th term in `1/w`, has `|w^{-1} q^k| < |q|^{k−1}`. Both tails are then
//! dominated by geometric series, which fixes the truncation order.

mod eisenstein;
mod psi;

pub use eisenstein::{divisor_sigma, eval_e2, eval_e4, eval_e6, g2, g3};
pub use psi::eval_psi2;

use num_complex::Complex64;

use crate::coords::{cpow, reduce_annulus, Nome, WPoint};
use crate::error::{Error, Result};

/// Distance `|1 − w q^m|` below which a term is treated as a pole.
pub const EPS_POLE: f64 = 1e-8;

pub const DEFAULT_TOL: f64 = 1e-12;

pub const DEFAULT_MAX_TERMS: usize = 1_000_000;

/// Accuracy target and term budget shared by all series evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    pub tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_terms: DEFAULT_MAX_TERMS,
        }
    }
}

impl SeriesOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::Domain(format!("tolerance {} must be positive", self.tol)));
        }
        if self.max_terms == 0 {
            return Err(Error::Domain("max_terms must be at least 1".into()));
        }
        Ok(())
    }
}

/// Truncation order `N` (terms `m ∈ [−N, N]`, or `n ∈ [1, N]` for one-sided
/// series) together with a bound on everything left out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPlan {
    pub n_terms: usize,
    pub tail_bound: f64,
}

/// A truncated series value with its guaranteed tail bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    pub tail_bound: f64,
    pub n_terms: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kernel {
    /// `a / (1 − a)²`
    Value,
    /// `a (1 + a) / (1 − a)³`, i.e. `a·d/da` of the above
    LogDerivative,
}

impl Kernel {
    fn eval(self, a: Complex64, index: i64) -> Result<Complex64> {
        let one_minus = Complex64::new(1.0, 0.0) - a;
        let distance = one_minus.norm();
        if distance < EPS_POLE {
            return Err(Error::Pole { index, distance });
        }
        Ok(match self {
            Kernel::Value => a / (one_minus * one_minus),
            Kernel::LogDerivative => a * (a + 1.0) / (one_minus * one_minus * one_minus),
        })
    }

    /// Majorant of `|kernel(a)|` when `|a| ≤ r < 1`.
    fn majorant(self, r: f64) -> f64 {
        match self {
            Kernel::Value => 1.0 / ((1.0 - r) * (1.0 - r)),
            Kernel::LogDerivative => (1.0 + r) / ((1.0 - r) * (1.0 - r) * (1.0 - r)),
        }
    }

    /// Bound on the terms of the reduced series omitted by truncating at `n`.
    ///
    /// Terms `m ≥ n+1` have `|a| ≤ |q|^m ≤ |q|^{n+1}`; terms `m = −k`, `k ≥ n+1`,
    /// become `1/a` with `|1/a| < |q|^{k−1} ≤ |q|^n`. Each tail is the
    /// geometric sum of the `|a|` bounds times the kernel majorant.
    fn tail_bound(self, r: f64, n: usize) -> f64 {
        let upper = r.powi(n as i32 + 1);
        let lower = r.powi(n as i32);
        let geo = 1.0 / (1.0 - r);
        upper * geo * self.majorant(upper) + lower * geo * self.majorant(lower)
    }
}

/// The `m`-th term `w q^m / (1 − w q^m)²`.
pub fn w_term(w: Complex64, q: Complex64, m: i64) -> Result<Complex64> {
    Kernel::Value.eval(w * cpow(q, m), m)
}

/// The `m`-th term of `W′ = w·∂W/∂w`, namely `w q^m (1 + w q^m) / (1 − w q^m)³`.
pub fn w_prime_term(w: Complex64, q: Complex64, m: i64) -> Result<Complex64> {
    Kernel::LogDerivative.eval(w * cpow(q, m), m)
}

/// Symmetric partial sum `Σ_{m=−N}^{N}` of the defining series, evaluated
/// term by term without reduction. `q` may lie on either side of the unit
/// circle.
pub fn w_partial_sum(w: Complex64, q: Complex64, n_terms: usize) -> Result<Complex64> {
    let n = n_terms as i64;
    (-n..=n).map(|m| w_term(w, q, m)).sum()
}

fn plan(kernel: Kernel, w_red: WPoint, q: Nome, opts: &SeriesOptions) -> Result<TruncationPlan> {
    opts.validate()?;
    let r = q.abs();
    let abs_w = w_red.value().norm();
    if !(abs_w > r && abs_w <= 1.0) {
        return Err(Error::Domain(format!(
            "|w| = {abs_w} is outside the reduced annulus ({r}, 1]"
        )));
    }
    for n in 1..=opts.max_terms {
        let tail_bound = kernel.tail_bound(r, n);
        if tail_bound <= opts.tol {
            return Ok(TruncationPlan { n_terms: n, tail_bound });
        }
    }
    Err(Error::NonConvergence {
        tol: opts.tol,
        max_terms: opts.max_terms,
    })
}

/// Smallest order `N ≥ 1` whose tail bound for `W` at the reduced point
/// `w_red` is at most `opts.tol`.
pub fn plan_truncation(w_red: WPoint, q: Nome, opts: &SeriesOptions) -> Result<TruncationPlan> {
    plan(Kernel::Value, w_red, q, opts)
}

/// As [`plan_truncation`], for the cubic denominators of `W′`.
pub fn plan_truncation_prime(
    w_red: WPoint,
    q: Nome,
    opts: &SeriesOptions,
) -> Result<TruncationPlan> {
    plan(Kernel::LogDerivative, w_red, q, opts)
}

/// Reduced symmetric sum: `m = 0`, then the pairs `m = ±k`, with the
/// negative index rewritten via the involution.
fn reduced_sum(kernel: Kernel, w_red: Complex64, q: Complex64, n_terms: usize) -> Result<Complex64> {
    let w_inv = w_red.inv();
    // the involution maps the kernel to itself (Value) or to its negative (LogDerivative)
    let mirror = match kernel {
        Kernel::Value => 1.0,
        Kernel::LogDerivative => -1.0,
    };
    let mut sum = kernel.eval(w_red, 0)?;
    let mut qk = Complex64::new(1.0, 0.0);
    for k in 1..=n_terms as i64 {
        qk = if k % 32 == 0 { cpow(q, k) } else { qk * q };
        sum += kernel.eval(w_red * qk, k)?;
        sum += kernel.eval(w_inv * qk, -k)? * mirror;
    }
    Ok(sum)
}

fn eval(kernel: Kernel, w: WPoint, q: Nome, opts: &SeriesOptions) -> Result<SeriesValue> {
    let (w_red, _) = reduce_annulus(w, q);
    let plan = plan(kernel, w_red, q, opts)?;
    let value = reduced_sum(kernel, w_red.value(), q.value(), plan.n_terms)?;
    Ok(SeriesValue {
        value,
        tail_bound: plan.tail_bound,
        n_terms: plan.n_terms,
    })
}

/// Reduced symmetric partial sum of `W` at a caller-chosen order, after
/// moving `w` into the annulus. [`eval_w`] is this at the planned order.
pub fn w_reduced_partial_sum(w: WPoint, q: Nome, n_terms: usize) -> Result<Complex64> {
    let (w_red, _) = reduce_annulus(w, q);
    reduced_sum(Kernel::Value, w_red.value(), q.value(), n_terms)
}

/// `W(w, q)` to within `opts.tol`.
pub fn eval_w(w: WPoint, q: Nome, opts: &SeriesOptions) -> Result<SeriesValue> {
    eval(Kernel::Value, w, q, opts)
}

/// `W′(w, q) = w·∂W/∂w` to within `opts.tol`.
///
/// With `w = exp(2π√−1·u)` this gives `∂W/∂u = 2π√−1·W′`.
pub fn eval_w_prime(w: WPoint, q: Nome, opts: &SeriesOptions) -> Result<SeriesValue> {
    eval(Kernel::LogDerivative, w, q, opts)
}

/// Maps `(w, q)` with `|q| > 1` to `(1/w, 1/q)`. The flag records whether the
/// involution was applied.
pub fn normalize_nome(w: Complex64, q: Complex64) -> Result<(WPoint, Nome, bool)> {
    let w = WPoint::new(w)?;
    let r = q.norm();
    if r == 1.0 {
        return Err(Error::Domain("|q| = 1 is not admissible".into()));
    }
    if r > 1.0 && r.is_finite() {
        Ok((WPoint::new(w.value().inv())?, Nome::new(q.inv())?, true))
    } else {
        Ok((w, Nome::new(q)?, false))
    }
}

/// `W(w, q)` for any `q` off the unit circle.
pub fn eval_w_extended(w: Complex64, q: Complex64, opts: &SeriesOptions) -> Result<SeriesValue> {
    let (w, q, _) = normalize_nome(w, q)?;
    eval_w(w, q, opts)
}

/// `W′(w, q)` for any `q` off the unit circle. The involution flips its sign.
pub fn eval_w_prime_extended(
    w: Complex64,
    q: Complex64,
    opts: &SeriesOptions,
) -> Result<SeriesValue> {
    let (w, q, flipped) = normalize_nome(w, q)?;
    let mut v = eval_w_prime(w, q, opts)?;
    if flipped {
        v.value = -v.value;
    }
    Ok(v)
}
