//! Eisenstein series `E₂, E₄, E₆` from their divisor-sum q-expansions and the
//! Weierstrass invariants `g₂, g₃` of the lattice `ℤ + ℤτ`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{SeriesOptions, SeriesValue, TruncationPlan};
use crate::coords::{cpow, Nome, UpperHalfTau};
use crate::error::{Error, Result};

const ZETA_3: f64 = 1.202_056_903_159_594_2;
const ZETA_5: f64 = 1.036_927_755_143_37;

/// `σ_k(n) = Σ_{d | n} d^k`, by trial division up to `√n`.
pub fn divisor_sigma(n: u64, k: u32) -> f64 {
    let mut sum = 0.0;
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            sum += (d as f64).powi(k as i32);
            let e = n / d;
            if e != d {
                sum += (e as f64).powi(k as i32);
            }
        }
        d += 1;
    }
    sum
}

/// One of the series `1 + c·Σ_{n≥1} σ_k(n) qⁿ`.
struct Expansion {
    k: u32,
    coeff: f64,
    /// `σ_k(n) ≤ majorant·n^power` for all `n ≥ 1`.
    majorant: f64,
    power: i32,
}

const E2: Expansion = Expansion {
    k: 1,
    coeff: -24.0,
    majorant: 1.0,
    power: 2,
};

const E4: Expansion = Expansion {
    k: 3,
    coeff: 240.0,
    majorant: ZETA_3,
    power: 3,
};

const E6: Expansion = Expansion {
    k: 5,
    coeff: -504.0,
    majorant: ZETA_5,
    power: 5,
};

impl Expansion {
    /// Bound on `|c|·Σ_{n>N} majorant·n^p rⁿ`.
    ///
    /// The term ratio `((n+1)/n)^p·r` decreases in `n`, so from `n = N+1` on
    /// the tail is dominated by a geometric series with ratio
    /// `((N+2)/(N+1))^p·r`, once that ratio is below 1.
    fn tail_bound(&self, r: f64, n: usize) -> f64 {
        let next = (n + 1) as f64;
        let ratio = ((next + 1.0) / next).powi(self.power) * r;
        if ratio >= 1.0 {
            return f64::INFINITY;
        }
        let first = (self.power as f64 * next.ln() + next * r.ln()).exp();
        self.coeff.abs() * self.majorant * first / (1.0 - ratio)
    }

    fn plan(&self, q: Nome, opts: &SeriesOptions) -> Result<TruncationPlan> {
        opts.validate()?;
        let r = q.abs();
        for n in 1..=opts.max_terms {
            let tail_bound = self.tail_bound(r, n);
            if tail_bound <= opts.tol {
                return Ok(TruncationPlan { n_terms: n, tail_bound });
            }
        }
        Err(Error::NonConvergence {
            tol: opts.tol,
            max_terms: opts.max_terms,
        })
    }

    fn eval(&self, q: Nome, opts: &SeriesOptions) -> Result<SeriesValue> {
        let plan = self.plan(q, opts)?;
        let sum: Complex64 = (1..=plan.n_terms as u64)
            .map(|n| cpow(q.value(), n as i64) * divisor_sigma(n, self.k))
            .sum();
        Ok(SeriesValue {
            value: sum * self.coeff + 1.0,
            tail_bound: plan.tail_bound,
            n_terms: plan.n_terms,
        })
    }
}

/// `E₂ = 1 − 24·Σ σ₁(n) qⁿ`.
pub fn eval_e2(q: Nome, opts: &SeriesOptions) -> Result<SeriesValue> {
    E2.eval(q, opts)
}

/// `E₄ = 1 + 240·Σ σ₃(n) qⁿ`.
pub fn eval_e4(q: Nome, opts: &SeriesOptions) -> Result<SeriesValue> {
    E4.eval(q, opts)
}

/// `E₆ = 1 − 504·Σ σ₅(n) qⁿ`.
pub fn eval_e6(q: Nome, opts: &SeriesOptions) -> Result<SeriesValue> {
    E6.eval(q, opts)
}

/// `g₂(τ) = 60·Σ′ ω⁻⁴ = (4/3)·π⁴·E₄(τ)`.
pub fn g2(tau: UpperHalfTau, opts: &SeriesOptions) -> Result<Complex64> {
    Ok(eval_e4(tau.nome()?, opts)?.value * (4.0 / 3.0 * PI.powi(4)))
}

/// `g₃(τ) = 140·Σ′ ω⁻⁶ = (8/27)·π⁶·E₆(τ)`.
pub fn g3(tau: UpperHalfTau, opts: &SeriesOptions) -> Result<Complex64> {
    Ok(eval_e6(tau.nome()?, opts)?.value * (8.0 / 27.0 * PI.powi(6)))
}
