use num_complex::Complex64;

use super::EPS_POLE;
use crate::coords::{Nome, WPoint};
use crate::error::{Error, Result};

/// Partial sum of the bilateral series
/// `₂ψ₂(w, w; wq, wq; q, q) = Σ_n (1 − w)² qⁿ / (1 − w qⁿ)²` over `|n| ≤ n_max`.
///
/// The sum equals `(1 − w)²/w · W(w, q)` in the limit. Terms with `n < 0` are
/// evaluated as `(1 − w)² p / (p − w)²` with `p = q^{|n|}`.
pub fn eval_psi2(w: WPoint, q: Nome, n_max: usize) -> Result<Complex64> {
    let w = w.value();
    let one = Complex64::new(1.0, 0.0);
    let numerator = (one - w) * (one - w);

    let zeroth = one - w;
    if zeroth.norm() < EPS_POLE {
        return Err(Error::Pole {
            index: 0,
            distance: zeroth.norm(),
        });
    }
    let mut sum = numerator / (zeroth * zeroth);

    let mut p = one;
    for k in 1..=n_max as i64 {
        p *= q.value();
        let forward = one - w * p;
        if forward.norm() < EPS_POLE {
            return Err(Error::Pole {
                index: k,
                distance: forward.norm(),
            });
        }
        let backward = p - w;
        // |1 − w q^{−k}| = |p − w| / |p|
        if backward.norm() < EPS_POLE * p.norm() {
            return Err(Error::Pole {
                index: -k,
                distance: backward.norm() / p.norm(),
            });
        }
        sum += numerator * p / (forward * forward);
        sum += numerator * p / (backward * backward);
    }
    Ok(sum)
}
