//! Numerics for the rank-1 virtual period map `z ↦ z^τ`.
//!
//! The crate follows the tower
//!
//! ```text
//!   ℂ_{Log z} ──exp(τ·)──▶ ℂ_w^×
//!      │                    │
//!      ▼                    ▼
//!   ℂ_z^×      ···▶       E_τ ⊂ ℙ²
//! ```
//!
//! * [`coords`]: the covering coordinate `Log z`, the monodromy and winding
//!   actions, the annulus reduction for `q^ℤ`, and branch-tracked continuation
//!   of the logarithm along polylines.
//! * [`qseries`]: the q-multiplicatively periodic function
//!   `W(w,q) = Σ_m w q^m / (1 − w q^m)²`, its logarithmic derivative, the
//!   Eisenstein series `E₂, E₄, E₆` and the bilateral series `₂ψ₂`, each with
//!   a rigorous truncation bound.
//! * [`oracle`]: slow brute-force lattice sums for `℘`, `℘′` and the
//!   row-ordered double sum for `E₂`.
//! * [`inversion`]: the morphism `ℂ_w^× → E_τ`, `w ↦ (℘ : ℘′ : 1)` written in
//!   terms of `W`, `W′` and `E₂`, plus on-curve and diagram checks.
//! * [`cli`]: the `winding` command-line front end.

pub mod cli;
pub mod coords;
mod error;
pub mod inversion;
pub mod oracle;
pub mod qseries;
pub mod sampling;

pub use num_complex::Complex64;

pub use coords::{CoveringPoint, Nome, PathSpec, UpperHalfTau, WPoint};
pub use error::{Error, Result};
pub use inversion::ProjectiveCurvePoint;
pub use oracle::LatticeCutoff;
pub use qseries::{SeriesOptions, SeriesValue, TruncationPlan};

/// `2π√−1`.
pub const TWO_PI_I: Complex64 = Complex64::new(0.0, std::f64::consts::TAU);
