//! The morphism `ℂ_w^× → E_τ ⊂ ℙ²`.
//!
//! With `q = exp(2π√−1·τ)` a point `w` is sent to
//!
//! ```text
//!   ( (2π√−1)²·W(w,q) − (π²/3)·E₂(τ) : (2π√−1)³·W′(w,q) : 1 )
//! ```
//!
//! which is `(℘(u) : ℘′(u) : 1)` for any `u` with `exp(2π√−1·u) = w`. The
//! poles `w ∈ q^ℤ` go to the point at infinity `(0 : 1 : 0)`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::coords::{period_lift, u_coord, CoveringPoint, UpperHalfTau, WPoint};
use crate::error::{Error, Result};
use crate::oracle::{reduce_lattice, wp_pair_lattice, LatticeCutoff};
use crate::qseries::{eval_e2, eval_w, eval_w_prime, g2, g3, SeriesOptions};
use crate::TWO_PI_I;

/// Homogeneous coordinates `(X : Y : Z)` on a normalized representative:
/// `Z = 1` for affine points, `(0 : 1 : 0)` at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectiveCurvePoint {
    x: Complex64,
    y: Complex64,
    z: Complex64,
}

impl ProjectiveCurvePoint {
    pub const INFINITY: Self = Self {
        x: Complex64::new(0.0, 0.0),
        y: Complex64::new(1.0, 0.0),
        z: Complex64::new(0.0, 0.0),
    };

    pub fn affine(x: Complex64, y: Complex64) -> Self {
        Self {
            x,
            y,
            z: Complex64::new(1.0, 0.0),
        }
    }

    /// Normalizes arbitrary homogeneous coordinates.
    pub fn from_homogeneous(x: Complex64, y: Complex64, z: Complex64) -> Result<Self> {
        let zero = Complex64::new(0.0, 0.0);
        if [x, y, z].iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::Domain("homogeneous coordinates must be finite".into()));
        }
        if z != zero {
            Ok(Self::affine(x / z, y / z))
        } else if y != zero {
            Ok(Self { x: x / y, y: Complex64::new(1.0, 0.0), z })
        } else if x != zero {
            Ok(Self { x: Complex64::new(1.0, 0.0), y, z })
        } else {
            Err(Error::Domain("(0 : 0 : 0) is not a projective point".into()))
        }
    }

    pub fn x(&self) -> Complex64 {
        self.x
    }

    pub fn y(&self) -> Complex64 {
        self.y
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn is_infinity(&self) -> bool {
        *self == Self::INFINITY
    }

    fn coords(&self) -> [Complex64; 3] {
        [self.x, self.y, self.z]
    }
}

impl fmt::Display for ProjectiveCurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            f.write_str("(0:1:0)")
        } else {
            write!(f, "({}:{}:{})", self.x, self.y, self.z)
        }
    }
}

/// Fubini–Study (chordal) distance: the sine of the angle between the two
/// lines in `ℂ³`, computed from the wedge product so that nearby points do
/// not lose precision to cancellation.
pub fn chordal_distance(a: &ProjectiveCurvePoint, b: &ProjectiveCurvePoint) -> f64 {
    let scaled = |p: &ProjectiveCurvePoint| {
        let c = p.coords();
        let s = c.iter().map(|v| v.norm()).fold(0.0, f64::max);
        c.map(|v| v / s)
    };
    let (u, v) = (scaled(a), scaled(b));
    let wedge: f64 = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(i, j)| (u[i] * v[j] - u[j] * v[i]).norm_sqr())
        .sum();
    let norm = |c: &[Complex64; 3]| c.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    (wedge.sqrt() / (norm(&u) * norm(&v))).min(1.0)
}

/// Sends `w` to its point on `E_τ`. Points within the pole tolerance of
/// `q^ℤ` go to `(0 : 1 : 0)`.
pub fn invert(w: WPoint, tau: UpperHalfTau, opts: &SeriesOptions) -> Result<ProjectiveCurvePoint> {
    let q = tau.nome()?;
    let wv = match eval_w(w, q, opts) {
        Ok(v) => v.value,
        Err(Error::Pole { .. }) => return Ok(ProjectiveCurvePoint::INFINITY),
        Err(e) => return Err(e),
    };
    let wp = eval_w_prime(w, q, opts)?.value;
    let e2 = eval_e2(q, opts)?.value;
    let x = TWO_PI_I * TWO_PI_I * wv - e2 * (PI * PI / 3.0);
    let y = TWO_PI_I * TWO_PI_I * TWO_PI_I * wp;
    Ok(ProjectiveCurvePoint::affine(x, y))
}

/// Scale-free residual of the Weierstrass cubic `Y²Z = 4X³ − g₂XZ² − g₃Z³`,
/// `|Y²Z − 4X³ + g₂XZ² + g₃Z³| / max(1, |X|³, |Y|²)`.
pub fn on_curve_residual(
    p: &ProjectiveCurvePoint,
    tau: UpperHalfTau,
    opts: &SeriesOptions,
) -> Result<f64> {
    if p.is_infinity() {
        return Ok(0.0);
    }
    let (x, y, z) = (p.x, p.y, p.z);
    let lhs = y * y * z - x * x * x * 4.0 + g2(tau, opts)? * x * z * z + g3(tau, opts)? * z * z * z;
    let scale = 1f64.max(x.norm().powi(3)).max(y.norm_sqr());
    Ok(lhs.norm() / scale)
}

/// `(℘(u) : ℘′(u) : 1)` from the lattice sums, after reducing `u` into the
/// fundamental parallelogram. Lattice points go to `(0 : 1 : 0)`.
pub fn parametrize(
    u: Complex64,
    tau: UpperHalfTau,
    cutoff: LatticeCutoff,
) -> Result<ProjectiveCurvePoint> {
    let (u_red, _, _) = reduce_lattice(u, tau);
    match wp_pair_lattice(u_red, tau, cutoff) {
        Ok((wp, wpp)) => Ok(ProjectiveCurvePoint::affine(wp, wpp)),
        Err(Error::Pole { .. }) => Ok(ProjectiveCurvePoint::INFINITY),
        Err(e) => Err(e),
    }
}

/// Chordal distance between the two ways around the square
///
/// ```text
///   ℂ_{Log z} ──exp(τ·)──▶ ℂ_w^×
///       │ u                 │ invert
///       ▼                   ▼
///      ℂ_u ──(℘:℘′:1)──▶   E_τ
/// ```
pub fn check_diagram(
    p: CoveringPoint,
    tau: UpperHalfTau,
    opts: &SeriesOptions,
    cutoff: LatticeCutoff,
) -> Result<f64> {
    let via_series = invert(period_lift(p, tau)?, tau, opts)?;
    let via_lattice = parametrize(u_coord(p, tau), tau, cutoff)?;
    Ok(chordal_distance(&via_series, &via_lattice))
}
