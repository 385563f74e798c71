// Points of `ℂ_w^×` sent to the Weierstrass cubic, with on-curve residuals.

use winding_quotient::coords::WPoint;
use winding_quotient::inversion::{invert, on_curve_residual};
use winding_quotient::{Complex64, Result, SeriesOptions, UpperHalfTau};

pub fn run_example() -> Result<f64> {
    let opts = SeriesOptions::default();
    let tau = UpperHalfTau::new(Complex64::new(0.0, 1.0))?;
    let q = tau.nome()?.value();
    let mut worst = 0.0f64;
    for w in [
        Complex64::new(1.0, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.3, 0.2),
        Complex64::new(2.0, 0.0),
        q * Complex64::new(-1.0, 0.0).sqrt(),
    ] {
        let p = invert(WPoint::new(w)?, tau, &opts)?;
        let r = on_curve_residual(&p, tau, &opts)?;
        worst = worst.max(r);
        println!("w = {w:<28} -> {p}  residual {r:.1e}");
    }
    Ok(worst)
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
