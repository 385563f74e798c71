// `E₂, E₄, E₆` from their q-expansions, and the Weierstrass invariants.

use std::f64::consts::PI;

use winding_quotient::qseries::{eval_e2, eval_e4, eval_e6, g2, g3};
use winding_quotient::{Complex64, Result, SeriesOptions, UpperHalfTau};

pub fn run_example() -> Result<Complex64> {
    let opts = SeriesOptions::default();
    let tau = UpperHalfTau::new(Complex64::new(0.0, 1.0))?;
    let q = tau.nome()?;

    let e2 = eval_e2(q, &opts)?;
    println!("E2(i) = {}   3/pi = {}", e2.value, 3.0 / PI);
    println!("E4(i) = {}", eval_e4(q, &opts)?.value);
    println!("E6(i) = {}", eval_e6(q, &opts)?.value);

    let rho = UpperHalfTau::new(Complex64::new(-0.5, 3f64.sqrt() / 2.0))?;
    println!("E4(rho) = {:.2e}", eval_e4(rho.nome()?, &opts)?.value.norm());

    let tau = UpperHalfTau::new(Complex64::new(0.23, 1.05))?;
    let (a, b) = (g2(tau, &opts)?, g3(tau, &opts)?);
    let disc = a * a * a - b * b * 27.0;
    println!("tau = {}: g2 = {a}, g3 = {b}, g2^3 - 27 g3^2 = {disc}", tau.value());
    Ok(e2.value)
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
