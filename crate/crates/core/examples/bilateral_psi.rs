// The bilateral series `₂ψ₂(w, w; wq, wq; q, q)` against `(1 − w)²/w · W`.

use winding_quotient::coords::WPoint;
use winding_quotient::qseries::{eval_psi2, eval_w, plan_truncation};
use winding_quotient::{Complex64, Nome, Result, SeriesOptions};

pub fn run_example() -> Result<f64> {
    let opts = SeriesOptions::default();
    let q = Nome::new(Complex64::from_polar(0.6, 0.4))?;
    let w = WPoint::new(Complex64::new(-0.3, 0.7))?;
    let one = Complex64::new(1.0, 0.0);
    let target = (one - w.value()).powi(2) / w.value() * eval_w(w, q, &opts)?.value;

    let planned = plan_truncation(w, q, &opts)?.n_terms;
    let mut last = f64::NAN;
    for n in [5, 10, 20, planned] {
        last = (eval_psi2(w, q, n)? - target).norm();
        println!("N = {n:3}: |psi2 - (1-w)^2/w W| = {last:.2e}");
    }
    Ok(last)
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
