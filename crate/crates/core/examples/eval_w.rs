// `W(w,q) = Σ_m w q^m / (1 − w q^m)²` and `W′ = w·∂W/∂w` with their
// truncation bounds, including `|q| > 1` through the involution.

use winding_quotient::coords::WPoint;
use winding_quotient::qseries::{eval_w, eval_w_extended, eval_w_prime, plan_truncation};
use winding_quotient::{Complex64, Error, Nome, Result, SeriesOptions};

pub fn run_example() -> Result<f64> {
    let opts = SeriesOptions::default();
    let q = Nome::new(Complex64::new(0.5, 0.0))?;
    let w = WPoint::new(Complex64::new(-1.0, 0.0))?;

    let v = eval_w(w, q, &opts)?;
    let d = eval_w_prime(w, q, &opts)?;
    println!("W(-1, 1/2)  = {} ± {:.1e} with N = {}", v.value, v.tail_bound, v.n_terms);
    println!("W'(-1, 1/2) = {} ± {:.1e}", d.value, d.tail_bound);

    for tol in [1e-4, 1e-8, 1e-12] {
        let plan = plan_truncation(w, q, &SeriesOptions::with_tol(tol))?;
        println!("tol {tol:.0e}: N = {}", plan.n_terms);
    }

    let shifted = eval_w(WPoint::new(w.value() * q.value())?, q, &opts)?;
    let drift = (shifted.value - v.value).norm();
    println!("|W(wq,q) - W(w,q)| = {drift:.1e}");

    let mirrored = eval_w_extended(w.value().inv(), q.value().inv(), &opts)?;
    println!("W(1/w, 1/q) = {}", mirrored.value);

    match eval_w(WPoint::new(Complex64::new(0.5, 0.0))?, q, &opts) {
        Err(Error::Pole { index, .. }) => println!("w = q is a pole (index {index})"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(drift)
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
