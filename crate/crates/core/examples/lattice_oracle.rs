// Brute-force lattice sums for `℘` and `℘′`, their Richardson extrapolation,
// and the q-series pull-back they are compared with.

use std::f64::consts::PI;

use winding_quotient::coords::WPoint;
use winding_quotient::oracle::{e2_double_sum, e2_double_sum_direct, wp_pair_lattice, wp_richardson};
use winding_quotient::qseries::{eval_e2, eval_w, eval_w_prime};
use winding_quotient::{Complex64, LatticeCutoff, Result, SeriesOptions, UpperHalfTau, TWO_PI_I};

pub fn run_example() -> Result<(f64, f64)> {
    let opts = SeriesOptions::default();
    let tau = UpperHalfTau::new(Complex64::new(0.15, 1.2))?;
    let q = tau.nome()?;
    let u = Complex64::new(0.21, 0.37);
    let w = WPoint::new((TWO_PI_I * u).exp())?;

    let e2 = eval_e2(q, &opts)?.value;
    let x = TWO_PI_I * TWO_PI_I * eval_w(w, q, &opts)?.value - e2 * (PI * PI / 3.0);
    let y = TWO_PI_I * TWO_PI_I * TWO_PI_I * eval_w_prime(w, q, &opts)?.value;

    for r in [50, 100, 200] {
        let (p, dp) = wp_pair_lattice(u, tau, LatticeCutoff::new(r)?)?;
        println!("R = {r:3}: |wp - X| = {:.2e}, |wp' - Y| = {:.2e}", (p - x).norm(), (dp - y).norm());
    }
    let (p, dp) = wp_richardson(u, tau, LatticeCutoff::new(100)?)?;
    let (ex, ey) = ((p - x).norm(), (dp - y).norm());
    println!("Richardson 100/200/400: {ex:.2e}, {ey:.2e}");

    let cut = LatticeCutoff::default();
    println!("E2 series {e2}");
    println!("E2 rows   {}", e2_double_sum(tau, cut));
    println!("E2 direct {}", e2_double_sum_direct(tau, cut));
    Ok((ex, ey))
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
