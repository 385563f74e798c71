// Continuing `Log z` once around the origin adds `2π√−1`, so the lift
// comes back multiplied by `q`.

use winding_quotient::coords::{continue_log, period_lift};
use winding_quotient::{Complex64, CoveringPoint, PathSpec, Result, UpperHalfTau};

pub fn run_example() -> Result<(i64, f64)> {
    let tau = UpperHalfTau::new(Complex64::new(-0.2, 0.9))?;
    let q = tau.nome()?.value();
    let square = PathSpec::square_loop(Complex64::new(0.3, 0.1), 1.0, true)?;
    let start = CoveringPoint::principal(square.first())?;

    let (end, winding) = continue_log(&square, start)?;
    let before = period_lift(start, tau)?.value();
    let after = period_lift(end, tau)?.value();
    let rel = (after - before * q).norm() / (before * q).norm();

    println!("Log z: {} -> {}", start.logz, end.logz);
    println!("winding number {winding}");
    println!("w: {before} -> {after}, |w_end - q w_start| / |q w_start| = {rel:.2e}");

    // the same square traversed backwards, twice
    let back = PathSpec::new(square.vertices().iter().rev().copied().collect())?;
    let (home, w2) = continue_log(&back.then(&back)?, end)?;
    println!("two clockwise turns: winding {w2}, Log z = {}", home.logz);
    Ok((winding, rel))
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
