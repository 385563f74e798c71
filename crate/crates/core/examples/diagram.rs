// Both ways around the square from the covering coordinate to the curve:
// through `w = exp(τ·Log z)` and the series, or through `u` and the
// lattice sums.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use winding_quotient::coords::winding_act;
use winding_quotient::inversion::check_diagram;
use winding_quotient::{sampling, CoveringPoint, LatticeCutoff, Result, SeriesOptions};

pub fn run_example() -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let opts = SeriesOptions::default();
    let cutoff = LatticeCutoff::default();
    let tau = sampling::tau_fundamental(&mut rng, 1.5);
    println!("tau = {}", tau.value());

    let mut worst = 0.0f64;
    for _ in 0..8 {
        let p = CoveringPoint::new(sampling::covering_logz(&mut rng, 1.5, 2.0));
        let d = check_diagram(p, tau, &opts, cutoff)?;
        let moved = check_diagram(winding_act(p, 3, tau), tau, &opts, cutoff)?;
        worst = worst.max(d);
        println!("Log z = {:<42} distance {d:.2e}, after 3 winding steps {moved:.2e}", p.logz.to_string());
    }
    Ok(worst)
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
