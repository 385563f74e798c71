// From `τ` to the nome and the period lift `Log z ↦ exp(τ·Log z)`, with
// the two deck actions on the covering coordinate.

use winding_quotient::coords::{monodromy_act, period_lift, u_coord, winding_act};
use winding_quotient::{Complex64, CoveringPoint, Result, UpperHalfTau};

pub fn run_example() -> Result<[Complex64; 4]> {
    let tau = UpperHalfTau::new(Complex64::new(0.1, 1.1))?;
    let q = tau.nome()?;
    let p = CoveringPoint::principal(Complex64::new(0.8, 0.6))?;

    let w = period_lift(p, tau)?.value();
    // one turn of z multiplies w by q
    let w_turned = period_lift(monodromy_act(p, 1), tau)?.value();
    // a winding step leaves w where it was
    let w_wound = period_lift(winding_act(p, 2, tau), tau)?.value();

    println!("tau        = {}", tau.value());
    println!("q          = {}", q.value());
    println!("u(p)       = {}", u_coord(p, tau));
    println!("w          = {w}");
    println!("w after γ  = {w_turned}  (w·q = {})", w * q.value());
    println!("w after 2δ = {w_wound}");
    Ok([q.value(), w, w_turned, w_wound])
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
