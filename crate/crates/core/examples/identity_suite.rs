// The identity suite that `winding check` runs, called from code.

use winding_quotient::cli::run_identities;
use winding_quotient::{LatticeCutoff, Result, SeriesOptions};

pub fn run_example() -> Result<bool> {
    let reports = run_identities(4, 11, &SeriesOptions::default(), LatticeCutoff::new(50)?);
    for r in &reports {
        let residual = r.max_residual.map_or("-".to_string(), |v| format!("{v:.2e}"));
        println!("{:<30} {:>10} <= {:.0e}  {:?}", r.name, residual, r.threshold, r.verdict);
    }
    Ok(reports.iter().all(|r| r.passed()))
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
