//! Acceptance criteria 1 to 10, one line each:
//!
//! ```text
//! PASS  3 pull-back relations  worst 2.1e-9 <= 1e-6  (4.20 s, limit 30 s)
//! ```
//!
//! Sample counts, tolerances and runtime limits are fixed here and must not
//! be relaxed. Built with `harness = false`; exits non-zero if any criterion
//! fails.

mod common;

use std::f64::consts::PI;
use std::fs;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use winding_quotient::coords::{continue_log, period_lift, winding_act};
use winding_quotient::inversion::{check_diagram, invert, on_curve_residual};
use winding_quotient::oracle::{e2_double_sum, richardson, wp_box_sums};
use winding_quotient::qseries::{
    eval_e2, eval_psi2, eval_w, plan_truncation, w_partial_sum, w_reduced_partial_sum, w_term,
};
use winding_quotient::{
    sampling, CoveringPoint, LatticeCutoff, Nome, SeriesOptions, UpperHalfTau, WPoint, TWO_PI_I,
};

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

/// Worst observed value against its bound; several checks per criterion.
struct Outcome {
    checks: Vec<(&'static str, f64, f64)>,
}

impl Outcome {
    fn new() -> Self {
        Self { checks: Vec::new() }
    }

    fn check(mut self, label: &'static str, worst: f64, bound: f64) -> Self {
        self.checks.push((label, worst, bound));
        self
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|&(_, w, b)| w <= b)
    }
}

fn rng(id: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + id)
}

fn opts() -> SeriesOptions {
    SeriesOptions::default()
}

/// Largest entry; an evaluation error counts as infinitely bad.
fn worst<E: std::fmt::Debug>(values: impl IntoIterator<Item = Result<f64, E>>) -> f64 {
    values
        .into_iter()
        .map(|v| match v {
            Ok(x) if x.is_nan() => f64::INFINITY,
            Ok(x) => x,
            Err(e) => {
                eprintln!("    evaluation error: {e:?}");
                f64::INFINITY
            }
        })
        .fold(0.0, f64::max)
}

fn annulus(rng: &mut ChaCha8Rng, n: usize, r_min: f64, clearance: f64) -> Vec<(WPoint, Nome)> {
    (0..n)
        .map(|_| {
            let q = sampling::nome(rng, r_min, 0.9);
            (sampling::reduced_w(rng, q, clearance), q)
        })
        .collect()
}

fn periodicity() -> Outcome {
    let pts = annulus(&mut rng(1), 200, 0.05, 0.05);
    let w = worst(pts.iter().map(|&(w, q)| {
        let moved = WPoint::new(w.value() * q.value())?;
        Ok::<_, winding_quotient::Error>((eval_w(moved, q, &opts())?.value - eval_w(w, q, &opts())?.value).norm())
    }));
    Outcome::new().check("|W(wq,q) - W(w,q)|", w, 1e-10)
}

fn involution() -> Outcome {
    let pts = annulus(&mut rng(2), 200, 0.05, 0.05);
    let w = worst(pts.iter().map(|&(w, q)| {
        let n = plan_truncation(w, q, &opts())?.n_terms;
        let (w, q) = (w.value(), q.value());
        let scale = (-(n as i64)..=n as i64)
            .map(|m| w_term(w, q, m).map(|t| t.norm()))
            .sum::<Result<f64, _>>()?;
        let gap = (w_partial_sum(w, q, n)? - w_partial_sum(w.inv(), q.inv(), n)?).norm();
        Ok::<_, winding_quotient::Error>(gap / scale)
    }));
    Outcome::new().check("relative gap of symmetric sums", w, 1e-14)
}

fn pullback() -> Outcome {
    let mut rng = rng(3);
    let samples: Vec<(Complex64, UpperHalfTau)> = (0..50)
        .map(|_| {
            let tau = sampling::tau_fundamental(&mut rng, 1.5);
            (sampling::parallelogram_u(&mut rng, tau, 0.1), tau)
        })
        .collect();
    let radii = [100, 200, 400].map(|r| LatticeCutoff::new(r).unwrap());
    let errors: Vec<Result<[f64; 4], winding_quotient::Error>> = samples
        .par_iter()
        .map(|&(u, tau)| {
            let s = wp_box_sums(u, tau, &radii)?;
            let p = invert(WPoint::new((TWO_PI_I * u).exp())?, tau, &opts())?;
            Ok([
                (p.x() - s[1].0).norm(),
                (p.x() - richardson([s[0].0, s[1].0, s[2].0])).norm(),
                (p.y() - s[1].1).norm(),
                (p.y() - richardson([s[0].1, s[1].1, s[2].1])).norm(),
            ])
        })
        .collect();
    let col = |k: usize| worst(errors.iter().map(|e| e.as_ref().map(|v| v[k])));
    Outcome::new()
        .check("wp, cutoff 200", col(0), 5e-3)
        .check("wp, Richardson 100/200/400", col(1), 1e-6)
        .check("wp', cutoff 200", col(2), 5e-3)
        .check("wp', Richardson 100/200/400", col(3), 1e-6)
}

fn e2_cross() -> Outcome {
    let mut rng = rng(4);
    let taus: Vec<UpperHalfTau> = (0..20).map(|_| sampling::tau_fundamental(&mut rng, 2.0)).collect();
    let cut = LatticeCutoff::new(200).unwrap();
    let w = worst(taus.iter().map(|&tau| {
        Ok::<_, winding_quotient::Error>((eval_e2(tau.nome()?, &opts())?.value - e2_double_sum(tau, cut)).norm())
    }));
    let at_i = eval_e2(UpperHalfTau::new(Complex64::new(0.0, 1.0)).unwrap().nome().unwrap(), &opts())
        .map(|v| (v.value - 3.0 / PI).norm());
    Outcome::new()
        .check("q-expansion vs double sum", w, 1e-8)
        .check("E2(i) vs 3/pi", worst([at_i]), 1e-9)
}

fn on_curve() -> Outcome {
    let pts = annulus(&mut rng(5), 200, 1e-3, 1e-3);
    let w = worst(pts.iter().map(|&(w, q)| {
        let tau = UpperHalfTau::from_nome(q)?;
        on_curve_residual(&invert(w, tau, &opts())?, tau, &opts())
    }));
    Outcome::new().check("on-curve residual", w, 1e-8)
}

fn diagram() -> Outcome {
    let mut rng = rng(6);
    let cut = LatticeCutoff::new(200).unwrap();
    let mut cases = Vec::new();
    for _ in 0..5 {
        let tau = sampling::tau_fundamental(&mut rng, 1.5);
        for _ in 0..100 {
            let p = CoveringPoint::new(sampling::covering_logz(&mut rng, 2.0, 3.0));
            let n: i64 = if rng.gen_bool(0.5) { rng.gen_range(1..=3) } else { -rng.gen_range(1..=3) };
            cases.push((p, tau, n));
        }
    }
    let results: Vec<Result<(f64, f64), winding_quotient::Error>> = cases
        .par_iter()
        .map(|&(p, tau, n)| {
            let d = check_diagram(p, tau, &opts(), cut)?;
            let moved = check_diagram(winding_act(p, n, tau), tau, &opts(), cut)?;
            Ok((d, (d - moved).abs()))
        })
        .collect();
    Outcome::new()
        .check("chordal distance", worst(results.iter().map(|r| r.as_ref().map(|v| v.0))), 5e-3)
        .check("change under winding", worst(results.iter().map(|r| r.as_ref().map(|v| v.1))), 1e-10)
}

fn monodromy() -> Outcome {
    let mut rng = rng(7);
    let taus: Vec<UpperHalfTau> = (0..5).map(|_| sampling::tau_fundamental(&mut rng, 1.5)).collect();
    let loops: Vec<_> = (0..20).map(|_| sampling::loop_around_origin(&mut rng)).collect();
    let mut errors = Vec::new();
    for tau in &taus {
        for path in &loops {
            errors.push((|| {
                let start = CoveringPoint::principal(path.first())?;
                let (end, winding) = continue_log(path, start)?;
                assert_eq!(winding, 1);
                let expected = period_lift(start, *tau)?.value() * tau.nome()?.value();
                Ok::<_, winding_quotient::Error>((period_lift(end, *tau)?.value() - expected).norm() / expected.norm())
            })());
        }
    }
    Outcome::new().check("relative error of lift after one loop", worst(errors), 1e-12)
}

fn psi2() -> Outcome {
    let pts = annulus(&mut rng(8), 100, 0.05, 0.05);
    let one = Complex64::new(1.0, 0.0);
    let w = worst(pts.iter().map(|&(w, q)| {
        let n = plan_truncation(w, q, &opts())?.n_terms;
        let expected = (one - w.value()).powi(2) / w.value() * eval_w(w, q, &opts())?.value;
        Ok::<_, winding_quotient::Error>((eval_psi2(w, q, n)? - expected).norm())
    }));
    Outcome::new().check("|psi2 - (1-w)^2/w W|", w, 1e-10)
}

fn truncation_honesty() -> Outcome {
    let mut rng = rng(9);
    let pts = annulus(&mut rng, 100, 0.05, 0.05);
    let tols: Vec<f64> = (0..100).map(|_| 10f64.powf(rng.gen_range(-13.0..-3.0))).collect();
    let w = worst(pts.iter().zip(&tols).map(|(&(w, q), &tol)| {
        let v = eval_w(w, q, &SeriesOptions::with_tol(tol))?;
        let doubled = w_reduced_partial_sum(w, q, 2 * v.n_terms)?;
        Ok::<_, winding_quotient::Error>((doubled - v.value).norm() / v.tail_bound)
    }));
    Outcome::new().check("|S(2N) - S(N)| / tail_bound", w, 1.0)
}

fn cli_contract() -> Outcome {
    let mut mismatches = 0.0;
    for &(name, args, code) in common::GOLDEN {
        let first = common::run(args);
        let second = common::run(args);
        let expected = fs::read_to_string(common::golden_path(name)).unwrap_or_default();
        if first != second || first.0 != code || first.1 != expected {
            eprintln!("    golden mismatch: {name}");
            mismatches += 1.0;
        }
    }
    let codes = [
        (&["eval-w", "--q", "0.5", "--w", "1"][..], 3),
        (&["eval-w", "--tau", "-i", "--w", "2"], 2),
        (&["eval-w", "--q", "0.999", "--w", "-1", "--max-terms", "10"], 4),
        (&["check", "--samples", "0"], 1),
        (&["eval-w", "--tau", "i", "--q", "0.5", "--w", "2"], 1),
    ];
    for (args, code) in codes {
        if common::run(args).0 != code {
            eprintln!("    exit code mismatch: {args:?}");
            mismatches += 1.0;
        }
    }
    Outcome::new().check("golden or exit-code mismatches", mismatches, 0.0)
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, name: "periodicity", limit: Duration::from_secs(1), run: periodicity },
    Criterion { id: 2, name: "involution", limit: Duration::from_secs(1), run: involution },
    Criterion { id: 3, name: "pull-back relations", limit: Duration::from_secs(30), run: pullback },
    Criterion { id: 4, name: "E2 cross-check", limit: Duration::from_secs(5), run: e2_cross },
    Criterion { id: 5, name: "on-curve", limit: Duration::from_secs(5), run: on_curve },
    Criterion { id: 6, name: "diagram commutativity", limit: Duration::from_secs(60), run: diagram },
    Criterion { id: 7, name: "monodromy", limit: Duration::from_secs(1), run: monodromy },
    Criterion { id: 8, name: "bilateral psi2", limit: Duration::from_secs(2), run: psi2 },
    Criterion { id: 9, name: "truncation honesty", limit: Duration::from_secs(2), run: truncation_honesty },
    Criterion { id: 10, name: "CLI determinism and exit codes", limit: Duration::from_secs(5), run: cli_contract },
];

fn main() -> ExitCode {
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    println!("\nacceptance criteria");
    for c in CRITERIA {
        if !filter.is_empty() && !filter.iter().any(|f| c.name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let ok = outcome.passed() && elapsed <= c.limit;
        if !ok {
            failed += 1;
        }
        let detail: Vec<String> = outcome
            .checks
            .iter()
            .map(|(label, w, b)| format!("{label}: worst {w:.2e} <= {b:.0e}"))
            .collect();
        println!(
            "{} {:>2} {:<32} {}  ({:.2} s, limit {} s)",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            detail.join("; "),
            elapsed.as_secs_f64(),
            c.limit.as_secs(),
        );
    }
    println!("acceptance: {} failed\n", failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
