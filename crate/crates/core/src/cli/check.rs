//! The identity suite behind `winding check`.

use std::f64::consts::PI;

use clap::Args;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{status_of, Global, OutputRecord, Outcome, EXIT_CHECK_FAILED, EXIT_NON_CONVERGENCE, EXIT_OK};
use crate::coords::{continue_log, period_lift, winding_act, CoveringPoint, UpperHalfTau};
use crate::error::{Error, Result};
use crate::inversion::{check_diagram, invert, on_curve_residual};
use crate::oracle::{e2_double_sum, richardson, wp_box_sums, LatticeCutoff};
use crate::qseries::{
    eval_e2, eval_psi2, eval_w, plan_truncation, w_partial_sum, w_reduced_partial_sum, w_term,
    SeriesOptions,
};
use crate::{sampling, Nome, WPoint};

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    /// Samples per identity.
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..))]
    pub samples: u32,

    /// Base radius for the lattice oracle; Richardson uses R, 2R, 4R.
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(4..))]
    pub cutoff: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// Evaluation stopped with the given status (`pole`, `domain`, ...).
    Error(&'static str),
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub name: &'static str,
    pub samples: usize,
    pub max_residual: Option<f64>,
    pub threshold: f64,
    pub verdict: Verdict,
}

impl IdentityReport {
    fn from_residuals(name: &'static str, threshold: f64, residuals: Vec<Result<f64>>) -> Self {
        let samples = residuals.len();
        let mut max = 0.0f64;
        for r in residuals {
            match r {
                Ok(v) if v.is_nan() => {
                    return Self { name, samples, max_residual: None, threshold, verdict: Verdict::Fail }
                }
                Ok(v) => max = max.max(v),
                Err(e) => {
                    return Self {
                        name,
                        samples,
                        max_residual: None,
                        threshold,
                        verdict: Verdict::Error(status_of(&e).0),
                    }
                }
            }
        }
        let verdict = if max <= threshold { Verdict::Pass } else { Verdict::Fail };
        Self { name, samples, max_residual: Some(max), threshold, verdict }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    fn record(&self) -> OutputRecord {
        let status = match self.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Error(s) => s,
        };
        let mut r = OutputRecord::new();
        r.str("identity", self.name)
            .str("status", status)
            .int("samples", Some(self.samples as i64))
            .num("max_residual", self.max_residual)
            .num("threshold", Some(self.threshold));
        r
    }
}

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

fn annulus_samples(rng: &mut ChaCha8Rng, n: usize) -> Vec<(WPoint, Nome)> {
    (0..n)
        .map(|_| {
            let q = sampling::nome(rng, 0.05, 0.9);
            (sampling::reduced_w(rng, q, 0.05), q)
        })
        .collect()
}

fn par<T: Sync>(inputs: &[T], f: impl Fn(&T) -> Result<f64> + Sync + Send) -> Vec<Result<f64>> {
    inputs.par_iter().map(f).collect()
}

/// Runs every identity on `samples` seeded draws and reports the largest
/// residual of each against its threshold.
pub fn run_identities(
    samples: usize,
    seed: u64,
    opts: &SeriesOptions,
    cutoff: LatticeCutoff,
) -> Vec<IdentityReport> {
    let opts = *opts;
    let tol = opts.tol;
    let mut out = Vec::new();

    let pts = annulus_samples(&mut stream(seed, 1), samples);
    out.push(IdentityReport::from_residuals(
        "periodicity",
        100.0 * tol,
        par(&pts, |&(w, q)| {
            let shifted = WPoint::new(w.value() * q.value())?;
            Ok((eval_w(shifted, q, &opts)?.value - eval_w(w, q, &opts)?.value).norm())
        }),
    ));

    let pts = annulus_samples(&mut stream(seed, 2), samples);
    out.push(IdentityReport::from_residuals(
        "involution",
        1e-14,
        par(&pts, |&(w, q)| {
            let (w, q) = (w.value(), q.value());
            let n = plan_truncation(WPoint::new(w)?, Nome::new(q)?, &opts)?.n_terms;
            let scale: f64 = (-(n as i64)..=n as i64)
                .map(|m| w_term(w, q, m).map(|t| t.norm()))
                .sum::<Result<f64>>()?;
            let direct = w_partial_sum(w, q, n)?;
            let mirrored = w_partial_sum(w.inv(), q.inv(), n)?;
            Ok((direct - mirrored).norm() / scale)
        }),
    ));

    let mut rng = stream(seed, 3);
    let lattice: Vec<(Complex64, UpperHalfTau)> = (0..samples)
        .map(|_| {
            let tau = sampling::tau_fundamental(&mut rng, 1.5);
            (sampling::parallelogram_u(&mut rng, tau, 0.1), tau)
        })
        .collect();
    let pullbacks: Vec<Result<[f64; 4]>> = lattice
        .par_iter()
        .map(|&(u, tau)| {
            let r = cutoff.radius();
            let radii = [cutoff, LatticeCutoff::new(2 * r)?, LatticeCutoff::new(4 * r)?];
            let sums = wp_box_sums(u, tau, &radii)?;
            let wp_rich = richardson([sums[0].0, sums[1].0, sums[2].0]);
            let wpp_rich = richardson([sums[0].1, sums[1].1, sums[2].1]);
            let w = WPoint::new((crate::TWO_PI_I * u).exp())?;
            let p = invert(w, tau, &opts)?;
            Ok([
                (p.x() - sums[1].0).norm(),
                (p.x() - wp_rich).norm(),
                (p.y() - sums[1].1).norm(),
                (p.y() - wpp_rich).norm(),
            ])
        })
        .collect();
    let column = |k: usize| -> Vec<Result<f64>> {
        pullbacks
            .iter()
            .map(|r| r.as_ref().map(|v| v[k]).map_err(Clone::clone))
            .collect()
    };
    out.push(IdentityReport::from_residuals("pullback_wp", 5e-3, column(0)));
    out.push(IdentityReport::from_residuals("pullback_wp_richardson", 1e-6, column(1)));
    out.push(IdentityReport::from_residuals("pullback_wp_prime", 5e-3, column(2)));
    out.push(IdentityReport::from_residuals("pullback_wp_prime_richardson", 1e-6, column(3)));

    let mut rng = stream(seed, 4);
    let taus: Vec<UpperHalfTau> = (0..samples)
        .map(|_| sampling::tau_fundamental(&mut rng, 2.0))
        .collect();
    let e2_cutoff = LatticeCutoff::default();
    out.push(IdentityReport::from_residuals(
        "e2_double_sum",
        1e-8,
        par(&taus, |&tau| {
            Ok((eval_e2(tau.nome()?, &opts)?.value - e2_double_sum(tau, e2_cutoff)).norm())
        }),
    ));
    let at_i = UpperHalfTau::new(Complex64::new(0.0, 1.0))
        .and_then(|t| t.nome())
        .and_then(|q| eval_e2(q, &opts))
        .map(|v| (v.value - 3.0 / PI).norm());
    out.push(IdentityReport::from_residuals("e2_at_i", 1e-9, vec![at_i]));

    let pts = annulus_samples(&mut stream(seed, 5), samples);
    out.push(IdentityReport::from_residuals(
        "on_curve",
        1e-8,
        par(&pts, |&(w, q)| {
            let tau = UpperHalfTau::from_nome(q)?;
            on_curve_residual(&invert(w, tau, &opts)?, tau, &opts)
        }),
    ));

    let mut rng = stream(seed, 6);
    let covering: Vec<(CoveringPoint, UpperHalfTau, i64)> = (0..samples)
        .map(|_| {
            let tau = sampling::tau_fundamental(&mut rng, 1.5);
            let p = CoveringPoint::new(sampling::covering_logz(&mut rng, 2.0, 3.0));
            let n = if rng.gen_bool(0.5) { rng.gen_range(1..=3) } else { -rng.gen_range(1..=3) };
            (p, tau, n)
        })
        .collect();
    let diagram = LatticeCutoff::default();
    let distances: Vec<Result<(f64, f64)>> = covering
        .par_iter()
        .map(|&(p, tau, n)| {
            let d = check_diagram(p, tau, &opts, diagram)?;
            let moved = check_diagram(winding_act(p, n, tau), tau, &opts, diagram)?;
            Ok((d, (d - moved).abs()))
        })
        .collect();
    out.push(IdentityReport::from_residuals(
        "diagram",
        5e-3,
        distances.iter().map(|r| r.as_ref().map(|v| v.0).map_err(Clone::clone)).collect(),
    ));
    out.push(IdentityReport::from_residuals(
        "diagram_winding_invariance",
        1e-10,
        distances.iter().map(|r| r.as_ref().map(|v| v.1).map_err(Clone::clone)).collect(),
    ));

    let mut rng = stream(seed, 7);
    let loops: Vec<_> = (0..samples)
        .map(|_| (sampling::loop_around_origin(&mut rng), sampling::tau_fundamental(&mut rng, 1.5)))
        .collect();
    out.push(IdentityReport::from_residuals(
        "monodromy",
        1e-12,
        par(&loops, |(path, tau)| {
            let start = CoveringPoint::principal(path.first())?;
            let (end, winding) = continue_log(path, start)?;
            if winding != 1 {
                return Err(Error::InvalidContinuation(format!("winding {winding} around a simple loop")));
            }
            let expected = period_lift(start, *tau)?.value() * tau.nome()?.value();
            Ok((period_lift(end, *tau)?.value() - expected).norm() / expected.norm())
        }),
    ));

    let pts = annulus_samples(&mut stream(seed, 8), samples);
    out.push(IdentityReport::from_residuals(
        "psi2",
        100.0 * tol,
        par(&pts, |&(w, q)| {
            let n = plan_truncation(w, q, &opts)?.n_terms;
            let wv = w.value();
            let one = Complex64::new(1.0, 0.0);
            let expected = (one - wv) * (one - wv) / wv * eval_w(w, q, &opts)?.value;
            Ok((eval_psi2(w, q, n)? - expected).norm())
        }),
    ));

    let pts = annulus_samples(&mut stream(seed, 9), samples);
    out.push(IdentityReport::from_residuals(
        "truncation_honesty",
        1.0,
        par(&pts, |&(w, q)| {
            let v = eval_w(w, q, &opts)?;
            let doubled = w_reduced_partial_sum(w, q, 2 * v.n_terms)?;
            Ok((doubled - v.value).norm() / v.tail_bound)
        }),
    ));

    out
}

pub(super) fn cmd_check(args: &CheckArgs, g: &Global) -> Outcome {
    let cutoff = LatticeCutoff::new(args.cutoff).map_err(|e| e.to_string())?;
    let reports = run_identities(args.samples as usize, g.seed, &g.opts, cutoff);
    let code = if reports.iter().all(IdentityReport::passed) {
        EXIT_OK
    } else if reports.iter().any(|r| r.verdict == Verdict::Error("non_convergence")) {
        EXIT_NON_CONVERGENCE
    } else {
        EXIT_CHECK_FAILED
    };
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.name).collect();
    let message = (!failed.is_empty()).then(|| format!("failed identities: {}", failed.join(", ")));
    Ok((reports.iter().map(IdentityReport::record).collect(), code, message))
}
