//! `winding grid`: one record per cell of a rectangular grid, row-major.

use clap::{Args, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;

use super::complex::parse_range;
use super::{status_of, Global, Modulus, OptionalModulusArgs, OutputRecord, Outcome, EXIT_OK};
use crate::error::{Error, Result};
use crate::inversion::{invert, on_curve_residual, parametrize};
use crate::oracle::LatticeCutoff;
use crate::qseries::{eval_e2, eval_w_extended, eval_w_prime_extended, SeriesValue};
use crate::{UpperHalfTau, WPoint};

/// What a grid cell evaluates. `E2` varies `τ`, the lattice target `wp`
/// varies `u`, the rest vary `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    #[value(name = "W")]
    W,
    #[value(name = "Wprime")]
    Wprime,
    #[value(name = "E2")]
    E2,
    #[value(name = "wp")]
    Wp,
    #[value(name = "invert")]
    Invert,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, value_enum, ignore_case = true)]
    pub target: Target,

    /// Real range `lo,hi`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range, default_value = "-1,1")]
    pub re: (f64, f64),

    /// Imaginary range `lo,hi`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range, default_value = "-1,1")]
    pub im: (f64, f64),

    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..=4096))]
    pub nx: u32,

    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..=4096))]
    pub ny: u32,

    /// Lattice cutoff for the `wp` target.
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u32).range(1..))]
    pub cutoff: u32,

    #[command(flatten)]
    pub modulus: OptionalModulusArgs,
}

fn node(range: (f64, f64), n: u32, k: u32) -> f64 {
    if n == 1 {
        range.0
    } else {
        range.0 + (range.1 - range.0) * f64::from(k) / f64::from(n - 1)
    }
}

fn series(body: &mut OutputRecord, v: Option<SeriesValue>) {
    body.complex("value_re", "value_im", v.map(|v| v.value))
        .num("tail_bound", v.map(|v| v.tail_bound))
        .int("n_terms", v.map(|v| v.n_terms as i64));
}

fn cell(
    target: Target,
    z: Complex64,
    modulus: Option<&Modulus>,
    g: &Global,
    cutoff: LatticeCutoff,
) -> (&'static str, OutputRecord) {
    let mut body = OutputRecord::new();
    let status: Result<()> = match target {
        Target::W | Target::Wprime => {
            let modulus = modulus.expect("checked by cmd_grid");
            let v = modulus.q_checked().and_then(|q| match target {
                Target::W => eval_w_extended(z, q, &g.opts),
                _ => eval_w_prime_extended(z, q, &g.opts),
            });
            series(&mut body, v.as_ref().ok().copied());
            v.map(|_| ())
        }
        Target::E2 => {
            let v = UpperHalfTau::new(z)
                .and_then(|t| t.nome())
                .and_then(|q| eval_e2(q, &g.opts));
            series(&mut body, v.as_ref().ok().copied());
            v.map(|_| ())
        }
        Target::Wp => {
            let v = modulus
                .expect("checked by cmd_grid")
                .upper_tau()
                .and_then(|tau| parametrize(z, tau, cutoff));
            let p = v.as_ref().ok();
            match p {
                Some(p) if p.is_infinity() => {
                    body.complex("value_re", "value_im", None)
                        .complex("prime_re", "prime_im", None);
                    Err(Error::Pole { index: 0, distance: 0.0 })
                }
                _ => {
                    body.complex("value_re", "value_im", p.map(|p| p.x()))
                        .complex("prime_re", "prime_im", p.map(|p| p.y()));
                    v.map(|_| ())
                }
            }
        }
        Target::Invert => {
            let v = modulus.expect("checked by cmd_grid").upper_tau().and_then(|tau| {
                let p = invert(WPoint::new(z)?, tau, &g.opts)?;
                Ok((p, on_curve_residual(&p, tau, &g.opts)?))
            });
            let ok = v.as_ref().ok();
            body.str(
                "point",
                match ok {
                    Some((p, _)) if p.is_infinity() => "(0:1:0)",
                    Some(_) => "affine",
                    None => "",
                },
            )
            .complex("X_re", "X_im", ok.map(|v| v.0.x()))
            .complex("Y_re", "Y_im", ok.map(|v| v.0.y()))
            .complex("Z_re", "Z_im", ok.map(|v| v.0.z()))
            .num("residual", ok.map(|v| v.1));
            v.map(|_| ())
        }
    };
    (status.as_ref().map_or_else(|e| status_of(e).0, |_| "ok"), body)
}

pub(super) fn cmd_grid(args: &GridArgs, g: &Global) -> Outcome {
    let modulus = Modulus::resolve(args.modulus.tau, args.modulus.q);
    if modulus.is_none() && args.target != Target::E2 {
        return Err(format!("grid target {:?} needs --tau or --q", args.target));
    }
    let cutoff = LatticeCutoff::new(args.cutoff).map_err(|e| e.to_string())?;
    let cells: Vec<(u32, u32)> = (0..args.ny)
        .flat_map(|j| (0..args.nx).map(move |i| (i, j)))
        .collect();
    let records: Vec<OutputRecord> = cells
        .par_iter()
        .map(|&(i, j)| {
            let z = Complex64::new(node(args.re, args.nx, i), node(args.im, args.ny, j));
            let mut head = OutputRecord::new();
            head.int("i", Some(i64::from(i))).int("j", Some(i64::from(j)));
            if let Some(m) = &modulus {
                m.echo(&mut head);
            }
            head.num("re", Some(z.re)).num("im", Some(z.im));
            let (status, body) = cell(args.target, z, modulus.as_ref(), g, cutoff);
            let mut r = OutputRecord::new();
            r.str("status", status).append(head).append(body);
            r
        })
        .collect();
    Ok((records, EXIT_OK, None))
}
