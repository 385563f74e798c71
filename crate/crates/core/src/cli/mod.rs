//! The `winding` command-line front end.
//!
//! Subcommands: `eval-w`, `eval-e2`, `invert`, `check`, `grid`, `continue`.
//! Exit codes: 0 ok, 1 usage, 2 domain, 3 pole, 4 non-convergence,
//! 5 identity check failed.

mod check;
mod complex;
mod grid;
mod record;

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use crate::coords::{continue_log, period_lift, CoveringPoint, PathSpec, UpperHalfTau};
use crate::error::Error;
use crate::inversion::{invert, on_curve_residual};
use crate::qseries::{
    eval_e2, eval_w_extended, eval_w_prime_extended, SeriesOptions, DEFAULT_MAX_TERMS, DEFAULT_TOL,
};
use crate::{Nome, WPoint, TWO_PI_I};

pub use check::{run_identities, IdentityReport};
pub use complex::{parse_complex, parse_complex_list, parse_range};
pub use grid::Target;
pub use record::{format_number, Format, OutputRecord, RecordWriter, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_POLE: i32 = 3;
pub const EXIT_NON_CONVERGENCE: i32 = 4;
pub const EXIT_CHECK_FAILED: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "winding", version, about = "Evaluate W(w,q), E2 and the inversion morphism onto E_tau")]
pub struct Cli {
    /// Absolute tolerance for every truncated series.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,

    /// Term budget for the truncation planner.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_TERMS)]
    pub max_terms: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// W(w,q) and W'(w,q) with tail bounds.
    EvalW(PointArgs),
    /// E2 from its q-expansion.
    EvalE2(ModulusArgs),
    /// The point of E_tau over w, with its on-curve residual.
    Invert(PointArgs),
    /// Run the identity suite on sampled inputs.
    Check(check::CheckArgs),
    /// Evaluate a target over a rectangular grid.
    Grid(grid::GridArgs),
    /// Continue Log z along a polyline.
    Continue(ContinueArgs),
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct ModulusArgs {
    /// Modulus tau in the upper half plane, e.g. `i` or `0.1+0.9i`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub tau: Option<Complex64>,

    /// Nome q with |q| != 1.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub q: Option<Complex64>,
}

#[derive(Debug, Clone, Args)]
#[group(required = false, multiple = false)]
pub struct OptionalModulusArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub tau: Option<Complex64>,

    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub q: Option<Complex64>,
}

#[derive(Debug, Clone, Args)]
pub struct PointArgs {
    #[command(flatten)]
    pub modulus: ModulusArgs,

    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub w: Complex64,
}

#[derive(Debug, Clone, Args)]
pub struct ContinueArgs {
    /// Polyline vertices, `x1+y1i,x2+y2i,...`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_vertices)]
    pub path: Vertices,

    /// Starting value of Log z; defaults to the principal logarithm of the first vertex.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub start: Option<Complex64>,

    #[command(flatten)]
    pub modulus: OptionalModulusArgs,
}

/// Vertex list given to `continue --path`.
#[derive(Debug, Clone, PartialEq)]
pub struct Vertices(pub Vec<Complex64>);

fn parse_vertices(s: &str) -> Result<Vertices, String> {
    parse_complex_list(s).map(Vertices)
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Copy)]
pub struct Global {
    pub opts: SeriesOptions,
    pub format: Format,
    pub seed: u64,
}

/// `(τ, q)` as echoed in records. Whichever was not given is derived from
/// the other, with `τ` taken on the principal branch.
#[derive(Debug, Clone, Copy)]
struct Modulus {
    tau: Option<Complex64>,
    q: Option<Complex64>,
    from_tau: bool,
}

impl Modulus {
    fn resolve(tau: Option<Complex64>, q: Option<Complex64>) -> Option<Self> {
        match (tau, q) {
            (Some(t), _) => Some(Self {
                tau: Some(t),
                q: Some((TWO_PI_I * t).exp()),
                from_tau: true,
            }),
            (None, Some(q)) => Some(Self {
                tau: (q.norm() > 0.0).then(|| q.ln() / TWO_PI_I),
                q: Some(q),
                from_tau: false,
            }),
            (None, None) => None,
        }
    }

    fn from_args(m: &ModulusArgs) -> Self {
        Self::resolve(m.tau, m.q).expect("clap requires one of --tau, --q")
    }

    /// The upper-half-plane modulus, when one exists.
    fn upper_tau(&self) -> Result<UpperHalfTau, Error> {
        if self.from_tau {
            return UpperHalfTau::new(self.tau.unwrap());
        }
        UpperHalfTau::from_nome(Nome::new(self.q.unwrap())?)
    }

    /// `q` on either side of the unit circle; `τ` must lie in the upper half
    /// plane when it was given.
    fn q_checked(&self) -> Result<Complex64, Error> {
        if self.from_tau {
            Ok(self.upper_tau()?.nome()?.value())
        } else {
            Ok(self.q.unwrap())
        }
    }

    fn echo(&self, r: &mut OutputRecord) {
        r.complex("tau_re", "tau_im", self.tau)
            .complex("q_re", "q_im", self.q);
    }
}

pub(crate) fn status_of(e: &Error) -> (&'static str, i32) {
    match e {
        Error::Domain(_) | Error::InvalidContinuation(_) => ("domain", EXIT_DOMAIN),
        Error::Pole { .. } => ("pole", EXIT_POLE),
        Error::NonConvergence { .. } => ("non_convergence", EXIT_NON_CONVERGENCE),
    }
}

/// Parses `args` (including the program name) and runs the subcommand,
/// writing records to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let _ = write!(err, "{e}");
            return EXIT_USAGE;
        }
    };
    let global = Global {
        opts: SeriesOptions {
            tol: cli.tol,
            max_terms: cli.max_terms,
        },
        format: cli.format,
        seed: cli.seed,
    };
    if !(global.opts.tol.is_finite() && global.opts.tol > 0.0) || global.opts.max_terms == 0 {
        let _ = writeln!(err, "error: --tol must be positive and --max-terms at least 1");
        return EXIT_USAGE;
    }

    let outcome = match &cli.command {
        Command::EvalW(a) => single(cmd_eval_w(a, &global)),
        Command::EvalE2(a) => single(cmd_eval_e2(a, &global)),
        Command::Invert(a) => single(cmd_invert(a, &global)),
        Command::Continue(a) => single(cmd_continue(a)),
        Command::Check(a) => check::cmd_check(a, &global),
        Command::Grid(a) => grid::cmd_grid(a, &global),
    };
    let (records, code, message) = match outcome {
        Ok(v) => v,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            return EXIT_USAGE;
        }
    };
    if let Some(m) = message {
        let _ = writeln!(err, "{m}");
    }
    let mut writer = RecordWriter::new(global.format, out);
    for r in &records {
        if writer.write(r).is_err() {
            return EXIT_USAGE;
        }
    }
    if writer.finish().is_err() {
        return EXIT_USAGE;
    }
    code
}

type Outcome = Result<(Vec<OutputRecord>, i32, Option<String>), String>;

fn single((record, code, message): (OutputRecord, i32, Option<String>)) -> Outcome {
    Ok((vec![record], code, message))
}

fn finish(
    status: Result<(), Error>,
    head: OutputRecord,
    body: OutputRecord,
) -> (OutputRecord, i32, Option<String>) {
    let (name, code, message) = match &status {
        Ok(()) => ("ok", EXIT_OK, None),
        Err(e) => {
            let (n, c) = status_of(e);
            (n, c, Some(format!("error: {e}")))
        }
    };
    let mut record = OutputRecord::new();
    record.str("status", name).append(head).append(body);
    (record, code, message)
}

pub fn cmd_eval_w(args: &PointArgs, g: &Global) -> (OutputRecord, i32, Option<String>) {
    let modulus = Modulus::from_args(&args.modulus);
    let mut head = OutputRecord::new();
    modulus.echo(&mut head);
    head.complex("w_re", "w_im", Some(args.w));

    let result = modulus.q_checked().and_then(|q| {
        let w = eval_w_extended(args.w, q, &g.opts)?;
        let wp = eval_w_prime_extended(args.w, q, &g.opts)?;
        Ok((w, wp))
    });
    let mut body = OutputRecord::new();
    let (w, wp) = match &result {
        Ok((w, wp)) => (Some(*w), Some(*wp)),
        Err(_) => (None, None),
    };
    body.complex("W_re", "W_im", w.map(|v| v.value))
        .num("W_tail_bound", w.map(|v| v.tail_bound))
        .int("W_n_terms", w.map(|v| v.n_terms as i64))
        .complex("Wprime_re", "Wprime_im", wp.map(|v| v.value))
        .num("Wprime_tail_bound", wp.map(|v| v.tail_bound))
        .int("Wprime_n_terms", wp.map(|v| v.n_terms as i64));
    finish(result.map(|_| ()), head, body)
}

pub fn cmd_eval_e2(args: &ModulusArgs, g: &Global) -> (OutputRecord, i32, Option<String>) {
    let modulus = Modulus::from_args(args);
    let mut head = OutputRecord::new();
    modulus.echo(&mut head);

    let result = modulus
        .upper_tau()
        .and_then(|t| t.nome())
        .and_then(|q| eval_e2(q, &g.opts));
    let v = result.as_ref().ok().copied();
    let mut body = OutputRecord::new();
    body.complex("E2_re", "E2_im", v.map(|v| v.value))
        .num("tail_bound", v.map(|v| v.tail_bound))
        .int("n_terms", v.map(|v| v.n_terms as i64));
    finish(result.map(|_| ()), head, body)
}

pub fn cmd_invert(args: &PointArgs, g: &Global) -> (OutputRecord, i32, Option<String>) {
    let modulus = Modulus::from_args(&args.modulus);
    let mut head = OutputRecord::new();
    modulus.echo(&mut head);
    head.complex("w_re", "w_im", Some(args.w));

    let result = modulus.upper_tau().and_then(|tau| {
        let p = invert(WPoint::new(args.w)?, tau, &g.opts)?;
        let residual = on_curve_residual(&p, tau, &g.opts)?;
        Ok((p, residual))
    });
    let mut body = OutputRecord::new();
    match &result {
        Ok((p, residual)) => {
            body.str("point", if p.is_infinity() { "(0:1:0)" } else { "affine" })
                .complex("X_re", "X_im", Some(p.x()))
                .complex("Y_re", "Y_im", Some(p.y()))
                .complex("Z_re", "Z_im", Some(p.z()))
                .num("residual", Some(*residual));
        }
        Err(_) => {
            body.complex("X_re", "X_im", None)
                .complex("Y_re", "Y_im", None)
                .complex("Z_re", "Z_im", None)
                .num("residual", None);
        }
    }
    finish(result.map(|_| ()), head, body)
}

pub fn cmd_continue(args: &ContinueArgs) -> (OutputRecord, i32, Option<String>) {
    let modulus = Modulus::resolve(args.modulus.tau, args.modulus.q);
    let mut head = OutputRecord::new();
    if let Some(m) = &modulus {
        m.echo(&mut head);
    }
    head.int("n_vertices", Some(args.path.0.len() as i64));

    let result = (|| {
        let path = PathSpec::new(args.path.0.clone())?;
        let start = match args.start {
            Some(s) => CoveringPoint::new(s),
            None => CoveringPoint::principal(path.first())?,
        };
        let (end, winding) = continue_log(&path, start)?;
        let lifts = match &modulus {
            Some(m) => {
                let tau = m.upper_tau()?;
                Some((period_lift(start, tau)?.value(), period_lift(end, tau)?.value()))
            }
            None => None,
        };
        Ok((start, end, winding, lifts))
    })();

    let mut body = OutputRecord::new();
    let ok = result.as_ref().ok();
    body.complex("start_logz_re", "start_logz_im", ok.map(|r| r.0.logz))
        .complex("end_logz_re", "end_logz_im", ok.map(|r| r.1.logz))
        .int("winding", ok.map(|r| r.2));
    if modulus.is_some() {
        let lifts = ok.and_then(|r| r.3);
        body.complex("w_start_re", "w_start_im", lifts.map(|l| l.0))
            .complex("w_end_re", "w_end_im", lifts.map(|l| l.1));
    }
    finish(result.map(|_| ()), head, body)
}
