#![allow(dead_code)]

use std::path::PathBuf;

use winding_quotient::cli::{self, EXIT_OK, EXIT_POLE};

/// Runs the front end in process and returns `(exit code, stdout, stderr)`.
pub fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("winding").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

pub const GOLDEN: &[(&str, &[&str], i32)] = &[
    ("eval_w_half_minus_one.json", &["eval-w", "--q", "0.5", "--w", "-1"], EXIT_OK),
    ("eval_w_pole.json", &["eval-w", "--q", "0.5", "--w", "1"], EXIT_POLE),
    ("eval_w_tau_i.json", &["eval-w", "--tau", "i", "--w", "2+0i", "--format", "json"], EXIT_OK),
    ("eval_w_outer_nome.csv", &["eval-w", "--q", "-2+1i", "--w", "0.3-0.4i", "--format", "csv"], EXIT_OK),
    ("eval_e2_tau_i.csv", &["eval-e2", "--tau", "i", "--format", "csv"], EXIT_OK),
    ("invert_identity.json", &["invert", "--tau", "i", "--w", "1"], EXIT_OK),
    ("invert_two_torsion.json", &["invert", "--tau", "i", "--w", "-1"], EXIT_OK),
    ("invert_generic.csv", &["invert", "--tau", "0.1+0.9i", "--w", "0.3+0.2i", "--format", "csv"], EXIT_OK),
    ("continue_square.json", &["continue", "--path", "1,i,-1,-i,1", "--tau", "0.1+1.1i"], EXIT_OK),
    ("grid_w.csv", &["grid", "--target", "W", "--q", "0.3", "--nx", "3", "--ny", "3", "--format", "csv"], EXIT_OK),
    ("grid_invert.json", &["grid", "--target", "invert", "--tau", "i", "--re", "-1,1", "--im", "0,0.5", "--nx", "3", "--ny", "2"], EXIT_OK),
    ("grid_e2.csv", &["grid", "--target", "E2", "--re", "-0.5,0.5", "--im", "0.8,1.6", "--nx", "2", "--ny", "3", "--format", "csv"], EXIT_OK),
    ("grid_wp.csv", &["grid", "--target", "wp", "--tau", "0.2+1.1i", "--re", "0,0.5", "--im", "0,0.5", "--nx", "2", "--ny", "2", "--cutoff", "30", "--format", "csv"], EXIT_OK),
    ("check_seed_7.json", &["check", "--seed", "7", "--samples", "3", "--cutoff", "50"], EXIT_OK),
];

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}
