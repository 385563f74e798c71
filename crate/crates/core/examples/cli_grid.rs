// Driving the command-line front end in process: a CSV grid of `W` over
// part of the annulus.

use winding_quotient::cli;

pub fn run_example() -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let args = [
        "winding", "grid", "--target", "W", "--q", "0.2+0.1i", "--re", "-1,1", "--im", "-1,1",
        "--nx", "3", "--ny", "3", "--format", "csv",
    ];
    let code = cli::run(args, &mut out, &mut err);
    let text = String::from_utf8(out).expect("utf-8");
    print!("{text}");
    eprint!("{}", String::from_utf8_lossy(&err));
    (code, text)
}

fn main() {
    let (code, _) = run_example();
    std::process::exit(code);
}
