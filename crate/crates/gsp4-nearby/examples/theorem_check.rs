//! Runs the full pointwise comparison — fiber trace against scaled test
//! function — over every special-fiber point of a chosen field, and
//! prints the verification report.
//!
//!     cargo run --release --example theorem_check -- 3 2
//!
//! The two optional arguments are p and r (default 3 1).

use gsp4_nearby::gf::FieldCtx;
use gsp4_nearby::report::verify_text;
use gsp4_nearby::verify::verify_theorem;

fn main() {
    let mut args = std::env::args().skip(1);
    let p: u32 = args.next().map_or(3, |s| s.parse().expect("p must be an integer"));
    let r: u32 = args.next().map_or(1, |s| s.parse().expect("r must be an integer"));

    let ctx = FieldCtx::new(p, r).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        std::process::exit(2);
    });
    let report = verify_theorem(&ctx, 100_000_000, None).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        std::process::exit(2);
    });
    print!("{}", verify_text(&report, true));
    std::process::exit(if report.pass { 0 } else { 1 });
}
