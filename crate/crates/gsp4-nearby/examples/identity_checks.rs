//! Runs the four algebraic identity suites over every special-fiber
//! point: the similitude products, the parameter zero-patterns, the
//! matrix-chain containments, and the blow-up layer sums.
//!
//!     cargo run --example identity_checks -- 5 1
//!
//! The two optional arguments are p and r (default 3 1).

use gsp4_nearby::gf::FieldCtx;
use gsp4_nearby::report::identities_text;
use gsp4_nearby::verify::check_identities;

fn main() {
    let mut args = std::env::args().skip(1);
    let p: u32 = args.next().map_or(3, |s| s.parse().expect("p must be an integer"));
    let r: u32 = args.next().map_or(1, |s| s.parse().expect("r must be an integer"));

    let ctx = FieldCtx::new(p, r).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        std::process::exit(2);
    });
    let report = check_identities(&ctx, 100_000_000).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        std::process::exit(2);
    });
    print!("{}", identities_text(&report));
    std::process::exit(if report.pass() { 0 } else { 1 });
}
