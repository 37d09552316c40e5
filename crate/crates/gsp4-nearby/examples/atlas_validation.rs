//! Lists the resolution charts for a chosen characteristic and validates
//! each one numerically over F_p: tameness, uniformizer against the
//! transcribed value of p, and special-fiber membership.
//!
//!     cargo run --example atlas_validation -- 5
//!
//! The optional argument is p (default 3).

use gsp4_nearby::charts::{atlas, validate_chart};
use gsp4_nearby::gf::FieldCtx;
use gsp4_nearby::report::atlas_text;

fn main() {
    let p: u32 = std::env::args()
        .nth(1)
        .map_or(3, |s| s.parse().expect("p must be an integer"));
    let ctx = FieldCtx::new(p, 1).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        std::process::exit(2);
    });

    let charts = atlas(p);
    let validations: Vec<_> = charts.iter().map(|c| validate_chart(c, &ctx)).collect();
    print!("{}", atlas_text(&charts, Some(&validations)));

    let failing = validations.iter().filter(|v| !v.pass()).count();
    println!("\n{} of {} charts validate", validations.len() - failing, validations.len());
    std::process::exit(if failing == 0 { 0 } else { 1 });
}
