//! Counts special-fiber points per stratum over a small field and checks
//! the totals against the closed forms.
//!
//!     cargo run --example stratum_census -- 5 1
//!
//! The two optional arguments are p and r (default 3 1).

use gsp4_nearby::gf::FieldCtx;
use gsp4_nearby::localmodel::special_fiber_count;
use gsp4_nearby::verify::stratum_census;
use gsp4_nearby::weyl::element;

fn main() {
    let mut args = std::env::args().skip(1);
    let p: u32 = args.next().map_or(3, |s| s.parse().expect("p must be an integer"));
    let r: u32 = args.next().map_or(1, |s| s.parse().expect("r must be an integer"));

    let ctx = FieldCtx::new(p, r).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        std::process::exit(2);
    });
    let q = ctx.q();
    println!("special fiber over F_{q} (p = {p}, r = {r})\n");

    let census = stratum_census(&ctx, 100_000_000).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        std::process::exit(2);
    });

    println!("{:<10} {:>8} {:>8}  closed form", "stratum", "length", "points");
    let mut total = 0;
    for (label, count) in &census {
        let qi = q as i64;
        let form = match element(*label).length {
            0 => "1".to_string(),
             1 => format!("q-1 = {}", qi - 1),
            2 => format!("(q-1)^2 = {}", (qi - 1).pow(2)),
            3 if matches!(count, _ if *count == ((q - 1) * (q * q - q + 1))) => {
                format!("(q-1)(q^2-q+1) = {}", (qi - 1) * (qi * qi - qi + 1))
            }
            _ => format!("(q-1)^3 = {}", (qi - 1).pow(3)),
        };
        println!("{:<10} {:>8} {:>8}  {}", label, element(*label).length, count, form);
        total += count;
    }
    println!("\ntotal {total} = q^2(3q-2)+(q-1)^3 = {}", special_fiber_count(q));
    assert_eq!(total, special_fiber_count(q));
}
