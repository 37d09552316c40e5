//! The same trace-equals-test-function comparison on the rank-n variant
//! with its one-line fiber recipe, swept exhaustively for small n and q.
//!
//!     cargo run --example drinfeld_check

use gsp4_nearby::drinfeld::{trace_drinfeld, verify_drinfeld, DrinfeldPoint};
use gsp4_nearby::gf::FieldCtx;
use gsp4_nearby::report::drinfeld_text;

fn main() {
    let ctx = FieldCtx::new(3, 1).unwrap();

    // A single point first: the vanishing set S of (a_1, a_2) = (1, 0)
    // is {2}, so the trace is crs(1) * (1-q)^0 = 2.
    let point = DrinfeldPoint::new(&ctx, vec![ctx.one(), ctx.zero()]).unwrap();
    println!(
        "rank-2 point with vanishing set {:?}: trace {}",
        point.stratum(&ctx),
        trace_drinfeld(&ctx, &point)
    );

    for (p, r) in [(3u32, 1u32), (3, 2), (5, 1)] {
        let ctx = FieldCtx::new(p, r).unwrap();
        for n in 2..=4usize {
            let report = verify_drinfeld(&ctx, n).unwrap();
            print!("{}", drinfeld_text(&report));
            assert!(report.verdict());
        }
    }

    // The sweep refuses budgets it cannot enumerate exhaustively.
    let big = FieldCtx::new(5, 2).unwrap();
    match verify_drinfeld(&big, 2) {
        Err(e) => println!("q = 25 is refused: {e}"),
        Ok(_) => unreachable!("the budget guard admits q <= 9 only"),
    }
}
