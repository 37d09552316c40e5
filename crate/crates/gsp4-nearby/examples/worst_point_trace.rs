//! Computes the Frobenius trace on the fiber over the worst singular
//! point (the origin, where every stratum equation degenerates at once)
//! and prints the full per-segment breakdown.
//!
//!     cargo run --example worst_point_trace

use gsp4_nearby::gf::FieldCtx;
use gsp4_nearby::localmodel::ModelPoint;
use gsp4_nearby::nearby::trace_at;

fn main() {
    for (p, r) in [(3u32, 1u32), (3, 2), (5, 1), (5, 2)] {
        let ctx = FieldCtx::new(p, r).unwrap();
        let q = ctx.q() as i64;
        let origin = ModelPoint::from_indices(&ctx, [0; 5]).unwrap();
        let report = trace_at(&ctx, &origin);
        println!("{}", report.render(&ctx));
        let closed = (1 - q).pow(3) + (p as i64 - 1) * q * (1 - q);
        println!("closed form (1-q)^3 + (p-1)q(1-q) = {closed}\n");
        assert_eq!(report.trace, closed);
    }
}
