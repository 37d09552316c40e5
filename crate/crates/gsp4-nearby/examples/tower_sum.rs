//! Walks the blow-up tower over the worst point: shows the per-stage
//! layer sums vanishing literally at a few base points, then sums the
//! tower over the projective square and compares with (1-q)^3.
//!
//!     cargo run --example tower_sum

use gsp4_nearby::gf::FieldCtx;
use gsp4_nearby::nearby::{tower_layer_sums, tower_trace_e0};

fn main() {
    for (p, r) in [(3u32, 1u32), (5, 1), (3, 2)] {
        let ctx = FieldCtx::new(p, r).unwrap();
        let q = ctx.q();

        println!("tower over F_{q}");
        for (ai, di) in [(0u64, 0u64), (1, 0), (1, 2)] {
            let alpha = ctx.element_from_index(ai).unwrap();
            let delta = ctx.element_from_index(di % q).unwrap();
            let sums = tower_layer_sums(&ctx, alpha, delta);
            let fiber = tower_trace_e0(&ctx, alpha, delta);
            println!(
                "  base (alpha, delta) = (index {ai}, index {}): layer sums {:?}, fiber trace {fiber}",
                di % q,
                sums
            );
            assert!(sums.iter().all(|&s| s == 0), "every intermediate layer cancels");
        }

        // P^1(F_q) as q+1 parameters; infinity enters through the value 0.
        let param = |i: u64| {
            if i == q {
                ctx.zero()
            } else {
                ctx.element_from_index(i).unwrap()
            }
        };
        let mut total = 0i64;
        for i in 0..=q {
            for j in 0..=q {
                total += tower_trace_e0(&ctx, param(i), param(j));
            }
        }
        let closed = (1 - q as i64).pow(3);
        println!("  sum over P^1 x P^1: {total} (closed form (1-q)^3 = {closed})\n");
        assert_eq!(total, closed);
    }
}
