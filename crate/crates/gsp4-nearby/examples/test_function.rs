//! Evaluates the scaled Hecke test function at torus elements and shows
//! how the value depends only on component norms and the stratum label.
//!
//!     cargo run --example test_function

use gsp4_nearby::gf::FieldCtx;
use gsp4_nearby::hecke::{in_a, phi_scaled, s_x, TorusElement};
use gsp4_nearby::localmodel::ModelPoint;
use gsp4_nearby::weyl::AdmLabel;

fn main() {
    let ctx = FieldCtx::new(3, 1).unwrap();

    println!("values of the scaled test function over F_3\n");
    println!("{:<14} {:<10} {:>9} {:>6}", "s (indices)", "w", "member", "phi");
    let samples: [([u64; 4], AdmLabel); 6] = [
        ([1, 1, 1, 1], AdmLabel::Tau),
        ([2, 1, 1, 1], AdmLabel::Tau),
        ([1, 1, 1, 1], AdmLabel::S010Tau),
        ([1, 1, 2, 2], AdmLabel::S010Tau),
        ([1, 1, 1, 1], AdmLabel::S1Tau),
        ([1, 1, 1, 1], AdmLabel::S01Tau),
    ];
    for (indices, w) in samples {
        let g = indices.map(|i| ctx.element_from_index(i).unwrap());
        let torus = TorusElement::new(&ctx, g);
        let member = in_a(&ctx, w, g.map(|v| ctx.norm(v)));
        let phi = phi_scaled(&ctx, &torus, w);
        println!(
            "{:<14} {:<10} {:>9} {:>6}",
            format!("{:?}", indices),
            w.to_string(),
            member,
            phi
        );
    }

    // The torus element attached to a special-fiber point: here both
    // parameter products vanish with a and b units, so s_x = (a, b, a, b).
    let point = ModelPoint::from_indices(&ctx, [0, 0, 1, 2, 0]).unwrap();
    let w = AdmLabel::S02Tau;
    let s = s_x(&ctx, &point, w);
    println!(
        "\npoint ({}) in stratum {} maps to s_x with component indices {:?}",
        point.literal(&ctx),
        w,
        s.g.map(|v| ctx.index_of(v))
    );
    println!("similitude flag: {}", s.similitude);
    let phi = phi_scaled(&ctx, &s, w);
    let trace = gsp4_nearby::nearby::trace_at(&ctx, &point).trace;
    println!("phi at (s_x, w): {phi}");
    println!("fiber trace at the point: {trace}");
    assert_eq!(trace, phi, "the pointwise comparison holds here");
}
