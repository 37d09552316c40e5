//! Shows how each stratum's reduced fiber decomposes into chart-backed
//! segments, and traces one point per stratum over F_9 to connect the
//! recipes with actual trace values.
//!
//!     cargo run --example fiber_recipes

use std::collections::BTreeMap;

use gsp4_nearby::charts::{recipe, Segment};
use gsp4_nearby::gf::FieldCtx;
use gsp4_nearby::localmodel::enumerate_special_fiber;
use gsp4_nearby::nearby::trace_at;
use gsp4_nearby::weyl::AdmLabel;

fn main() {
    println!("fiber recipe per stratum\n");
    for label in AdmLabel::ALL {
        let rec = recipe(label);
        let parts: Vec<String> = rec
            .segments
            .iter()
            .map(|seg| match seg {
                Segment::RootFiber { units, branches, chart } => format!(
                    "roots of {} ({} branches, chart {chart})",
                    units.iter().map(|u| u.name()).collect::<Vec<_>>().join(", "),
                    branches
                ),
                Segment::SinglePoint { branches, chart } => {
                    format!("isolated point ({branches} branches, chart {chart})")
                }
                Segment::LambdaFamily { family_chart, origin_chart } => {
                    format!("unit-parameter family (charts {family_chart}, {origin_chart})")
                }
                Segment::Tower { entry_chart } => format!("blow-up tower (entry {entry_chart})"),
            })
            .collect();
        println!("  {:<10} {}", label.to_string(), parts.join(" + "));
    }

    // One representative point per stratum over F_9.
    let ctx = FieldCtx::new(3, 2).unwrap();
    let mut seen: BTreeMap<AdmLabel, i64> = BTreeMap::new();
    for point in enumerate_special_fiber(&ctx, 100_000_000).unwrap() {
        let rep = trace_at(&ctx, &point);
        seen.entry(rep.stratum).or_insert(rep.trace);
        if seen.len() == 13 {
            break;
        }
    }
    println!("\nfirst-seen trace per stratum over F_9");
    for (label, trace) in &seen {
        println!("  {:<10} {:>6}", label.to_string(), trace);
    }
}
