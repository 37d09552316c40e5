//! Prints the thirteen admissible elements with their lengths,
//! difference vectors, and translation parts, then shows label parsing.
//!
//!     cargo run --example admissible_table

use std::str::FromStr;

use gsp4_nearby::weyl::{admissible_set, AdmLabel};

fn main() {
    println!("{:<10} {:>6}  {:<34} translation", "label", "length", "difference vectors");
    for elem in admissible_set() {
        let diffs = elem
            .diff
            .iter()
            .map(|t| t.iter().map(u8::to_string).collect::<String>())
            .collect::<Vec<_>>()
            .join(" ");
        let tr: String = elem.translation.iter().map(u8::to_string).collect();
        println!("{:<10} {:>6}  {:<34} {}", elem.label, elem.length, diffs, tr);
    }

    // Labels parse from ASCII with optional separators.
    for text in ["s010tau", "s0·1·0·τ", "TAU"] {
        match AdmLabel::from_str(text) {
            Ok(label) => println!("{text:?} parses as {label}"),
            Err(e) => println!("{text:?} is rejected: {e}"),
        }
    }
}
