//! Exact Frobenius traces of nearby cycles on the pro-p Iwahori local model
//! for GSp(4) with parahoric level, checked pointwise against an explicit
//! test function on the affine Weyl group.
//!
//! Everything here is exact integer and finite-field arithmetic: no floats,
//! no approximation. The crate exposes, layer by layer,
//!
//! * [`gf`] — deterministic finite fields F_{p^r} with the norm and the
//!   t^{p-1} = u solution count that all fiber counts reduce to;
//! * [`weyl`] — the thirteen-element admissible set for the cocharacter
//!   (1,1,0,0) of GSp(4), with lengths and box diffs;
//! * [`localmodel`] — points of the special fiber of the quadric model
//!   x y = p, a x + b y + a b c = 0, their stratum classification, and the
//!   lattice-chain witness behind it;
//! * [`charts`] — the atlas of affine charts of the p-resolution whose shape
//!   (how many tame roots, which monomial cuts out p) drives every trace;
//! * [`nearby`] — the pointwise trace of Frobenius on the nearby-cycle
//!   complex, assembled per stratum from the chart data;
//! * [`hecke`] — the test function on the pro-p Iwahori Hecke side: torus
//!   subgroups attached to each stratum and the scaled characteristic
//!   function it integrates to;
//! * [`drinfeld`] — the same comparison for the Drinfeld case of GL(n),
//!   where both sides are a closed form;
//! * [`verify`] — full sweeps over the special fiber comparing the two sides
//!   point by point, plus the internal-consistency identity suite;
//! * [`report`] and [`cli`] — rendering and the command-line front end.
//!
//! The headline identity, checked by [`verify::verify_theorem`] at every
//! point x of the special fiber over F_q, is
//!
//! ```text
//! Tr(Fr_q; nearby cycles at x) = (q - 1)^3 * phi'(s_x w)
//! ```
//!
//! with the right-hand side computed in [`hecke`] from the stratum w of x and
//! its torus parameter s_x alone.

pub mod charts;
pub mod cli;
pub mod drinfeld;
mod error;
pub mod gf;
pub mod hecke;
pub mod localmodel;
pub mod nearby;
pub mod report;
pub mod verify;
pub mod weyl;

pub use error::Error;
