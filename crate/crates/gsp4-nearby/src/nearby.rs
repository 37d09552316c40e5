//! The trace engine: computes the Frobenius trace of the pushed-forward
//! nearby-cycle complex at any special-fiber point by enumerating the
//! F_q-rational points of the resolution fiber, segment by segment, and
//! summing the local branch-count traces (1-q)^(branches-1).
//!
//! The engine executes the per-stratum recipes from [`crate::charts`]; it
//! never hard-codes a final trace value, so the closed forms
//! (p-1)^2, (p-1)(1-q), (1-q)^2, (1-q)^3 + (p-1)q(1-q) remain independent
//! checks on its output.

use std::fmt;

use crate::charts::{recipe, Segment};
use crate::gf::{FieldCtx, FqElement};
use crate::localmodel::{classify, ModelPoint};
use crate::weyl::{element, AdmLabel};

/// Trace of Frobenius on the nearby-cycle stalk at a point lying on
/// `branches` branches of a tame normal-crossings divisor: (1-q)^(branches-1).
pub fn local_trace(branches: u32, q: u64) -> i64 {
    assert!(branches >= 1, "a fiber point lies on at least one branch");
    let base = 1 - i64::try_from(q).expect("field size fits in i64");
    base.checked_pow(branches - 1)
        .expect("trace arithmetic stays within 64 bits")
}

/// One enumerated piece of the resolution fiber over a base point: `count`
/// F_q-rational points, each on `branches` branches, contributing
/// `count * (1-q)^(branches-1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiberSegmentRow {
    pub description: String,
    pub chart: String,
    pub count: u64,
    pub branches: u32,
    pub contribution: i64,
}

impl FiberSegmentRow {
    fn new(description: String, chart: &str, count: u64, branches: u32, q: u64) -> Self {
        let contribution = i64::try_from(count)
            .ok()
            .and_then(|c| c.checked_mul(local_trace(branches, q)))
            .expect("trace arithmetic stays within 64 bits");
        FiberSegmentRow { description, chart: chart.to_string(), count, branches, contribution }
    }
}

/// Full account of one trace computation: the base point, its stratum, the
/// trace, and every fiber segment that contributed.
///
/// Invariants: `trace` equals the sum of the contributions, and each
/// contribution equals `count * (1-q)^(branches-1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TraceReport {
    pub point: ModelPoint,
    pub stratum: AdmLabel,
    pub trace: i64,
    pub fiber_detail: Vec<FiberSegmentRow>,
}

impl TraceReport {
    /// Renders the report as an aligned table for terminal output.
    pub fn render(&self, ctx: &FieldCtx) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "point (x,y,a,b,c) = ({}) over F_{}\n",
            self.point.literal(ctx),
            ctx.q()
        ));
        out.push_str(&format!(
            "stratum {} (length {})\n",
            self.stratum,
            element(self.stratum).length
        ));
        out.push_str(&format!("trace {}\n\n", self.trace));
        out.push_str(&format!(
            "  {:<52} {:<16} {:>8} {:>9} {:>13}\n",
            "fiber segment", "chart", "points", "branches", "contribution"
        ));
        for row in &self.fiber_detail {
            out.push_str(&format!(
                "  {:<52} {:<16} {:>8} {:>9} {:>13}\n",
                row.description, row.chart, row.count, row.branches, row.contribution
            ));
        }
        out
    }
}

impl fmt::Display for TraceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "stratum {} trace {}", self.stratum, self.trace)
    }
}

/// The literal per-stage sums Σ_β (1-q)^([β=0]+[α=0]+[δ=0]) of the blow-up
/// tower, one entry per stage j = 1..p-2, computed term by term with no
/// pre-simplification.
pub fn tower_layer_sums(ctx: &FieldCtx, alpha: FqElement, delta: FqElement) -> Vec<i64> {
    let zero = ctx.zero();
    let za = u32::from(alpha == zero);
    let zd = u32::from(delta == zero);
    (1..=ctx.p() - 2)
        .map(|_| {
            let mut sum = 0i64;
            for beta in ctx.elements() {
                let zb = u32::from(beta == zero);
                sum = sum
                    .checked_add(local_trace(zb + za + zd + 1, ctx.q()))
                    .expect("trace arithmetic stays within 64 bits");
            }
            sum
        })
        .collect()
}

/// Trace contribution of the full blow-up tower over one projective-fiber
/// point (α, δ): the p-2 stage sums (each asserted to vanish exactly) plus
/// the final-stage point on 2+[α=0]+[δ=0] branches.
pub fn tower_trace_e0(ctx: &FieldCtx, alpha: FqElement, delta: FqElement) -> i64 {
    let zero = ctx.zero();
    let mut total = 0i64;
    for (j, sum) in tower_layer_sums(ctx, alpha, delta).into_iter().enumerate() {
        assert_eq!(sum, 0, "tower stage {} sum must vanish exactly", j + 1);
        total += sum;
    }
    let branches = 2 + u32::from(alpha == zero) + u32::from(delta == zero);
    total + local_trace(branches, ctx.q())
}

/// Sum over λ in F_q^× of the family-member contributions at parameter
/// γ: (1-q)^2 for the degenerate member (1+γλ = 0), and
/// count_root_solutions(1+γλ)·(1-q) otherwise. Excludes the family origin.
pub fn lambda_partial_sum(ctx: &FieldCtx, gamma: FqElement) -> i64 {
    let (nz_count, degenerate) = lambda_family_counts(ctx, gamma);
    let q = ctx.q();
    let mut sum = i64::try_from(nz_count).unwrap() * local_trace(2, q);
    if degenerate {
        sum += local_trace(3, q);
    }
    sum
}

/// Number of rational fiber points over the non-degenerate family members,
/// and whether the degenerate member 1+γλ = 0 occurs (it does iff γ ≠ 0).
fn lambda_family_counts(ctx: &FieldCtx, gamma: FqElement) -> (u64, bool) {
    let zero = ctx.zero();
    let one = ctx.one();
    let mut nz_count = 0u64;
    let mut degenerate = false;
    for lam in ctx.units() {
        let u = ctx.add(one, ctx.mul(gamma, lam));
        if u == zero {
            degenerate = true;
        } else {
            nz_count += ctx.count_root_solutions(u);
        }
    }
    (nz_count, degenerate)
}

/// Executes the tower over all of P¹(F_q) × P¹(F_q), with the infinite point
/// mapping to parameter 0, returning the total and the bookkeeping rows
/// (grouped by stage and by how many of β, α, δ vanish).
fn tower_rows(ctx: &FieldCtx) -> (i64, Vec<FiberSegmentRow>) {
    let q = ctx.q();
    let stages = (ctx.p() - 2) as usize;
    let zero = ctx.zero();
    let mut layer_counts = vec![[0u64; 4]; stages];
    let mut final_counts = [0u64; 3];
    let mut total = 0i64;
    let param = |i: u64| {
        if i == q {
            zero // the point at infinity carries parameter 0
        } else {
            ctx.element_from_index(i).unwrap()
        }
    };
    for ai in 0..=q {
        for di in 0..=q {
            let alpha = param(ai);
            let delta = param(di);
            total = total
                .checked_add(tower_trace_e0(ctx, alpha, delta))
                .expect("trace arithmetic stays within 64 bits");
            let za = usize::from(alpha == zero);
            let zd = usize::from(delta == zero);
            for stage in layer_counts.iter_mut() {
                for bi in 0..q {
                    let zb = usize::from(bi == 0);
                    stage[zb + za + zd] += 1;
                }
            }
            final_counts[za + zd] += 1;
        }
    }
    let mut rows = Vec::new();
    for (s, stage) in layer_counts.iter().enumerate() {
        for k in (0..4).rev() {
            rows.push(FiberSegmentRow::new(
                format!("tower stage {}, {} of (beta, alpha, delta) zero", s + 1, k),
                &format!("R{s}"),
                stage[k],
                k as u32 + 1,
                q,
            ));
        }
    }
    for m in (0..3).rev() {
        rows.push(FiberSegmentRow::new(
            format!("tower final stage, {m} of (alpha, delta) zero"),
            "E-final",
            final_counts[m],
            m as u32 + 2,
            q,
        ));
    }
    let row_sum: i64 = rows.iter().map(|r| r.contribution).sum();
    assert_eq!(total, row_sum, "tower bookkeeping must match the literal sum");
    (total, rows)
}

/// Largest trace magnitude any point can produce: the worst-point value
/// (q-1)^3 + (p-1)q(q-1).
pub fn trace_bound(ctx: &FieldCtx) -> i64 {
    let q = i64::try_from(ctx.q()).unwrap();
    let p = i64::try_from(ctx.p()).unwrap();
    (q - 1).pow(3) + (p - 1) * q * (q - 1)
}

/// Computes the Frobenius trace at a special-fiber point by classifying it
/// and executing its stratum's fiber recipe segment by segment.
pub fn trace_at(ctx: &FieldCtx, point: &ModelPoint) -> TraceReport {
    let elem = classify(ctx, point);
    let rec = recipe(elem.label);
    let q = ctx.q();
    let mut rows: Vec<FiberSegmentRow> = Vec::new();
    for seg in rec.segments {
        match seg {
            Segment::RootFiber { units, branches, chart } => {
                let mut count = 1u64;
                let mut names = Vec::new();
                for u in *units {
                    count *= ctx.count_root_solutions(u.eval(ctx, point));
                    names.push(u.name());
                }
                rows.push(FiberSegmentRow::new(
                    format!("(p-1)-th roots of {}", names.join(", ")),
                    chart,
                    count,
                    *branches,
                    q,
                ));
            }
            Segment::SinglePoint { branches, chart } => {
                rows.push(FiberSegmentRow::new(
                    "isolated rational point".to_string(),
                    chart,
                    1,
                    *branches,
                    q,
                ));
            }
            Segment::LambdaFamily { family_chart, origin_chart } => {
                let gamma = point.c;
                let (nz_count, degenerate) = lambda_family_counts(ctx, gamma);
                rows.push(FiberSegmentRow::new(
                    "family members with 1 + c*lambda nonzero".to_string(),
                    family_chart,
                    nz_count,
                    2,
                    q,
                ));
                if degenerate {
                    rows.push(FiberSegmentRow::new(
                        "degenerate member at lambda = -1/c".to_string(),
                        family_chart,
                        1,
                        3,
                        q,
                    ));
                }
                rows.push(FiberSegmentRow::new(
                    "family origin".to_string(),
                    origin_chart,
                    ctx.count_root_solutions(ctx.one()),
                    2,
                    q,
                ));
            }
            Segment::Tower { .. } => {
                let (_total, tower) = tower_rows(ctx);
                rows.extend(tower);
            }
        }
    }
    let trace = rows
        .iter()
        .map(|r| r.contribution)
        .try_fold(0i64, i64::checked_add)
        .expect("trace arithmetic stays within 64 bits");
    assert!(
        trace.abs() <= trace_bound(ctx),
        "trace {} exceeds the magnitude bound {}",
        trace,
        trace_bound(ctx)
    );
    TraceReport { point: *point, stratum: elem.label, trace, fiber_detail: rows }
}
