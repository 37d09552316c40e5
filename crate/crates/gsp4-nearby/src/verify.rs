//! Full-fiber orchestration: sweeps every special-fiber point, compares the
//! engine trace against the scaled test function, and runs the cross-cutting
//! identity suites. The sweep is data-parallel with an associative,
//! commutative merge, so the report is identical across worker counts.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::Error;
use crate::gf::{FieldCtx, FqElement};
use crate::hecke::{phi_scaled, s_x};
use crate::localmodel::{
    classify, enumerate_special_fiber, matches_ot_pattern, matrix_chain, ModelPoint,
};
use crate::nearby::{tower_layer_sums, trace_at, TraceReport};
use crate::weyl::AdmLabel;

/// Pointwise tallies for one stratum.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StratumStats {
    pub label: AdmLabel,
    pub count: u64,
    pub pass: u64,
    pub fail: u64,
}

/// First failing point of a sweep, with the full trace breakdown for
/// diagnosis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Witness {
    pub point: [u64; 5],
    pub stratum: AdmLabel,
    pub trace: i64,
    pub phi: i64,
    pub detail: TraceReport,
}

/// Outcome of the full-fiber comparison.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub p: u32,
    pub r: u32,
    pub q: u64,
    /// One entry per stratum, in the canonical longest-first order.
    pub strata: Vec<StratumStats>,
    pub total: u64,
    pub pass: bool,
    pub witness: Option<Witness>,
    pub elapsed: Duration,
}

impl VerificationReport {
    /// Equality of everything except the elapsed time, which varies run to
    /// run.
    pub fn same_outcome(&self, other: &VerificationReport) -> bool {
        self.p == other.p
            && self.r == other.r
            && self.q == other.q
            && self.strata == other.strata
            && self.total == other.total
            && self.pass == other.pass
            && self.witness == other.witness
    }
}

fn label_index(label: AdmLabel) -> usize {
    AdmLabel::ALL.iter().position(|l| *l == label).unwrap()
}

/// Associative, commutative accumulator for the parallel sweep: per-stratum
/// tallies plus the witness with the smallest enumeration index.
#[derive(Clone)]
struct SweepAcc {
    counts: [[u64; 3]; 13],
    witness: Option<(usize, Witness)>,
}

impl SweepAcc {
    fn empty() -> SweepAcc {
        SweepAcc { counts: [[0; 3]; 13], witness: None }
    }

    fn merge(mut self, other: SweepAcc) -> SweepAcc {
        for (mine, theirs) in self.counts.iter_mut().zip(other.counts) {
            for (m, t) in mine.iter_mut().zip(theirs) {
                *m += t;
            }
        }
        self.witness = match (self.witness.take(), other.witness) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }
}

fn sweep_point(ctx: &FieldCtx, index: usize, point: &ModelPoint) -> SweepAcc {
    let report = trace_at(ctx, point);
    let s = s_x(ctx, point, report.stratum);
    let phi = phi_scaled(ctx, &s, report.stratum);
    let mut acc = SweepAcc::empty();
    let row = &mut acc.counts[label_index(report.stratum)];
    row[0] += 1;
    if report.trace == phi {
        row[1] += 1;
    } else {
        row[2] += 1;
        acc.witness = Some((
            index,
            Witness {
                point: point.indices(ctx),
                stratum: report.stratum,
                trace: report.trace,
                phi,
                detail: report,
            },
        ));
    }
    acc
}

/// Checks trace = Phi at every special-fiber point. `workers` bounds the
/// rayon pool (None uses the global pool); the merged report is identical
/// for every worker count, single-threaded included.
pub fn verify_theorem(
    ctx: &FieldCtx,
    limit: u64,
    workers: Option<usize>,
) -> Result<VerificationReport, Error> {
    let start = Instant::now();
    let points: Vec<ModelPoint> = enumerate_special_fiber(ctx, limit)?.collect();
    let run = || {
        points
            .par_iter()
            .enumerate()
            .map(|(i, p)| sweep_point(ctx, i, p))
            .reduce(SweepAcc::empty, SweepAcc::merge)
    };
    let acc = match workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .expect("worker pool")
            .install(run),
        None => run(),
    };
    let strata: Vec<StratumStats> = AdmLabel::ALL
        .iter()
        .enumerate()
        .map(|(i, label)| StratumStats {
            label: *label,
            count: acc.counts[i][0],
            pass: acc.counts[i][1],
            fail: acc.counts[i][2],
        })
        .collect();
    let total: u64 = strata.iter().map(|s| s.count).sum();
    let pass = strata.iter().all(|s| s.fail == 0);
    Ok(VerificationReport {
        p: ctx.p(),
        r: ctx.r(),
        q: ctx.q(),
        strata,
        total,
        pass,
        witness: acc.witness.map(|(_, w)| w),
        elapsed: start.elapsed(),
    })
}

/// Counts the points of each stratum, in canonical order.
pub fn stratum_census(ctx: &FieldCtx, limit: u64) -> Result<Vec<(AdmLabel, u64)>, Error> {
    let mut counts = [0u64; 13];
    for point in enumerate_special_fiber(ctx, limit)? {
        counts[label_index(classify(ctx, &point).label)] += 1;
    }
    Ok(AdmLabel::ALL.into_iter().zip(counts).collect())
}

/// One cross-cutting identity suite: how many individual checks ran, how many
/// failed, and the first failure rendered as text.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub checked: u64,
    pub failures: u64,
    pub witness: Option<String>,
}

impl IdentityCheck {
    fn new(name: &'static str) -> IdentityCheck {
        IdentityCheck { name, checked: 0, failures: 0, witness: None }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }
}

/// All identity suites over one field.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.failures == 0)
    }
}

/// Scaled-source-column containment in the target's column span, with the
/// combination coefficients read off at the target's identity rows.
fn containment_holds(
    ctx: &FieldCtx,
    src: &[[FqElement; 2]; 4],
    tgt: &[[FqElement; 2]; 4],
    scale: [u64; 4],
    id_rows: (usize, usize),
) -> bool {
    let scale = scale.map(|s| ctx.embed(s));
    for col in 0..2 {
        let m: Vec<FqElement> = (0..4).map(|row| ctx.mul(scale[row], src[row][col])).collect();
        let c0 = m[id_rows.0];
        let c1 = m[id_rows.1];
        for row in 0..4 {
            let want = ctx.add(ctx.mul(c0, tgt[row][0]), ctx.mul(c1, tgt[row][1]));
            if m[row] != want {
                return false;
            }
        }
    }
    true
}

/// Runs the four identity suites over every special-fiber point (and, for
/// the layer-vanishing lemma, every (α, δ) pair):
/// 1. both parameter products b0·a0 and b1·a1 vanish and agree;
/// 2. the parameter zero-pattern matches the classified stratum;
/// 3. the matrix-chain containments hold numerically;
/// 4. every blow-up tower layer sum is exactly zero.
pub fn check_identities(ctx: &FieldCtx, limit: u64) -> Result<IdentityReport, Error> {
    let zero = ctx.zero();
    let mut similitude = IdentityCheck::new("similitude");
    let mut pattern = IdentityCheck::new("parameter-pattern");
    let mut containment = IdentityCheck::new("chain-containment");
    let mut layers = IdentityCheck::new("layer-vanishing");

    for point in enumerate_special_fiber(ctx, limit)? {
        let lit = || point.literal(ctx);
        // recompute the quadruple from raw coordinates, independently of the
        // library accessor, and check both products vanish
        let b0 = point.x;
        let b1 = ctx.add(point.x, ctx.mul(point.b, point.c));
        let a1 = ctx.add(point.y, ctx.mul(point.a, point.c));
        let a0 = point.y;
        let prod0 = ctx.mul(b0, a0);
        let prod1 = ctx.mul(b1, a1);
        similitude.record(prod0 == zero && prod1 == zero && prod0 == prod1, || {
            format!("products differ or fail to vanish at ({})", lit())
        });

        let label = classify(ctx, &point).label;
        pattern.record(matches_ot_pattern(ctx, &point, label), || {
            format!("zero-pattern mismatch for {label} at ({})", lit())
        });

        let chain = matrix_chain(ctx, &point);
        let links = [
            (chain.matrix(0), chain.matrix(1), [0u64, 1, 1, 1], (1usize, 2usize)),
            (chain.matrix(1), chain.matrix(2), [1, 0, 1, 1], (2, 3)),
            (chain.matrix(2), chain.matrix(0), [1, 1, 0, 0], (0, 1)),
        ];
        for (i, (src, tgt, scale, rows)) in links.into_iter().enumerate() {
            containment.record(containment_holds(ctx, src, tgt, scale, rows), || {
                format!("containment link {i} fails at ({})", lit())
            });
        }
    }

    for alpha in ctx.elements() {
        for delta in ctx.elements() {
            for (j, sum) in tower_layer_sums(ctx, alpha, delta).into_iter().enumerate() {
                layers.record(sum == 0, || {
                    format!(
                        "stage {} sum {} != 0 at alpha index {}, delta index {}",
                        j + 1,
                        sum,
                        ctx.index_of(alpha),
                        ctx.index_of(delta)
                    )
                });
            }
        }
    }

    Ok(IdentityReport { checks: vec![similitude, pattern, containment, layers] })
}
