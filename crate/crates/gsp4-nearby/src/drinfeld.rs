//! The rank-n Drinfeld case: the semistable local model x_0 ... x_{n-1} = p,
//! whose special-fiber strata are indexed by the subsets S of vanishing
//! parameters, with trace and scaled test function in exact agreement at
//! every point. Serves as the structurally simpler cousin of the main
//! comparison and as an end-to-end cross-check of the shared field machinery.

use crate::error::Error;
use crate::gf::{FieldCtx, FqElement};
use crate::nearby::local_trace;

/// A special-fiber point of the rank-n model: the parameter vector
/// (a_0, ..., a_{n-1}), at least one entry zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DrinfeldPoint {
    pub a: Vec<FqElement>,
}

impl DrinfeldPoint {
    /// Wraps a parameter vector, rejecting vectors with no vanishing entry
    /// (those lie off the special fiber).
    pub fn new(ctx: &FieldCtx, a: Vec<FqElement>) -> Result<DrinfeldPoint, Error> {
        assert!(!a.is_empty(), "rank must be at least 1");
        if a.iter().all(|v| *v != ctx.zero()) {
            let literal = a
                .iter()
                .map(|v| ctx.index_of(*v).to_string())
                .collect::<Vec<_>>()
                .join(",");
            return Err(Error::NotOnSpecialFiber(literal));
        }
        Ok(DrinfeldPoint { a })
    }

    /// The stratum of the point: the set of indices with vanishing parameter.
    pub fn stratum(&self, ctx: &FieldCtx) -> Vec<usize> {
        (0..self.a.len()).filter(|&i| self.a[i] == ctx.zero()).collect()
    }
}

/// Frobenius trace of the nearby-cycle complex at a rank-n point: the product
/// of root counts of the nonvanishing parameters times (1-q)^(|S|-1).
pub fn trace_drinfeld(ctx: &FieldCtx, point: &DrinfeldPoint) -> i64 {
    let s = point.stratum(ctx);
    let mut count = 1u64;
    for (i, v) in point.a.iter().enumerate() {
        if !s.contains(&i) {
            count *= ctx.count_root_solutions(*v);
        }
    }
    i64::try_from(count).unwrap() * local_trace(s.len() as u32, ctx.q())
}

/// The scaled test function (q-1)^n * phi at a torus element t and stratum S:
/// zero unless every off-S component has norm 1, in which case
/// (p-1)^(n-|S|) * (1-q)^(|S|-1).
pub fn phi_scaled_drinfeld(ctx: &FieldCtx, t: &[FqElement], s: &[usize], n: usize) -> i64 {
    assert_eq!(t.len(), n);
    assert!(!s.is_empty(), "the stratum of a special-fiber point is nonempty");
    let one = ctx.one();
    let off_s_norm_one = (0..n)
        .filter(|i| !s.contains(i))
        .all(|i| ctx.norm(t[i]) == one);
    if !off_s_norm_one {
        return 0;
    }
    let p = ctx.p() as i64;
    (p - 1).pow((n - s.len()) as u32) * local_trace(s.len() as u32, ctx.q())
}

/// Result of sweeping every rank-n special-fiber point.
#[derive(Clone, Debug)]
pub struct DrinfeldReport {
    pub n: usize,
    pub p: u32,
    pub r: u32,
    pub q: u64,
    pub points: u64,
    pub pass: u64,
    pub fail: u64,
    pub witness: Option<String>,
}

impl DrinfeldReport {
    pub fn verdict(&self) -> bool {
        self.fail == 0 && self.points == self.pass
    }
}

/// Sweeps all q^n - (q-1)^n special-fiber points of the rank-n model and
/// checks trace = scaled test function at each, where the torus element is
/// the parameter vector with zeros replaced by 1.
pub fn verify_drinfeld(ctx: &FieldCtx, n: usize) -> Result<DrinfeldReport, Error> {
    if n == 0 || n > 4 || ctx.q() > 9 {
        return Err(Error::SweepBudget { n, q: ctx.q() });
    }
    let q = ctx.q();
    let zero = ctx.zero();
    let one = ctx.one();
    let mut report = DrinfeldReport {
        n,
        p: ctx.p(),
        r: ctx.r(),
        q,
        points: 0,
        pass: 0,
        fail: 0,
        witness: None,
    };
    let total = q.pow(n as u32);
    for idx in 0..total {
        let mut rem = idx;
        let a: Vec<FqElement> = (0..n)
            .map(|_| {
                let v = ctx.element_from_index(rem % q).unwrap();
                rem /= q;
                v
            })
            .collect();
        let point = match DrinfeldPoint::new(ctx, a) {
            Ok(p) => p,
            Err(_) => continue, // off the special fiber
        };
        report.points += 1;
        let s = point.stratum(ctx);
        let t: Vec<FqElement> = point
            .a
            .iter()
            .map(|v| if *v == zero { one } else { *v })
            .collect();
        let trace = trace_drinfeld(ctx, &point);
        let phi = phi_scaled_drinfeld(ctx, &t, &s, n);
        if trace == phi {
            report.pass += 1;
        } else {
            report.fail += 1;
            if report.witness.is_none() {
                let literal = point
                    .a
                    .iter()
                    .map(|v| ctx.index_of(*v).to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                report.witness =
                    Some(format!("point ({literal}): trace {trace} != phi {phi}"));
            }
        }
    }
    let expected = q.pow(n as u32) - (q - 1).pow(n as u32);
    assert_eq!(report.points, expected, "stratified point count");
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(ctx: &FieldCtx, idx: &[u64]) -> DrinfeldPoint {
        let a = idx.iter().map(|i| ctx.element_from_index(*i).unwrap()).collect();
        DrinfeldPoint::new(ctx, a).unwrap()
    }

    #[test]
    fn stratum_examples() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        assert_eq!(pt(&ctx, &[0, 0]).stratum(&ctx), vec![0, 1]);
        assert_eq!(pt(&ctx, &[1, 0]).stratum(&ctx), vec![1]);
        let ctx9 = FieldCtx::new(3, 2).unwrap();
        let g = ctx9.generator();
        let p = DrinfeldPoint::new(&ctx9, vec![ctx9.zero(), g]).unwrap();
        assert_eq!(p.stratum(&ctx9), vec![0]);
    }

    #[test]
    fn rejects_points_off_the_fiber() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let a = vec![ctx.one(), ctx.one()];
        assert!(matches!(
            DrinfeldPoint::new(&ctx, a),
            Err(Error::NotOnSpecialFiber(_))
        ));
    }

    #[test]
    fn trace_examples() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        assert_eq!(trace_drinfeld(&ctx, &pt(&ctx, &[0, 0])), -2);
        assert_eq!(trace_drinfeld(&ctx, &pt(&ctx, &[1, 0])), 2);
        // a generator of F_9 has norm != 1, so its root count vanishes
        let ctx9 = FieldCtx::new(3, 2).unwrap();
        let g = ctx9.generator();
        let p = DrinfeldPoint::new(&ctx9, vec![g, ctx9.zero()]).unwrap();
        assert_eq!(trace_drinfeld(&ctx9, &p), 0);
        // while the prime-subfield element 2 = -1 is a (p-1)-th power in F_9
        assert_eq!(trace_drinfeld(&ctx9, &pt(&ctx9, &[2, 0])), 2);
    }

    #[test]
    fn phi_examples() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let one = ctx.one();
        let two = ctx.element_from_index(2).unwrap();
        assert_eq!(phi_scaled_drinfeld(&ctx, &[one, one], &[0, 1], 2), -2);
        assert_eq!(phi_scaled_drinfeld(&ctx, &[one, one], &[1], 2), 2);
        assert_eq!(phi_scaled_drinfeld(&ctx, &[two, one], &[1], 2), 0);
    }

    #[test]
    fn sweep_counts_and_verdicts() {
        for (p, r, n, expected) in [
            (3u32, 1u32, 2usize, 5u64),
            (3, 1, 3, 19),
            (3, 2, 2, 17),
            (5, 1, 2, 9),
            (3, 1, 4, 65),
        ] {
            let ctx = FieldCtx::new(p, r).unwrap();
            let rep = verify_drinfeld(&ctx, n).unwrap();
            assert_eq!(rep.points, expected);
            assert!(rep.verdict(), "{:?}", rep.witness);
            assert_eq!(rep.fail, 0);
        }
    }

    #[test]
    fn budget_guard() {
        let ctx = FieldCtx::new(5, 2).unwrap(); // q = 25
        assert!(matches!(
            verify_drinfeld(&ctx, 2),
            Err(Error::SweepBudget { n: 2, q: 25 })
        ));
        let ctx3 = FieldCtx::new(3, 1).unwrap();
        assert!(matches!(verify_drinfeld(&ctx3, 5), Err(Error::SweepBudget { .. })));
    }

    #[test]
    fn trace_invariant_under_permutation() {
        let ctx = FieldCtx::new(3, 2).unwrap();
        let idx = [0u64, 3, 1, 0];
        let base = trace_drinfeld(&ctx, &pt(&ctx, &idx));
        // a few permutations of the same multiset
        for perm in [[3u64, 0, 0, 1], [1, 0, 3, 0], [0, 0, 1, 3]] {
            assert_eq!(trace_drinfeld(&ctx, &pt(&ctx, &perm)), base);
        }
    }
}
