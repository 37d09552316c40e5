//! F_q-points of the special fiber of the quadric local model
//! U = Spec Z_p[x,y,a,b,c]/(xy - p, ax + by + abc), their lattice-chain
//! witness, stratum classification by the minor rule, and the group-scheme
//! parameters read off each point.
//!
//! The chain entries are fixed polynomials in the coordinates, derived once by
//! solving the inclusion conditions phi_0(F_0) in F_1, phi_1(F_1) in F_2 and
//! the closing inclusion; the closing residuals reproduce exactly the two
//! defining relations, which pins the identification (tested in the
//! `chain_oracle` integration suite over an exhaustive integer grid).

use crate::error::Error;
use crate::gf::{FieldCtx, FqElement};
use crate::weyl::{self, AdmElement, AdmLabel};

/// A point of the special fiber: coordinates satisfying x y = 0 and
/// a x + b y + a b c = 0.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModelPoint {
    pub x: FqElement,
    pub y: FqElement,
    pub a: FqElement,
    pub b: FqElement,
    pub c: FqElement,
}

impl ModelPoint {
    /// Validates special-fiber membership.
    pub fn new(
        ctx: &FieldCtx,
        x: FqElement,
        y: FqElement,
        a: FqElement,
        b: FqElement,
        c: FqElement,
    ) -> Result<ModelPoint, Error> {
        let p = ModelPoint { x, y, a, b, c };
        if !p.on_special_fiber(ctx) {
            return Err(Error::NotOnSpecialFiber(p.literal(ctx)));
        }
        Ok(p)
    }

    /// Builds a point from counting-order element indices (x, y, a, b, c).
    pub fn from_indices(ctx: &FieldCtx, idx: [u64; 5]) -> Result<ModelPoint, Error> {
        let mut el = [ctx.zero(); 5];
        for (i, &n) in idx.iter().enumerate() {
            el[i] = ctx.element_from_index(n).ok_or_else(|| Error::InvalidLiteral {
                literal: n.to_string(),
                reason: format!("element index out of range 0..{}", ctx.q()),
            })?;
        }
        ModelPoint::new(ctx, el[0], el[1], el[2], el[3], el[4])
    }

    pub fn coords(&self) -> [FqElement; 5] {
        [self.x, self.y, self.a, self.b, self.c]
    }

    /// Counting-order indices of the coordinates, the canonical rendering.
    pub fn indices(&self, ctx: &FieldCtx) -> [u64; 5] {
        self.coords().map(|e| ctx.index_of(e))
    }

    /// "x,y,a,b,c" as indices, the literal accepted back by the CLI.
    pub fn literal(&self, ctx: &FieldCtx) -> String {
        let idx = self.indices(ctx);
        idx.map(|n| n.to_string()).join(",")
    }

    fn on_special_fiber(&self, ctx: &FieldCtx) -> bool {
        let zero = ctx.zero();
        let rel1 = ctx.mul(self.x, self.y);
        let abc = ctx.mul(ctx.mul(self.a, self.b), self.c);
        let rel2 = ctx.add(ctx.add(ctx.mul(self.a, self.x), ctx.mul(self.b, self.y)), abc);
        rel1 == zero && rel2 == zero
    }
}

/// The four group-scheme parameters (b0, b1, a1, a0) = (x, x+bc, y+ac, y).
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct OTQuadruple {
    pub b0: FqElement,
    pub b1: FqElement,
    pub a1: FqElement,
    pub a0: FqElement,
}

impl OTQuadruple {
    pub fn as_array(&self) -> [FqElement; 4] {
        [self.b0, self.b1, self.a1, self.a0]
    }
}

/// Extracts the parameter quadruple and asserts the similitude identity
/// b0*a0 = b1*a1, which both vanish on the special fiber.
pub fn ot_params(ctx: &FieldCtx, p: &ModelPoint) -> OTQuadruple {
    let q = OTQuadruple {
        b0: p.x,
        b1: ctx.add(p.x, ctx.mul(p.b, p.c)),
        a1: ctx.add(p.y, ctx.mul(p.a, p.c)),
        a0: p.y,
    };
    let lhs = ctx.mul(q.b0, q.a0);
    let rhs = ctx.mul(q.b1, q.a1);
    assert_eq!(lhs, rhs, "similitude identity violated");
    assert_eq!(lhs, ctx.zero(), "parameter products must vanish on the special fiber");
    q
}

/// The three 4x2 lattice matrices at a point. Rows 1-2 of F0, rows 2-3 of F1
/// and rows 3-4 of F2 are the 2x2 identity (1-indexed).
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct MatrixChain {
    pub f0: [[FqElement; 2]; 4],
    pub f1: [[FqElement; 2]; 4],
    pub f2: [[FqElement; 2]; 4],
}

impl MatrixChain {
    pub fn matrix(&self, i: usize) -> &[[FqElement; 2]; 4] {
        match i {
            0 => &self.f0,
            1 => &self.f1,
            2 => &self.f2,
            _ => panic!("chain has matrices 0..3"),
        }
    }
}

/// Instantiates the chain at a point:
/// F0 = [[1,0],[0,1],[x,b],[-xc,x]], F1 = [[-by,y],[1,0],[0,1],[x+bc,-c]],
/// F2 = [[y+ac,a],[c(y+ac),y+ac],[1,0],[0,1]].
pub fn matrix_chain(ctx: &FieldCtx, p: &ModelPoint) -> MatrixChain {
    let (o, z) = (ctx.one(), ctx.zero());
    let xbc = ctx.add(p.x, ctx.mul(p.b, p.c));
    let yac = ctx.add(p.y, ctx.mul(p.a, p.c));
    MatrixChain {
        f0: [
            [o, z],
            [z, o],
            [p.x, p.b],
            [ctx.neg(ctx.mul(p.x, p.c)), p.x],
        ],
        f1: [
            [ctx.neg(ctx.mul(p.b, p.y)), p.y],
            [o, z],
            [z, o],
            [xbc, ctx.neg(p.c)],
        ],
        f2: [
            [yac, p.a],
            [ctx.mul(p.c, yac), yac],
            [o, z],
            [z, o],
        ],
    }
}

/// 2x2 minor of a 4x2 matrix on rows (i, j).
pub fn minor(ctx: &FieldCtx, m: &[[FqElement; 2]; 4], rows: (usize, usize)) -> FqElement {
    let (i, j) = rows;
    ctx.sub(ctx.mul(m[i][0], m[j][1]), ctx.mul(m[i][1], m[j][0]))
}

/// Required zero/nonzero pattern of (b0, b1, a1, a0) on each stratum
/// (true = nonzero).
pub fn ot_pattern(label: AdmLabel) -> [bool; 4] {
    match label {
        AdmLabel::Tau
        | AdmLabel::S0Tau
        | AdmLabel::S1Tau
        | AdmLabel::S2Tau
        | AdmLabel::S02Tau => [false, false, false, false],
        AdmLabel::S01Tau => [false, false, false, true],
        AdmLabel::S12Tau => [true, false, false, false],
        AdmLabel::S10Tau => [false, false, true, false],
        AdmLabel::S21Tau => [false, true, false, false],
        AdmLabel::S010Tau => [false, false, true, true],
        AdmLabel::S102Tau => [true, false, true, false],
        AdmLabel::S201Tau => [false, true, false, true],
        AdmLabel::S212Tau => [true, true, false, false],
    }
}

/// Whether the parameter quadruple of `p` matches the zero/nonzero pattern
/// required on stratum `label`.
pub fn matches_ot_pattern(ctx: &FieldCtx, p: &ModelPoint, label: AdmLabel) -> bool {
    let pat = ot_pattern(label);
    let vals = ot_params(ctx, p).as_array();
    vals.iter().zip(pat.iter()).all(|(v, &nz)| (*v != ctx.zero()) == nz)
}

/// Classifies a point into its stratum: among admissible elements whose three
/// selected minors are all invertible, returns the unique one of maximal
/// length. The identity-row minors make the length-0 element qualify
/// everywhere, so the candidate set is never empty; uniqueness of the maximum
/// and the parameter zero-pattern are asserted (failures are bugs, not bad
/// input).
pub fn classify(ctx: &FieldCtx, p: &ModelPoint) -> &'static AdmElement {
    let chain = matrix_chain(ctx, p);
    let zero = ctx.zero();
    let mut qualifying: Vec<&'static AdmElement> = Vec::with_capacity(13);
    for e in weyl::admissible_set() {
        let ok = (0..3).all(|i| minor(ctx, chain.matrix(i), e.minor_rows(i)) != zero);
        if ok {
            qualifying.push(e);
        }
    }
    assert!(
        qualifying.iter().any(|e| e.label == AdmLabel::Tau),
        "identity minors must qualify at {}",
        p.literal(ctx)
    );
    let max_len = qualifying.iter().map(|e| e.length).max().unwrap();
    let tops: Vec<_> = qualifying.iter().filter(|e| e.length == max_len).collect();
    assert_eq!(
        tops.len(),
        1,
        "maximal-length element not unique at {}: {:?}",
        p.literal(ctx),
        tops.iter().map(|e| e.label).collect::<Vec<_>>()
    );
    let found = *tops[0];
    assert!(
        matches_ot_pattern(ctx, p, found.label),
        "parameter pattern mismatch at {} for {}",
        p.literal(ctx),
        found.label
    );
    found
}

/// Closed-form point count of the special fiber over F_q:
/// q^2 (3q - 2) + (q - 1)^3.
pub fn special_fiber_count(q: u64) -> u64 {
    q * q * (3 * q - 2) + (q - 1).pow(3)
}

/// Streams every special-fiber point in a fixed canonical order (x, then y,
/// then a, then b, then c, all by counting index). Solving the second
/// relation for c keeps the sweep at O(q^3) work instead of q^5.
///
/// The guard compares the brute-force candidate space q^5 against `limit`
/// (points required never exceed it); pass a larger limit to go beyond.
pub fn enumerate_special_fiber(
    ctx: &FieldCtx,
    limit: u64,
) -> Result<impl Iterator<Item = ModelPoint> + '_, Error> {
    let required = (ctx.q() as u128).pow(5);
    if required > limit as u128 {
        return Err(Error::LimitExceeded {
            required: required.min(u64::MAX as u128) as u64,
            limit,
        });
    }
    let q = ctx.q();
    let zero = ctx.zero();
    let it = (0..q * q)
        .filter_map(move |xy| {
            let x = ctx.element_from_index(xy / q).unwrap();
            let y = ctx.element_from_index(xy % q).unwrap();
            (ctx.mul(x, y) == zero).then_some((x, y))
        })
        .flat_map(move |(x, y)| {
            (0..q * q).flat_map(move |ab| -> Box<dyn Iterator<Item = ModelPoint> + '_> {
                let a = ctx.element_from_index(ab / q).unwrap();
                let b = ctx.element_from_index(ab % q).unwrap();
                let prod = ctx.mul(a, b);
                let axby = ctx.add(ctx.mul(a, x), ctx.mul(b, y));
                if prod != zero {
                    // c is uniquely determined: c = -(ax + by) / (ab)
                    let c = ctx.mul(ctx.neg(axby), ctx.inv(prod).unwrap());
                    Box::new(std::iter::once(ModelPoint { x, y, a, b, c }))
                } else if axby == zero {
                    // both relations already hold; c is free
                    Box::new((0..q).map(move |ci| ModelPoint {
                        x,
                        y,
                        a,
                        b,
                        c: ctx.element_from_index(ci).unwrap(),
                    }))
                } else {
                    Box::new(std::iter::empty())
                }
            })
        });
    Ok(it)
}
