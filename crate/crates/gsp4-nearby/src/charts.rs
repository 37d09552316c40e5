//! The affine charts of the semistable resolution, held as validated data
//! records, and the per-stratum fiber recipes that the trace engine executes.
//!
//! Each chart records its coordinates, the expressions that must stay
//! invertible, the root relations coord^(p-1-offset) = rhs, the monomial whose
//! value (up to the recorded outer exponent) equals p, and a `source` string
//! giving the full defining presentation of the chart ring, so every record
//! can be audited line by line. Charts are data, not code: the numeric
//! validator replays their internal consistency over F_q-points instead of
//! trusting the transcription.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gf::{FieldCtx, FqElement};
use crate::localmodel::{ot_params, ModelPoint};
use crate::weyl::AdmLabel;

/// Polynomial expression over a chart's coordinates. `PowPm1` raises to the
/// field-dependent exponent p - 1; `Inv` is only valid where units guarantee
/// a nonzero argument.
#[derive(Clone, Debug)]
pub enum Expr {
    Const(i64),
    Coord(&'static str),
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    PowPm1(Box<Expr>),
    Inv(Box<Expr>),
}

impl Expr {
    /// Evaluates against coordinate values aligned with `chart.coords`;
    /// None exactly when an `Inv` hits zero.
    pub fn eval(&self, ctx: &FieldCtx, chart: &Chart, vals: &[FqElement]) -> Option<FqElement> {
        match self {
            Expr::Const(n) => Some(if *n >= 0 {
                ctx.embed(*n as u64)
            } else {
                ctx.neg(ctx.embed(n.unsigned_abs()))
            }),
            Expr::Coord(name) => Some(vals[chart.coord_index(name)]),
            Expr::Add(l, r) => Some(ctx.add(l.eval(ctx, chart, vals)?, r.eval(ctx, chart, vals)?)),
            Expr::Mul(l, r) => Some(ctx.mul(l.eval(ctx, chart, vals)?, r.eval(ctx, chart, vals)?)),
            Expr::Neg(e) => Some(ctx.neg(e.eval(ctx, chart, vals)?)),
            Expr::Pow(e, n) => Some(ctx.pow(e.eval(ctx, chart, vals)?, *n as u64)),
            Expr::PowPm1(e) => Some(ctx.pow(e.eval(ctx, chart, vals)?, ctx.p() as u64 - 1)),
            Expr::Inv(e) => ctx.inv(e.eval(ctx, chart, vals)?),
        }
    }

    fn coords_used(&self, out: &mut BTreeSet<&'static str>) {
        match self {
            Expr::Const(_) => {}
            Expr::Coord(name) => {
                out.insert(name);
            }
            Expr::Add(l, r) | Expr::Mul(l, r) => {
                l.coords_used(out);
                r.coords_used(out);
            }
            Expr::Neg(e) | Expr::Pow(e, _) | Expr::PowPm1(e) | Expr::Inv(e) => e.coords_used(out),
        }
    }

    /// Human-readable rendering for listings and witnesses.
    pub fn render(&self) -> String {
        fn atom(e: &Expr) -> String {
            let s = e.render();
            match e {
                Expr::Add(..) | Expr::Mul(..) | Expr::Neg(..) => format!("({s})"),
                _ => s,
            }
        }
        match self {
            Expr::Const(n) => n.to_string(),
            Expr::Coord(name) => (*name).to_string(),
            Expr::Add(l, r) => format!("{} + {}", l.render(), r.render()),
            Expr::Mul(l, r) => {
                let la = match **l {
                    Expr::Add(..) => format!("({})", l.render()),
                    _ => l.render(),
                };
                let ra = match **r {
                    Expr::Add(..) => format!("({})", r.render()),
                    _ => r.render(),
                };
                format!("{la} {ra}")
            }
            Expr::Neg(e) => format!("-{}", atom(e)),
            Expr::Pow(e, n) => format!("{}^{n}", atom(e)),
            Expr::PowPm1(e) => format!("{}^(p-1)", atom(e)),
            Expr::Inv(e) => format!("{}^-1", atom(e)),
        }
    }
}

fn co(name: &'static str) -> Expr {
    Expr::Coord(name)
}

fn kc(n: i64) -> Expr {
    Expr::Const(n)
}

fn add(l: Expr, r: Expr) -> Expr {
    Expr::Add(Box::new(l), Box::new(r))
}

fn mul(l: Expr, r: Expr) -> Expr {
    Expr::Mul(Box::new(l), Box::new(r))
}

fn mul3(a: Expr, b: Expr, c: Expr) -> Expr {
    mul(mul(a, b), c)
}

fn mul4(a: Expr, b: Expr, c: Expr, d: Expr) -> Expr {
    mul(mul3(a, b, c), d)
}

fn pw(e: Expr, n: u32) -> Expr {
    Expr::Pow(Box::new(e), n)
}

fn pm1(e: Expr) -> Expr {
    Expr::PowPm1(Box::new(e))
}

fn inv(e: Expr) -> Expr {
    Expr::Inv(Box::new(e))
}

/// One root relation coord^(p-1-offset) = rhs. Offsets above zero occur only
/// in the blow-up tower, where the root exponent drops by one per stage.
#[derive(Clone, Debug)]
pub struct RootRelation {
    pub coord: &'static str,
    pub exponent_offset: u32,
    pub rhs: Expr,
}

/// Outer exponent applied to the whole uniformizer monomial.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum UniformizerExp {
    One,
    PMinusOne,
}

/// The monomial (with optional extracted unit) whose value equals p in the
/// chart ring. The per-coordinate multiplicities, scaled by the outer
/// exponent, are the branch multiplicities of the special fiber.
#[derive(Clone, Debug)]
pub struct Uniformizer {
    pub monomial: Vec<(&'static str, u32)>,
    pub exponent: UniformizerExp,
    pub unit_factor: Option<Expr>,
}

impl Uniformizer {
    /// Human-readable rendering, e.g. `(r^2 s t)^(p-1)`.
    pub fn render(&self) -> String {
        let body = self
            .monomial
            .iter()
            .map(|(name, mult)| if *mult == 1 { (*name).to_string() } else { format!("{name}^{mult}") })
            .collect::<Vec<_>>()
            .join(" ");
        let with_exp = match self.exponent {
            UniformizerExp::One => body,
            UniformizerExp::PMinusOne => format!("({body})^(p-1)"),
        };
        match &self.unit_factor {
            None => with_exp,
            Some(u) => format!("{} {}", u.render(), with_exp),
        }
    }
}

/// One affine chart of the resolution, as a data record.
#[derive(Clone, Debug)]
pub struct Chart {
    pub name: String,
    pub coords: Vec<&'static str>,
    pub units: Vec<Expr>,
    pub root_relations: Vec<RootRelation>,
    pub constraints: Vec<Expr>,
    pub uniformizer: Uniformizer,
    /// p transcribed from the defining presentation, independently of the
    /// uniformizer record; validation compares the two at every point.
    pub p_expr: Expr,
    /// Full defining presentation of the chart ring.
    pub source: String,
}

impl Chart {
    pub fn coord_index(&self, name: &str) -> usize {
        self.coords
            .iter()
            .position(|c| *c == name)
            .unwrap_or_else(|| panic!("chart {} has no coordinate {name}", self.name))
    }

    /// Total multiplicity of a monomial entry after applying the outer
    /// exponent.
    pub fn total_multiplicity(&self, ctx_p: u32, mult: u32) -> u64 {
        let outer = match self.uniformizer.exponent {
            UniformizerExp::One => 1,
            UniformizerExp::PMinusOne => ctx_p as u64 - 1,
        };
        mult as u64 * outer
    }

    fn uniformizer_value(&self, ctx: &FieldCtx, vals: &[FqElement]) -> Option<FqElement> {
        let mut m = ctx.one();
        for (name, mult) in &self.uniformizer.monomial {
            m = ctx.mul(m, ctx.pow(vals[self.coord_index(name)], *mult as u64));
        }
        if self.uniformizer.exponent == UniformizerExp::PMinusOne {
            m = ctx.pow(m, ctx.p() as u64 - 1);
        }
        if let Some(u) = &self.uniformizer.unit_factor {
            m = ctx.mul(m, u.eval(ctx, self, vals)?);
        }
        Some(m)
    }
}

/// The full atlas for characteristic p: the two first-stage charts, the two
/// finite covers over the x-chart, the four second-stage charts, the blow-up
/// tower E0..E_{p-3}, R0..R_{p-3} with the reduced final stage, and the four
/// per-stratum fiber covers.
pub fn atlas(p: u32) -> Vec<Chart> {
    assert!(p >= 3, "odd characteristic required");
    let mut charts = vec![
        Chart {
            name: "u1-prime-b".into(),
            coords: vec!["xt", "a", "b", "c", "u0", "u1", "v0", "v1"],
            units: vec![],
            root_relations: vec![
                RootRelation { coord: "u0", exponent_offset: 0, rhs: mul(co("a"), co("c")) },
                RootRelation { coord: "u1", exponent_offset: 0, rhs: mul(co("a"), co("xt")) },
                RootRelation { coord: "v0", exponent_offset: 0, rhs: mul(co("b"), co("xt")) },
                RootRelation { coord: "v1", exponent_offset: 0, rhs: mul(co("b"), co("c")) },
            ],
            constraints: vec![add(mul(co("u0"), co("v0")), Expr::Neg(Box::new(mul(co("u1"), co("v1")))))],
            uniformizer: Uniformizer {
                monomial: vec![("xt", 1), ("a", 1), ("b", 1), ("c", 1)],
                exponent: UniformizerExp::One,
                unit_factor: None,
            },
            p_expr: mul4(co("xt"), co("a"), co("b"), co("c")),
            source: "Z_p[xt,a,b,c][u0,u1,v0,v1] / (xt a b c - p, u0^(p-1) - a c, \
                     u1^(p-1) - a xt, v0^(p-1) - b xt, v1^(p-1) - b c, u0 v0 - u1 v1)"
                .into(),
        },
        Chart {
            name: "u1-prime-x".into(),
            coords: vec!["x", "y", "a", "bt", "c", "u0", "u1", "v0", "v1"],
            units: vec![],
            root_relations: vec![
                RootRelation { coord: "u0", exponent_offset: 0, rhs: co("y") },
                RootRelation { coord: "v0", exponent_offset: 0, rhs: co("x") },
                RootRelation { coord: "u1", exponent_offset: 0, rhs: add(co("y"), mul(co("a"), co("c"))) },
                RootRelation {
                    coord: "v1",
                    exponent_offset: 0,
                    rhs: mul(co("x"), add(kc(1), mul(co("bt"), co("c")))),
                },
            ],
            constraints: vec![
                add(co("a"), add(mul(co("bt"), co("y")), mul3(co("a"), co("bt"), co("c")))),
                add(mul(co("u0"), co("v0")), Expr::Neg(Box::new(mul(co("u1"), co("v1"))))),
            ],
            uniformizer: Uniformizer {
                monomial: vec![("x", 1), ("y", 1)],
                exponent: UniformizerExp::One,
                unit_factor: None,
            },
            p_expr: mul(co("x"), co("y")),
            source: "Z_p[x,y,a,bt,c][u0,u1,v0,v1] / (x y - p, a + bt y + a bt c, \
                     u0^(p-1) - y, v0^(p-1) - x, u1^(p-1) - (y + a c), \
                     v1^(p-1) - x(1 + bt c), u0 v0 - u1 v1)"
                .into(),
        },
        Chart {
            name: "remark-cover-c".into(),
            coords: vec!["x", "y", "bt", "c", "r", "s", "t"],
            units: vec![add(kc(1), mul(co("bt"), co("c")))],
            root_relations: vec![
                RootRelation { coord: "r", exponent_offset: 0, rhs: co("x") },
                RootRelation { coord: "s", exponent_offset: 0, rhs: co("y") },
                RootRelation { coord: "t", exponent_offset: 0, rhs: add(kc(1), mul(co("bt"), co("c"))) },
            ],
            constraints: vec![],
            uniformizer: Uniformizer {
                monomial: vec![("r", 1), ("s", 1)],
                exponent: UniformizerExp::PMinusOne,
                unit_factor: None,
            },
            p_expr: mul(co("x"), co("y")),
            source: "Z_p[x,y,bt,c][(1 + bt c)^-1][r,s,t] / (x y - p, r^(p-1) - x, \
                     s^(p-1) - y, t^(p-1) - (1 + bt c))"
                .into(),
        },
        Chart {
            name: "remark-cover-b".into(),
            coords: vec!["x", "a", "bt", "c", "r", "s", "t"],
            units: vec![co("bt")],
            root_relations: vec![
                RootRelation { coord: "r", exponent_offset: 0, rhs: co("x") },
                RootRelation { coord: "s", exponent_offset: 0, rhs: mul(co("a"), inv(co("bt"))) },
                RootRelation { coord: "t", exponent_offset: 0, rhs: mul(co("c"), co("bt")) },
            ],
            constraints: vec![],
            uniformizer: Uniformizer {
                monomial: vec![("r", 1), ("s", 1), ("t", 1)],
                exponent: UniformizerExp::PMinusOne,
                unit_factor: None,
            },
            p_expr: mul3(co("x"), co("a"), co("c")),
            source: "Z_p[x,a,bt^+-,c][r,s,t] / (x a c - p, r^(p-1) - x, \
                     s^(p-1) - a bt^-1, t^(p-1) - c bt)"
                .into(),
        },
        Chart {
            name: "u2-b-v0".into(),
            coords: vec!["u1", "v0", "vt1", "a", "b", "xt"],
            units: vec![],
            root_relations: vec![
                RootRelation { coord: "u1", exponent_offset: 0, rhs: mul(co("a"), co("xt")) },
                RootRelation { coord: "v0", exponent_offset: 0, rhs: mul(co("b"), co("xt")) },
            ],
            constraints: vec![],
            uniformizer: Uniformizer {
                monomial: vec![("vt1", p - 1), ("a", 1), ("b", 1), ("xt", 2)],
                exponent: UniformizerExp::One,
                unit_factor: None,
            },
            p_expr: mul4(pm1(co("vt1")), co("a"), co("b"), pw(co("xt"), 2)),
            source: "Z_p[u1,v0,vt1,a,b,xt] / (u1^(p-1) - a xt, v0^(p-1) - b xt, \
                     vt1^(p-1) a b xt^2 - p)"
                .into(),
        },
        Chart {
            name: "u2-b-v1".into(),
            coords: vec!["u0", "v1", "vt0", "a", "b", "c"],
            units: vec![],
            root_relations: vec![
                RootRelation { coord: "u0", exponent_offset: 0, rhs: mul(co("a"), co("c")) },
                RootRelation { coord: "v1", exponent_offset: 0, rhs: mul(co("b"), co("c")) },
            ],
            constraints: vec![],
            uniformizer: Uniformizer {
                monomial: vec![("vt0", p - 1), ("a", 1), ("b", 1), ("c", 2)],
                exponent: UniformizerExp::One,
                unit_factor: None,
            },
            p_expr: mul4(pm1(co("vt0")), co("a"), co("b"), pw(co("c"), 2)),
            source: "Z_p[u0,v1,vt0,a,b,c] / (u0^(p-1) - a c, v1^(p-1) - b c, \
                     vt0^(p-1) a b c^2 - p)"
                .into(),
        },
        Chart {
            name: "u2-x-v0".into(),
            coords: vec!["bt", "c", "u1", "v0", "vt1"],
            units: vec![],
            root_relations: vec![RootRelation {
                coord: "vt1",
                exponent_offset: 0,
                rhs: add(kc(1), mul(co("bt"), co("c"))),
            }],
            constraints: vec![],
            uniformizer: Uniformizer {
                monomial: vec![("u1", 1), ("v0", 1), ("vt1", 1)],
                exponent: UniformizerExp::PMinusOne,
                unit_factor: None,
            },
            p_expr: pm1(mul3(co("u1"), co("v0"), co("vt1"))),
            source: "Z_p[bt,c,u1,v0,vt1] / ((u1 v0 vt1)^(p-1) - p, vt1^(p-1) - (1 + bt c))"
                .into(),
        },
        Chart {
            name: "u2-x-v1".into(),
            coords: vec!["bt", "c", "u0", "v1", "vt0"],
            units: vec![co("vt0")],
            root_relations: vec![RootRelation {
                coord: "vt0",
                exponent_offset: 0,
                rhs: add(kc(1), mul(co("bt"), co("c"))),
            }],
            constraints: vec![],
            uniformizer: Uniformizer {
                monomial: vec![("u0", 1), ("v1", 1), ("vt0", 1)],
                exponent: UniformizerExp::PMinusOne,
                unit_factor: None,
            },
            p_expr: pm1(mul3(co("u0"), co("v1"), co("vt0"))),
            source: "Z_p[bt,c,u0,v1,vt0^+-] / ((u0 v1 vt0)^(p-1) - p, vt0^(p-1) - (1 + bt c))"
                .into(),
        },
    ];

    // blow-up tower: E_i carries r^(p-1-i) = e f; the final stage has r
    // eliminated; each R_i is already semistable with no root relation
    for i in 0..=p - 3 {
        charts.push(Chart {
            name: format!("E{i}"),
            coords: vec!["r", "s", "t", "e", "f"],
            units: vec![],
            root_relations: vec![RootRelation {
                coord: "r",
                exponent_offset: i,
                rhs: mul(co("e"), co("f")),
            }],
            constraints: vec![],
            uniformizer: Uniformizer {
                monomial: vec![("r", 2), ("s", 1), ("t", 1)],
                exponent: UniformizerExp::PMinusOne,
                unit_factor: None,
            },
            p_expr: pm1(mul3(pw(co("r"), 2), co("s"), co("t"))),
            source: format!(
                "Z_p[r,s,t,e,f] / ((r^2 s t)^(p-1) - p, r^(p-1-{i}) - e f)"
            ),
        });
    }
    charts.push(Chart {
        name: "E-final".into(),
        coords: vec!["s", "t", "e", "f"],
        units: vec![],
        root_relations: vec![],
        constraints: vec![],
        uniformizer: Uniformizer {
            monomial: vec![("e", 2), ("f", 2), ("s", 1), ("t", 1)],
            exponent: UniformizerExp::PMinusOne,
            unit_factor: None,
        },
        p_expr: pm1(mul4(pw(co("e"), 2), pw(co("f"), 2), co("s"), co("t"))),
        source: "Z_p[s,t,e,f] / (((e f)^2 s t)^(p-1) - p)   [stage p-2 with r = e f substituted]"
            .into(),
    });
    for i in 0..=p - 3 {
        charts.push(Chart {
            name: format!("R{i}"),
            coords: vec!["rt", "s", "t", "e", "f"],
            units: vec![],
            root_relations: vec![],
            constraints: vec![],
            uniformizer: Uniformizer {
                monomial: vec![("rt", 2), ("e", 2), ("s", 1), ("t", 1)],
                exponent: UniformizerExp::PMinusOne,
                unit_factor: None,
            },
            p_expr: pm1(mul4(pw(co("rt"), 2), pw(co("e"), 2), co("s"), co("t"))),
            source: "Z_p[rt,s,t,e,f] / ((rt^2 e^2 s t)^(p-1) - p)".into(),
        });
    }

    // per-stratum fiber covers
    charts.push(Chart {
        name: "len3-fiber".into(),
        coords: vec!["y", "a", "c", "u0", "v0", "v1"],
        units: vec![co("y"), add(co("y"), mul(co("a"), co("c")))],
        root_relations: vec![
            RootRelation { coord: "v0", exponent_offset: 0, rhs: co("y") },
            RootRelation { coord: "v1", exponent_offset: 0, rhs: add(co("y"), mul(co("a"), co("c"))) },
        ],
        constraints: vec![],
        uniformizer: Uniformizer {
            monomial: vec![("u0", 1)],
            exponent: UniformizerExp::PMinusOne,
            unit_factor: None,
        },
        p_expr: pm1(co("u0")),
        source: "Z_p[y^+-,a,c][(y + a c)^-1][u0,v0,v1] / (v0^(p-1) - y, \
                 v1^(p-1) - (y + a c), u0^(p-1) - p)"
            .into(),
    });
    charts.push(Chart {
        name: "len2-fiber".into(),
        coords: vec!["y", "a", "u0", "u1", "v1"],
        units: vec![co("y"), co("a")],
        root_relations: vec![RootRelation { coord: "u0", exponent_offset: 0, rhs: co("y") }],
        constraints: vec![],
        uniformizer: Uniformizer {
            monomial: vec![("u1", 1), ("v1", 1)],
            exponent: UniformizerExp::PMinusOne,
            unit_factor: None,
        },
        p_expr: pm1(mul(co("u1"), co("v1"))),
        source: "Z_p[y^+-,a^+-,u0,u1,v1] / ((u1 v1)^(p-1) - p, u0^(p-1) - y)".into(),
    });
    charts.push(Chart {
        name: "s02-cover".into(),
        coords: vec!["a", "b", "x", "c", "u0", "v0", "t"],
        units: vec![co("a"), co("b")],
        root_relations: vec![
            RootRelation { coord: "u0", exponent_offset: 0, rhs: co("c") },
            RootRelation { coord: "v0", exponent_offset: 0, rhs: co("x") },
            RootRelation { coord: "t", exponent_offset: 0, rhs: mul(co("a"), inv(co("b"))) },
        ],
        constraints: vec![],
        uniformizer: Uniformizer {
            monomial: vec![("u0", 1), ("v0", 1)],
            exponent: UniformizerExp::PMinusOne,
            unit_factor: None,
        },
        p_expr: mul(co("x"), co("c")),
        source: "Z_p[a^+-,b^+-,x,c][u0,v0,t] / (x c - p, u0^(p-1) - c, v0^(p-1) - x, \
                 t^(p-1) - a b^-1)"
            .into(),
    });
    charts.push(Chart {
        name: "s0s2-cover".into(),
        coords: vec!["x", "a", "b", "c", "r", "s", "t"],
        units: vec![co("b")],
        root_relations: vec![
            RootRelation { coord: "r", exponent_offset: 0, rhs: co("a") },
            RootRelation { coord: "s", exponent_offset: 0, rhs: co("x") },
            RootRelation { coord: "t", exponent_offset: 0, rhs: co("c") },
        ],
        constraints: vec![],
        uniformizer: Uniformizer {
            monomial: vec![("r", 1), ("s", 1), ("t", 1)],
            exponent: UniformizerExp::PMinusOne,
            unit_factor: None,
        },
        p_expr: mul3(co("a"), co("x"), co("c")),
        source: "Z_p[x,a,b^+-,c][r,s,t] / (a x c - p, r^(p-1) - a, s^(p-1) - x, t^(p-1) - c)"
            .into(),
    });

    charts
}

pub fn chart_by_name<'a>(atlas: &'a [Chart], name: &str) -> Option<&'a Chart> {
    atlas.iter().find(|c| c.name == name)
}

/// How the numeric sweep covered the chart's point space.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum ValidationMode {
    Exhaustive,
    Sampled,
}

/// Outcome of validating one chart over one field.
#[derive(Clone, Debug)]
pub struct ChartValidation {
    pub chart: String,
    pub tame: bool,
    pub mode: ValidationMode,
    pub assignments: u64,
    pub valid_points: u64,
    pub failures: u64,
    pub witness: Option<String>,
}

impl ChartValidation {
    pub fn pass(&self) -> bool {
        self.tame
            && self.failures == 0
            && (self.mode == ValidationMode::Sampled || self.valid_points > 0)
    }
}

/// Assignment spaces at most this large are swept exhaustively.
const EXHAUSTIVE_CAP: u128 = 200_000;
/// Fixed-seed sample count above the exhaustive cap.
const SAMPLE_COUNT: u64 = 4_000;
const SAMPLE_SEED: u64 = 0x6773_7034_3031;

enum PointCheck {
    NotAPoint,
    Ok,
    Fail(String),
}

fn check_assignment(chart: &Chart, ctx: &FieldCtx, vals: &[FqElement]) -> PointCheck {
    let zero = ctx.zero();
    for u in &chart.units {
        match u.eval(ctx, chart, vals) {
            Some(v) if v != zero => {}
            _ => return PointCheck::NotAPoint,
        }
    }
    for cst in &chart.constraints {
        match cst.eval(ctx, chart, vals) {
            Some(v) if v == zero => {}
            _ => return PointCheck::NotAPoint,
        }
    }
    for rel in &chart.root_relations {
        let lhs = ctx.pow(
            vals[chart.coord_index(rel.coord)],
            (ctx.p() - 1 - rel.exponent_offset) as u64,
        );
        match rel.rhs.eval(ctx, chart, vals) {
            Some(rhs) if rhs == lhs => {}
            _ => return PointCheck::NotAPoint,
        }
    }
    // a genuine chart point: the two uniformizer properties must hold
    let rendered = || {
        chart
            .coords
            .iter()
            .zip(vals.iter())
            .map(|(n, v)| format!("{n}={}", ctx.index_of(*v)))
            .collect::<Vec<_>>()
            .join(",")
    };
    let p_val = match chart.p_expr.eval(ctx, chart, vals) {
        Some(v) => v,
        None => return PointCheck::Fail(format!("p-expression undefined at {}", rendered())),
    };
    let mono_val = match chart.uniformizer_value(ctx, vals) {
        Some(v) => v,
        None => return PointCheck::Fail(format!("unit factor vanishes at {}", rendered())),
    };
    if p_val != mono_val {
        return PointCheck::Fail(format!(
            "p-expression {} != uniformizer monomial {} at {}",
            ctx.index_of(p_val),
            ctx.index_of(mono_val),
            rendered()
        ));
    }
    let any_mono_zero = chart
        .uniformizer
        .monomial
        .iter()
        .any(|(name, _)| vals[chart.coord_index(name)] == zero);
    if (p_val == zero) != any_mono_zero {
        return PointCheck::Fail(format!(
            "special-fiber membership disagrees with monomial vanishing at {}",
            rendered()
        ));
    }
    PointCheck::Ok
}

/// Validates one chart over F_q: tameness of every branch multiplicity,
/// well-formed references, and the uniformizer properties at every chart
/// point (exhaustive when the assignment space is small, fixed-seed samples
/// otherwise). Any counterexample is reported verbatim.
pub fn validate_chart(chart: &Chart, ctx: &FieldCtx) -> ChartValidation {
    let mut report = ChartValidation {
        chart: chart.name.clone(),
        tame: true,
        mode: ValidationMode::Exhaustive,
        assignments: 0,
        valid_points: 0,
        failures: 0,
        witness: None,
    };
    let fail = |report: &mut ChartValidation, msg: String| {
        report.failures += 1;
        if report.witness.is_none() {
            report.witness = Some(msg);
        }
    };

    // structural: every referenced coordinate must exist, exactly once
    let mut names = BTreeSet::new();
    for c in &chart.coords {
        if !names.insert(*c) {
            fail(&mut report, format!("duplicate coordinate {c}"));
        }
    }
    let mut referenced = BTreeSet::new();
    for e in chart.units.iter().chain(&chart.constraints) {
        e.coords_used(&mut referenced);
    }
    for rel in &chart.root_relations {
        referenced.insert(rel.coord);
        rel.rhs.coords_used(&mut referenced);
        if rel.exponent_offset + 1 >= ctx.p() {
            fail(
                &mut report,
                format!("root exponent for {} drops to zero at p = {}", rel.coord, ctx.p()),
            );
        }
    }
    chart.p_expr.coords_used(&mut referenced);
    for (name, mult) in &chart.uniformizer.monomial {
        referenced.insert(name);
        if *mult == 0 {
            fail(&mut report, format!("zero multiplicity on {name}"));
        }
    }
    for r in referenced {
        if !names.contains(r) {
            fail(&mut report, format!("unknown coordinate {r}"));
            return report;
        }
    }

    // tameness: every total branch multiplicity must be prime to p
    for (name, mult) in &chart.uniformizer.monomial {
        if chart.total_multiplicity(ctx.p(), *mult) % ctx.p() as u64 == 0 {
            report.tame = false;
            fail(
                &mut report,
                format!("wild branch: total multiplicity of {name} divisible by p"),
            );
        }
    }
    if report.failures > 0 {
        return report;
    }

    let n = chart.coords.len() as u32;
    let space = (ctx.q() as u128).pow(n);
    let mut vals = vec![ctx.zero(); n as usize];
    if space <= EXHAUSTIVE_CAP {
        report.mode = ValidationMode::Exhaustive;
        for idx in 0..space as u64 {
            let mut rem = idx;
            for v in vals.iter_mut() {
                *v = ctx.element_from_index(rem % ctx.q()).unwrap();
                rem /= ctx.q();
            }
            report.assignments += 1;
            match check_assignment(chart, ctx, &vals) {
                PointCheck::NotAPoint => {}
                PointCheck::Ok => report.valid_points += 1,
                PointCheck::Fail(w) => fail(&mut report, w),
            }
        }
        if report.valid_points == 0 {
            fail(&mut report, "chart has no points over this field".into());
        }
    } else {
        report.mode = ValidationMode::Sampled;
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        for _ in 0..SAMPLE_COUNT {
            for v in vals.iter_mut() {
                *v = ctx.element_from_index(rng.gen_range(0..ctx.q())).unwrap();
            }
            report.assignments += 1;
            match check_assignment(chart, ctx, &vals) {
                PointCheck::NotAPoint => {}
                PointCheck::Ok => report.valid_points += 1,
                PointCheck::Fail(w) => fail(&mut report, w),
            }
        }
    }
    report
}

/// Unit expression in the coordinates of a base point, used by the fiber
/// recipes: the four group-scheme parameters and the ratio a/b.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum UnitExpr {
    OtB0,
    OtB1,
    OtA1,
    OtA0,
    RatioAB,
}

impl UnitExpr {
    pub fn name(self) -> &'static str {
        match self {
            UnitExpr::OtB0 => "x",
            UnitExpr::OtB1 => "x+bc",
            UnitExpr::OtA1 => "y+ac",
            UnitExpr::OtA0 => "y",
            UnitExpr::RatioAB => "a/b",
        }
    }

    /// Slot of this parameter in the quadruple (b0, b1, a1, a0), if any.
    pub fn slot(self) -> Option<usize> {
        match self {
            UnitExpr::OtB0 => Some(0),
            UnitExpr::OtB1 => Some(1),
            UnitExpr::OtA1 => Some(2),
            UnitExpr::OtA0 => Some(3),
            UnitExpr::RatioAB => None,
        }
    }

    pub fn eval(self, ctx: &FieldCtx, p: &ModelPoint) -> FqElement {
        let ot = ot_params(ctx, p);
        match self {
            UnitExpr::OtB0 => ot.b0,
            UnitExpr::OtB1 => ot.b1,
            UnitExpr::OtA1 => ot.a1,
            UnitExpr::OtA0 => ot.a0,
            UnitExpr::RatioAB => {
                let binv = ctx.inv(p.b).expect("a/b requires b invertible on this stratum");
                ctx.mul(p.a, binv)
            }
        }
    }
}

/// One enumerable piece of a resolution fiber over a base point.
#[derive(Clone, Debug)]
pub enum Segment {
    /// Points obtained by extracting (p-1)-th roots of the listed unit
    /// values; each rational point lies on `branches` branches.
    RootFiber { units: &'static [UnitExpr], branches: u32, chart: &'static str },
    /// A single rational point on `branches` branches.
    SinglePoint { branches: u32, chart: &'static str },
    /// The projective family indexed by lambda, with fibers controlled by
    /// 1 + c*lambda, plus its origin point.
    LambdaFamily { family_chart: &'static str, origin_chart: &'static str },
    /// The full blow-up tower over the remaining projective point.
    Tower { entry_chart: &'static str },
}

/// The enumeration plan for one stratum.
#[derive(Clone, Debug)]
pub struct FiberRecipe {
    pub stratum: AdmLabel,
    pub segments: &'static [Segment],
}

static RECIPES: [FiberRecipe; 13] = [
    FiberRecipe {
        stratum: AdmLabel::S010Tau,
        segments: &[Segment::RootFiber {
            units: &[UnitExpr::OtA1, UnitExpr::OtA0],
            branches: 1,
            chart: "len3-fiber",
        }],
    },
    FiberRecipe {
        stratum: AdmLabel::S102Tau,
        segments: &[Segment::RootFiber {
            units: &[UnitExpr::OtB0, UnitExpr::OtA1],
            branches: 1,
            chart: "len3-fiber",
        }],
    },
    FiberRecipe {
        stratum: AdmLabel::S201Tau,
        segments: &[Segment::RootFiber {
            units: &[UnitExpr::OtB1, UnitExpr::OtA0],
            branches: 1,
            chart: "len3-fiber",
        }],
    },
    FiberRecipe {
        stratum: AdmLabel::S212Tau,
        segments: &[Segment::RootFiber {
            units: &[UnitExpr::OtB0, UnitExpr::OtB1],
            branches: 1,
            chart: "len3-fiber",
        }],
    },
    FiberRecipe {
        stratum: AdmLabel::S01Tau,
        segments: &[Segment::RootFiber {
            units: &[UnitExpr::OtA0],
            branches: 2,
            chart: "len2-fiber",
        }],
    },
    FiberRecipe {
        stratum: AdmLabel::S12Tau,
        segments: &[Segment::RootFiber {
            units: &[UnitExpr::OtB0],
            branches: 2,
            chart: "len2-fiber",
        }],
    },
    FiberRecipe {
        stratum: AdmLabel::S10Tau,
        segments: &[Segment::RootFiber {
            units: &[UnitExpr::OtA1],
            branches: 2,
            chart: "len2-fiber",
        }],
    },
    FiberRecipe {
        stratum: AdmLabel::S02Tau,
        segments: &[Segment::RootFiber {
            units: &[UnitExpr::RatioAB],
            branches: 2,
            chart: "s02-cover",
        }],
    },
    FiberRecipe {
        stratum: AdmLabel::S21Tau,
        segments: &[Segment::RootFiber {
            units: &[UnitExpr::OtB1],
            branches: 2,
            chart: "len2-fiber",
        }],
    },
    FiberRecipe {
        stratum: AdmLabel::S0Tau,
        segments: &[Segment::SinglePoint { branches: 3, chart: "s0s2-cover" }],
    },
    FiberRecipe {
        stratum: AdmLabel::S1Tau,
        segments: &[
            Segment::LambdaFamily {
                family_chart: "remark-cover-b",
                origin_chart: "remark-cover-c",
            },
            Segment::SinglePoint { branches: 3, chart: "u2-b-v1" },
        ],
    },
    FiberRecipe {
        stratum: AdmLabel::S2Tau,
        segments: &[Segment::SinglePoint { branches: 3, chart: "s0s2-cover" }],
    },
    FiberRecipe {
        stratum: AdmLabel::Tau,
        segments: &[
            Segment::LambdaFamily {
                family_chart: "remark-cover-b",
                origin_chart: "remark-cover-c",
            },
            Segment::Tower { entry_chart: "E0" },
        ],
    },
];

/// All thirteen recipes, in the canonical longest-first label order.
pub fn recipes() -> &'static [FiberRecipe; 13] {
    &RECIPES
}

pub fn recipe(label: AdmLabel) -> &'static FiberRecipe {
    recipes().iter().find(|r| r.stratum == label).unwrap()
}

/// Every chart name the recipes can reference at characteristic p, with the
/// tower expanded: its layer charts R0..R_{p-3} and the reduced final stage.
pub fn referenced_chart_names(p: u32) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for r in recipes() {
        for seg in r.segments {
            match seg {
                Segment::RootFiber { chart, .. } | Segment::SinglePoint { chart, .. } => {
                    out.insert((*chart).to_string());
                }
                Segment::LambdaFamily { family_chart, origin_chart } => {
                    out.insert((*family_chart).to_string());
                    out.insert((*origin_chart).to_string());
                }
                Segment::Tower { entry_chart } => {
                    out.insert((*entry_chart).to_string());
                    for j in 1..=p - 2 {
                        out.insert(format!("R{}", j - 1));
                    }
                    out.insert("E-final".to_string());
                }
            }
        }
    }
    out
}

/// The atlas is closed when every referenced chart exists; returns the
/// missing names otherwise.
pub fn check_atlas_closure(p: u32) -> Result<(), Vec<String>> {
    let have: BTreeSet<String> = atlas(p).into_iter().map(|c| c.name).collect();
    let missing: Vec<String> = referenced_chart_names(p)
        .into_iter()
        .filter(|n| !have.contains(n))
        .collect();
    if missing.is_empty() {
        Ok(())
    } else {
        Err(missing)
    }
}
