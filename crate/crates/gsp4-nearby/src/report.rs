//! Report serialization: stable-key JSON (struct field order), CSV with one
//! row per record, and aligned text tables. Every number is an exact decimal
//! integer.

use serde::{Deserialize, Serialize};

use crate::charts::{Chart, ChartValidation, ValidationMode};
use crate::drinfeld::DrinfeldReport;
use crate::gf::FieldCtx;
use crate::nearby::TraceReport;
use crate::verify::{IdentityReport, VerificationReport};
use crate::weyl::{admissible_set, AdmLabel};

/// Field parameters as they appear in every JSON payload.
#[derive(Serialize, Deserialize, Copy, Clone, PartialEq, Eq, Debug)]
pub struct JsonParams {
    pub p: u32,
    pub r: u32,
    pub q: u64,
}

impl JsonParams {
    pub fn of(ctx: &FieldCtx) -> JsonParams {
        JsonParams { p: ctx.p(), r: ctx.r(), q: ctx.q() }
    }
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct JsonStratum {
    pub label: String,
    pub count: u64,
    pub pass: u64,
    pub fail: u64,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct JsonWitness {
    pub point: [u64; 5],
    pub stratum: String,
    pub trace: i64,
    pub phi: i64,
}

/// The comparison report in its serialized shape. Key order is fixed by
/// field order; the elapsed time is deliberately absent so that identical
/// runs serialize byte-identically.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct JsonReport {
    pub params: JsonParams,
    pub strata: Vec<JsonStratum>,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<JsonWitness>,
}

impl JsonReport {
    pub fn from_verification(rep: &VerificationReport) -> JsonReport {
        JsonReport {
            params: JsonParams { p: rep.p, r: rep.r, q: rep.q },
            strata: rep
                .strata
                .iter()
                .map(|s| JsonStratum {
                    label: s.label.to_string(),
                    count: s.count,
                    pass: s.pass,
                    fail: s.fail,
                })
                .collect(),
            verdict: if rep.pass { "pass".into() } else { "fail".into() },
            witness: rep.witness.as_ref().map(|w| JsonWitness {
                point: w.point,
                stratum: w.stratum.to_string(),
                trace: w.trace,
                phi: w.phi,
            }),
        }
    }
}

pub fn verify_json(rep: &VerificationReport) -> String {
    serde_json::to_string_pretty(&JsonReport::from_verification(rep)).unwrap()
}

pub fn verify_csv(rep: &VerificationReport) -> String {
    let mut out = String::from("label,count,pass,fail\n");
    for s in &rep.strata {
        out.push_str(&format!("{},{},{},{}\n", s.label, s.count, s.pass, s.fail));
    }
    out
}

pub fn verify_text(rep: &VerificationReport, show_timing: bool) -> String {
    let mut out = format!("comparison over F_{} (p = {}, r = {})\n\n", rep.q, rep.p, rep.r);
    out.push_str(&format!("  {:<8} {:>8} {:>8} {:>8}\n", "stratum", "points", "pass", "fail"));
    for s in &rep.strata {
        out.push_str(&format!(
            "  {:<8} {:>8} {:>8} {:>8}\n",
            s.label.to_string(),
            s.count,
            s.pass,
            s.fail
        ));
    }
    out.push_str(&format!(
        "\ntotal {} points, verdict {}\n",
        rep.total,
        if rep.pass { "pass" } else { "fail" }
    ));
    if let Some(w) = &rep.witness {
        out.push_str(&format!(
            "\nfirst mismatch: point ({}) stratum {} trace {} phi {}\n",
            w.point.map(|i| i.to_string()).join(","),
            w.stratum,
            w.trace,
            w.phi
        ));
        out.push_str(&format!(
            "  {:<52} {:<16} {:>8} {:>9} {:>13}\n",
            "fiber segment", "chart", "points", "branches", "contribution"
        ));
        for row in &w.detail.fiber_detail {
            out.push_str(&format!(
                "  {:<52} {:<16} {:>8} {:>9} {:>13}\n",
                row.description, row.chart, row.count, row.branches, row.contribution
            ));
        }
    }
    if show_timing {
        out.push_str(&format!("elapsed {} ms\n", rep.elapsed.as_millis()));
    }
    out
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct JsonCensusRow {
    pub label: String,
    pub count: u64,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct JsonCensus {
    pub params: JsonParams,
    pub strata: Vec<JsonCensusRow>,
    pub total: u64,
}

pub fn census_json(ctx: &FieldCtx, census: &[(AdmLabel, u64)]) -> String {
    let payload = JsonCensus {
        params: JsonParams::of(ctx),
        strata: census
            .iter()
            .map(|(l, c)| JsonCensusRow { label: l.to_string(), count: *c })
            .collect(),
        total: census.iter().map(|(_, c)| c).sum(),
    };
    serde_json::to_string_pretty(&payload).unwrap()
}

pub fn census_csv(census: &[(AdmLabel, u64)]) -> String {
    let mut out = String::from("label,count\n");
    for (l, c) in census {
        out.push_str(&format!("{l},{c}\n"));
    }
    out
}

pub fn census_text(ctx: &FieldCtx, census: &[(AdmLabel, u64)]) -> String {
    let mut out = format!("stratum point counts over F_{}\n\n", ctx.q());
    out.push_str(&format!("  {:<8} {:>8}\n", "stratum", "points"));
    for (l, c) in census {
        out.push_str(&format!("  {:<8} {:>8}\n", l.to_string(), c));
    }
    out.push_str(&format!("\ntotal {}\n", census.iter().map(|(_, c)| c).sum::<u64>()));
    out
}

#[derive(Serialize, Clone, PartialEq, Eq, Debug)]
pub struct JsonTraceRow {
    pub description: String,
    pub chart: String,
    pub count: u64,
    pub branches: u32,
    pub contribution: i64,
}

#[derive(Serialize, Clone, PartialEq, Eq, Debug)]
pub struct JsonTrace {
    pub params: JsonParams,
    pub point: [u64; 5],
    pub stratum: String,
    pub trace: i64,
    pub fiber_detail: Vec<JsonTraceRow>,
}

pub fn trace_json(ctx: &FieldCtx, rep: &TraceReport) -> String {
    let payload = JsonTrace {
        params: JsonParams::of(ctx),
        point: rep.point.indices(ctx),
        stratum: rep.stratum.to_string(),
        trace: rep.trace,
        fiber_detail: rep
            .fiber_detail
            .iter()
            .map(|r| JsonTraceRow {
                description: r.description.clone(),
                chart: r.chart.clone(),
                count: r.count,
                branches: r.branches,
                contribution: r.contribution,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&payload).unwrap()
}

pub fn trace_csv(rep: &TraceReport) -> String {
    let mut out = String::from("description,chart,count,branches,contribution\n");
    for r in &rep.fiber_detail {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.description.replace(',', ";"),
            r.chart,
            r.count,
            r.branches,
            r.contribution
        ));
    }
    out
}

fn vec4(v: &[u8; 4]) -> String {
    format!("({},{},{},{})", v[0], v[1], v[2], v[3])
}

fn vec4_compact(v: &[u8; 4]) -> String {
    v.iter().map(|d| d.to_string()).collect()
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct JsonAdmRow {
    pub label: String,
    pub length: u8,
    pub diffs: [[u8; 4]; 3],
    pub translation: [u8; 4],
}

pub fn adm_json() -> String {
    let rows: Vec<JsonAdmRow> = admissible_set()
        .iter()
        .map(|e| JsonAdmRow {
            label: e.label.to_string(),
            length: e.length,
            diffs: e.diff,
            translation: e.translation,
        })
        .collect();
    serde_json::to_string_pretty(&rows).unwrap()
}

pub fn adm_csv() -> String {
    let mut out = String::from("label,length,t0,t1,t2,translation\n");
    for e in admissible_set() {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            e.label,
            e.length,
            vec4_compact(&e.diff[0]),
            vec4_compact(&e.diff[1]),
            vec4_compact(&e.diff[2]),
            vec4_compact(&e.translation)
        ));
    }
    out
}

pub fn adm_text() -> String {
    let mut out = String::from("mu-admissible set (13 elements, longest first)\n\n");
    out.push_str(&format!(
        "  {:<8} {:>6}  {:<10} {:<10} {:<10} {:<10}\n",
        "label", "length", "t0", "t1", "t2", "translation"
    ));
    for e in admissible_set() {
        out.push_str(&format!(
            "  {:<8} {:>6}  {:<10} {:<10} {:<10} {}\n",
            e.label.to_string(),
            e.length,
            vec4(&e.diff[0]),
            vec4(&e.diff[1]),
            vec4(&e.diff[2]),
            vec4(&e.translation)
        ));
    }
    out
}

#[derive(Serialize, Clone, PartialEq, Eq, Debug)]
pub struct JsonChartValidation {
    pub mode: String,
    pub assignments: u64,
    pub valid_points: u64,
    pub failures: u64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Serialize, Clone, PartialEq, Eq, Debug)]
pub struct JsonChart {
    pub name: String,
    pub coords: Vec<String>,
    pub units: Vec<String>,
    pub roots: Vec<String>,
    pub constraints: Vec<String>,
    pub uniformizer: String,
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<JsonChartValidation>,
}

fn chart_json_row(ctx: &FieldCtx, chart: &Chart, validation: Option<&ChartValidation>) -> JsonChart {
    JsonChart {
        name: chart.name.clone(),
        coords: chart.coords.iter().map(|c| c.to_string()).collect(),
        units: chart.units.iter().map(|u| u.render()).collect(),
        roots: chart
            .root_relations
            .iter()
            .map(|r| {
                let exp = ctx.p() - 1 - r.exponent_offset;
                format!("{}^{} = {}", r.coord, exp, r.rhs.render())
            })
            .collect(),
        constraints: chart.constraints.iter().map(|c| c.render()).collect(),
        uniformizer: chart.uniformizer.render(),
        source: chart.source.clone(),
        validation: validation.map(|v| JsonChartValidation {
            mode: match v.mode {
                ValidationMode::Exhaustive => "exhaustive".into(),
                ValidationMode::Sampled => "sampled".into(),
            },
            assignments: v.assignments,
            valid_points: v.valid_points,
            failures: v.failures,
            pass: v.pass(),
            witness: v.witness.clone(),
        }),
    }
}

pub fn atlas_json(
    ctx: &FieldCtx,
    charts: &[Chart],
    validations: Option<&[ChartValidation]>,
) -> String {
    let rows: Vec<JsonChart> = charts
        .iter()
        .enumerate()
        .map(|(i, c)| chart_json_row(ctx, c, validations.map(|v| &v[i])))
        .collect();
    serde_json::to_string_pretty(&rows).unwrap()
}

pub fn atlas_csv(charts: &[Chart], validations: Option<&[ChartValidation]>) -> String {
    let mut out = String::from("name,coords,uniformizer,pass\n");
    for (i, c) in charts.iter().enumerate() {
        let pass = validations
            .map(|v| if v[i].pass() { "pass" } else { "fail" })
            .unwrap_or("-");
        out.push_str(&format!(
            "{},{},{},{}\n",
            c.name,
            c.coords.join(" "),
            c.uniformizer.render().replace(',', ";"),
            pass
        ));
    }
    out
}

pub fn atlas_text(charts: &[Chart], validations: Option<&[ChartValidation]>) -> String {
    let mut out = format!("resolution atlas: {} charts\n\n", charts.len());
    out.push_str(&format!(
        "  {:<14} {:<28} {:<22} {}\n",
        "chart",
        "coordinates",
        "uniformizer",
        if validations.is_some() { "validation" } else { "" }
    ));
    for (i, c) in charts.iter().enumerate() {
        let verdict = match validations {
            None => String::new(),
            Some(v) => {
                let val = &v[i];
                let mode = match val.mode {
                    ValidationMode::Exhaustive => "exhaustive",
                    ValidationMode::Sampled => "sampled",
                };
                if val.pass() {
                    format!("pass ({} points of {} {})", val.valid_points, val.assignments, mode)
                } else {
                    format!("FAIL: {}", val.witness.clone().unwrap_or_default())
                }
            }
        };
        out.push_str(&format!(
            "  {:<14} {:<28} {:<22} {}\n",
            c.name,
            c.coords.join(","),
            c.uniformizer.render(),
            verdict
        ));
    }
    out
}

#[derive(Serialize, Clone, PartialEq, Eq, Debug)]
pub struct JsonDrinfeld {
    pub params: JsonParams,
    pub n: usize,
    pub points: u64,
    pub pass: u64,
    pub fail: u64,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

pub fn drinfeld_json(rep: &DrinfeldReport) -> String {
    let payload = JsonDrinfeld {
        params: JsonParams { p: rep.p, r: rep.r, q: rep.q },
        n: rep.n,
        points: rep.points,
        pass: rep.pass,
        fail: rep.fail,
        verdict: if rep.verdict() { "pass".into() } else { "fail".into() },
        witness: rep.witness.clone(),
    };
    serde_json::to_string_pretty(&payload).unwrap()
}

pub fn drinfeld_csv(rep: &DrinfeldReport) -> String {
    format!(
        "n,p,r,q,points,pass,fail,verdict\n{},{},{},{},{},{},{},{}\n",
        rep.n,
        rep.p,
        rep.r,
        rep.q,
        rep.points,
        rep.pass,
        rep.fail,
        if rep.verdict() { "pass" } else { "fail" }
    )
}

pub fn drinfeld_text(rep: &DrinfeldReport) -> String {
    let mut out = format!(
        "rank-{} sweep over F_{}: {} special-fiber points, {} pass, {} fail -> {}\n",
        rep.n,
        rep.q,
        rep.points,
        rep.pass,
        rep.fail,
        if rep.verdict() { "pass" } else { "fail" }
    );
    if let Some(w) = &rep.witness {
        out.push_str(&format!("first mismatch: {w}\n"));
    }
    out
}

pub fn identities_text(rep: &IdentityReport) -> String {
    let mut out = String::from("identity suites\n\n");
    out.push_str(&format!("  {:<20} {:>10} {:>9}\n", "check", "performed", "failures"));
    for c in &rep.checks {
        out.push_str(&format!("  {:<20} {:>10} {:>9}\n", c.name, c.checked, c.failures));
        if let Some(w) = &c.witness {
            out.push_str(&format!("    first failure: {w}\n"));
        }
    }
    out.push_str(&format!("\nverdict {}\n", if rep.pass() { "pass" } else { "fail" }));
    out
}

#[derive(Serialize, Clone, PartialEq, Eq, Debug)]
pub struct JsonPhi {
    pub params: JsonParams,
    pub s: [u64; 4],
    pub w: String,
    pub phi: i64,
}

pub fn phi_json(ctx: &FieldCtx, s: [u64; 4], w: AdmLabel, phi: i64) -> String {
    let payload = JsonPhi { params: JsonParams::of(ctx), s, w: w.to_string(), phi };
    serde_json::to_string_pretty(&payload).unwrap()
}

pub fn phi_csv(s: [u64; 4], w: AdmLabel, phi: i64) -> String {
    format!("g0,g1,g2,g3,w,phi\n{},{},{},{},{},{}\n", s[0], s[1], s[2], s[3], w, phi)
}

pub fn phi_text(ctx: &FieldCtx, s: [u64; 4], w: AdmLabel, phi: i64) -> String {
    format!(
        "field F_{} (p = {}, r = {})\ns = ({}, {}, {}, {})  [element indices]\nw = {}\nphi = {}\n",
        ctx.q(),
        ctx.p(),
        ctx.r(),
        s[0],
        s[1],
        s[2],
        s[3],
        w,
        phi
    )
}
