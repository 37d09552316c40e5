//! Command-line front end.
//!
//! Seven subcommands expose the library: `adm` (the admissible table),
//! `strata` (special-fiber census), `trace` (one fiber computation),
//! `phi` (the scaled test function at a torus element), `atlas` (the
//! resolution charts, optionally validated), `drinfeld` (the rank-n
//! comparison sweep), and `verify` (the full pointwise comparison).
//!
//! Exit codes: 0 when the requested check passes (or the command only
//! prints data), 1 when a mathematical comparison fails, 2 on usage
//! errors, limit violations, and I/O failures.  Parsing is separated
//! from execution so both halves stay testable: [`parse_args`] turns an
//! argv into a validated [`RunConfig`] and [`run`] carries it out.

use std::ffi::OsString;
use std::path::PathBuf;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::charts::{atlas, validate_chart, ChartValidation};
use crate::drinfeld::verify_drinfeld;
use crate::gf::{is_prime, FieldCtx};
use crate::hecke::{phi_scaled, TorusElement};
use crate::localmodel::ModelPoint;
use crate::nearby::trace_at;
use crate::report;
use crate::verify::{stratum_census, verify_theorem};
use crate::weyl::AdmLabel;
use crate::Error;

/// Limit on enumerated tuples when neither `--limit` nor the
/// environment override is given.
pub const DEFAULT_LIMIT: u64 = 100_000_000;

/// Environment variable overriding the enumeration limit (a `--limit`
/// flag still wins).
pub const LIMIT_ENV: &str = "GSP4_NEARBY_LIMIT";

/// Environment variable overriding the worker count (a `--workers`
/// flag still wins).
pub const WORKERS_ENV: &str = "GSP4_NEARBY_WORKERS";

/// Output encodings shared by every subcommand.
#[derive(ValueEnum, Copy, Clone, PartialEq, Eq, Debug)]
pub enum OutputFormat {
    /// Human-readable tables.
    Text,
    /// Pretty-printed JSON with a stable key order.
    Json,
    /// One header line plus comma-separated rows.
    Csv,
}

/// What a validated invocation asks for.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Action {
    /// Print the thirteen admissible elements.
    Adm,
    /// Count special-fiber points per stratum.
    Strata { p: u32, r: u32 },
    /// Trace of Frobenius on the reduced fiber over one point.
    Trace { p: u32, r: u32, point: [u64; 5] },
    /// Scaled test function at a torus element and stratum label.
    Phi { p: u32, r: u32, s: [u64; 4], w: AdmLabel },
    /// List the resolution charts, optionally validating each.
    Atlas { p: u32, r: u32, validate: bool },
    /// Rank-n comparison sweep.
    Drinfeld { p: u32, r: u32, n: usize },
    /// Full pointwise comparison over the special fiber.
    Verify { p: u32, r: u32, json_out: Option<PathBuf> },
}

/// A fully validated invocation: the action plus the output and
/// resource settings that apply to it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RunConfig {
    pub action: Action,
    pub format: OutputFormat,
    /// Write output here instead of stdout.
    pub out: Option<PathBuf>,
    /// Enumeration budget in tuples; `--force` resolves to `u64::MAX`.
    pub limit: u64,
    /// Worker threads for the verification sweep; `None` lets the
    /// thread pool pick.
    pub workers: Option<usize>,
    /// Suppress the elapsed-time line in text reports.
    pub no_timing: bool,
}

/// Why parsing stopped: `Help` carries text for stdout and exit 0,
/// `Usage` carries a diagnostic for stderr and exit 2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ParseError {
    Help(String),
    Usage(String),
}

fn usage(msg: impl Into<String>) -> ParseError {
    ParseError::Usage(msg.into())
}

#[derive(Parser, Debug)]
#[command(
    name = "gsp4-nearby",
    version,
    about = "Exact trace-of-Frobenius computations on a ramified GSp(4) local model",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct FieldOpts {
    /// Residue characteristic (an odd prime).
    #[arg(long)]
    p: u32,
    /// Extension degree of the coefficient field F_{p^r}.
    #[arg(long, default_value_t = 1)]
    r: u32,
}

#[derive(Args, Debug)]
struct OutputOpts {
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct LimitOpts {
    /// Enumeration budget in tuples (env GSP4_NEARBY_LIMIT; default 100000000).
    #[arg(long)]
    limit: Option<u64>,
    /// Ignore the enumeration budget entirely.
    #[arg(long)]
    force: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the thirteen admissible elements with lengths and coordinates.
    Adm {
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Count special-fiber points in each stratum.
    Strata {
        #[command(flatten)]
        field: FieldOpts,
        #[command(flatten)]
        output: OutputOpts,
        #[command(flatten)]
        limits: LimitOpts,
    },
    /// Compute the fiber trace over one special-fiber point.
    Trace {
        #[command(flatten)]
        field: FieldOpts,
        #[command(flatten)]
        output: OutputOpts,
        /// Point as five element indices "x,y,a,b,c" (index < q).
        #[arg(long)]
        point: String,
    },
    /// Evaluate the scaled test function at a torus element.
    Phi {
        #[command(flatten)]
        field: FieldOpts,
        #[command(flatten)]
        output: OutputOpts,
        /// Torus element as four nonzero element indices "g0,g1,g2,g3".
        #[arg(long)]
        s: String,
        /// Stratum label, e.g. "tau", "s1tau", "s010tau".
        #[arg(long)]
        w: String,
    },
    /// List the resolution charts.
    Atlas {
        #[command(flatten)]
        field: FieldOpts,
        #[command(flatten)]
        output: OutputOpts,
        /// Validate every chart over F_{p^r} and report failures.
        #[arg(long)]
        validate: bool,
    },
    /// Run the rank-n comparison sweep (n <= 4, q <= 9).
    Drinfeld {
        #[command(flatten)]
        field: FieldOpts,
        #[command(flatten)]
        output: OutputOpts,
        /// Rank of the sweep.
        #[arg(long)]
        n: usize,
    },
    /// Compare the fiber trace with the scaled test function at every point.
    Verify {
        #[command(flatten)]
        field: FieldOpts,
        #[command(flatten)]
        output: OutputOpts,
        #[command(flatten)]
        limits: LimitOpts,
        /// Also write the JSON report to this path, whatever --format says.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Worker threads for the sweep (env GSP4_NEARBY_WORKERS).
        #[arg(long)]
        workers: Option<usize>,
        /// Omit the elapsed-time line from text output.
        #[arg(long)]
        no_timing: bool,
    },
}

/// Parses and validates an argv.  Returns the runnable configuration,
/// or a [`ParseError`] that already distinguishes help/version text
/// (exit 0) from usage errors (exit 2).
pub fn parse_args<I, T>(args: I) -> Result<RunConfig, ParseError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| match e.kind() {
        ErrorKind::DisplayHelp
        | ErrorKind::DisplayVersion
        | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => ParseError::Help(e.to_string()),
        _ => ParseError::Usage(e.to_string()),
    })?;
    build_config(cli)
}

fn build_config(cli: Cli) -> Result<RunConfig, ParseError> {
    let env_limit = std::env::var(LIMIT_ENV).ok();
    let env_workers = std::env::var(WORKERS_ENV).ok();
    let (action, output, limits, workers, no_timing) = match cli.command {
        Command::Adm { output } => (Action::Adm, output, None, None, false),
        Command::Strata { field, output, limits } => {
            let (p, r) = check_field(&field)?;
            (Action::Strata { p, r }, output, Some(limits), None, false)
        }
        Command::Trace { field, output, point } => {
            let (p, r) = check_field(&field)?;
            let point = parse_tuple::<5>(&point, "--point")?;
            (Action::Trace { p, r, point }, output, None, None, false)
        }
        Command::Phi { field, output, s, w } => {
            let (p, r) = check_field(&field)?;
            let s = parse_tuple::<4>(&s, "--s")?;
            if let Some(bad) = s.iter().find(|&&g| g == 0) {
                return Err(usage(format!(
                    "--s entries must be nonzero element indices; got {bad}"
                )));
            }
            let w = AdmLabel::from_str(&w).map_err(|e| usage(e.to_string()))?;
            (Action::Phi { p, r, s, w }, output, None, None, false)
        }
        Command::Atlas { field, output, validate } => {
            let (p, r) = check_field(&field)?;
            (Action::Atlas { p, r, validate }, output, None, None, false)
        }
        Command::Drinfeld { field, output, n } => {
            let (p, r) = check_field(&field)?;
            (Action::Drinfeld { p, r, n }, output, None, None, false)
        }
        Command::Verify { field, output, limits, json, workers, no_timing } => {
            let (p, r) = check_field(&field)?;
            (
                Action::Verify { p, r, json_out: json },
                output,
                Some(limits),
                Some(workers),
                no_timing,
            )
        }
    };
    let limit = match limits {
        Some(l) => resolve_limit(l.limit, l.force, env_limit.as_deref())?,
        None => DEFAULT_LIMIT,
    };
    let workers = match workers {
        Some(flag) => resolve_workers(flag, env_workers.as_deref())?,
        None => None,
    };
    Ok(RunConfig {
        action,
        format: output.format,
        out: output.out,
        limit,
        workers,
        no_timing,
    })
}

fn check_field(field: &FieldOpts) -> Result<(u32, u32), ParseError> {
    if field.p == 2 || !is_prime(field.p) {
        return Err(usage(format!("p must be an odd prime (got {})", field.p)));
    }
    if !(1..=4).contains(&field.r) {
        return Err(usage(format!("r must lie in 1..=4 (got {})", field.r)));
    }
    Ok((field.p, field.r))
}

/// Parses `"1,2,3"` into exactly `N` u64 entries.
fn parse_tuple<const N: usize>(text: &str, flag: &str) -> Result<[u64; N], ParseError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(usage(format!(
            "{flag} expects {N} comma-separated indices, got {} in {text:?}",
            parts.len()
        )));
    }
    let mut out = [0u64; N];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = part
            .parse()
            .map_err(|_| usage(format!("{flag}: {part:?} is not a nonnegative integer")))?;
    }
    Ok(out)
}

/// `--force` beats `--limit` beats the environment beats the default.
fn resolve_limit(
    flag: Option<u64>,
    force: bool,
    env: Option<&str>,
) -> Result<u64, ParseError> {
    if force {
        return Ok(u64::MAX);
    }
    let chosen = match (flag, env) {
        (Some(l), _) => l,
        (None, Some(text)) => text.parse().map_err(|_| {
            usage(format!("{LIMIT_ENV}={text:?} is not a nonnegative integer"))
        })?,
        (None, None) => DEFAULT_LIMIT,
    };
    if chosen == 0 {
        return Err(usage("the enumeration limit must be at least 1"));
    }
    Ok(chosen)
}

/// A `--workers` flag beats the environment; zero is rejected.
fn resolve_workers(
    flag: Option<usize>,
    env: Option<&str>,
) -> Result<Option<usize>, ParseError> {
    let chosen = match (flag, env) {
        (Some(w), _) => Some(w),
        (None, Some(text)) => Some(text.parse().map_err(|_| {
            usage(format!("{WORKERS_ENV}={text:?} is not a positive integer"))
        })?),
        (None, None) => None,
    };
    if chosen == Some(0) {
        return Err(usage("the worker count must be at least 1"));
    }
    Ok(chosen)
}

/// What `run` produced: the rendered report and whether the underlying
/// mathematical check (if any) passed.
struct Execution {
    output: String,
    pass: bool,
}

struct RunError {
    message: String,
    code: i32,
}

impl RunError {
    fn usage(message: impl Into<String>) -> RunError {
        RunError { message: message.into(), code: 2 }
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> RunError {
        RunError::usage(e.to_string())
    }
}

fn build_ctx(p: u32, r: u32) -> Result<FieldCtx, RunError> {
    FieldCtx::new(p, r).map_err(|e| match e {
        Error::EvenCharacteristic | Error::NotPrime(_) => {
            RunError::usage(format!("p must be an odd prime (got {p})"))
        }
        other => RunError::usage(other.to_string()),
    })
}

/// Executes a validated configuration.  Returns the process exit code:
/// 0 (pass), 1 (a mathematical comparison failed), or 2 (usage, limit,
/// or I/O error).  Reports go to stdout unless `--out` was given;
/// diagnostics go to stderr.
pub fn run(config: &RunConfig) -> i32 {
    match execute(config) {
        Ok(exec) => {
            if let Err(e) = emit(config, &exec.output) {
                eprintln!("error: {}", e.message);
                return e.code;
            }
            if exec.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

fn emit(config: &RunConfig, output: &str) -> Result<(), RunError> {
    let mut text = output.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &config.out {
        Some(path) => std::fs::write(path, text).map_err(|e| {
            RunError::usage(format!("cannot write {}: {e}", path.display()))
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(config: &RunConfig) -> Result<Execution, RunError> {
    match &config.action {
        Action::Adm => {
            let output = match config.format {
                OutputFormat::Text => report::adm_text(),
                OutputFormat::Json => report::adm_json(),
                OutputFormat::Csv => report::adm_csv(),
            };
            Ok(Execution { output, pass: true })
        }
        Action::Strata { p, r } => {
            let ctx = build_ctx(*p, *r)?;
            let census = stratum_census(&ctx, config.limit)?;
            let output = match config.format {
                OutputFormat::Text => report::census_text(&ctx, &census),
                OutputFormat::Json => report::census_json(&ctx, &census),
                OutputFormat::Csv => report::census_csv(&census),
            };
            Ok(Execution { output, pass: true })
        }
        Action::Trace { p, r, point } => {
            let ctx = build_ctx(*p, *r)?;
            let point = ModelPoint::from_indices(&ctx, *point)?;
            let rep = trace_at(&ctx, &point);
            let output = match config.format {
                OutputFormat::Text => rep.render(&ctx),
                OutputFormat::Json => report::trace_json(&ctx, &rep),
                OutputFormat::Csv => report::trace_csv(&rep),
            };
            Ok(Execution { output, pass: true })
        }
        Action::Phi { p, r, s, w } => {
            let ctx = build_ctx(*p, *r)?;
            let mut g = [ctx.zero(); 4];
            for (slot, &idx) in g.iter_mut().zip(s.iter()) {
                *slot = ctx.element_from_index(idx).ok_or_else(|| {
                    RunError::usage(format!(
                        "--s index {idx} is out of range 0..{}",
                        ctx.q()
                    ))
                })?;
            }
            let torus = TorusElement::new(&ctx, g);
            let phi = phi_scaled(&ctx, &torus, *w);
            let output = match config.format {
                OutputFormat::Text => report::phi_text(&ctx, *s, *w, phi),
                OutputFormat::Json => report::phi_json(&ctx, *s, *w, phi),
                OutputFormat::Csv => report::phi_csv(*s, *w, phi),
            };
            Ok(Execution { output, pass: true })
        }
        Action::Atlas { p, r, validate } => {
            let ctx = build_ctx(*p, *r)?;
            let charts = atlas(*p);
            let validations: Option<Vec<ChartValidation>> = if *validate {
                Some(charts.iter().map(|c| validate_chart(c, &ctx)).collect())
            } else {
                None
            };
            let pass = validations
                .as_ref()
                .map_or(true, |v| v.iter().all(ChartValidation::pass));
            let output = match config.format {
                OutputFormat::Text => report::atlas_text(&charts, validations.as_deref()),
                OutputFormat::Json => {
                    report::atlas_json(&ctx, &charts, validations.as_deref())
                }
                OutputFormat::Csv => report::atlas_csv(&charts, validations.as_deref()),
            };
            Ok(Execution { output, pass })
        }
        Action::Drinfeld { p, r, n } => {
            let ctx = build_ctx(*p, *r)?;
            let rep = verify_drinfeld(&ctx, *n)?;
            let output = match config.format {
                OutputFormat::Text => report::drinfeld_text(&rep),
                OutputFormat::Json => report::drinfeld_json(&rep),
                OutputFormat::Csv => report::drinfeld_csv(&rep),
            };
            Ok(Execution { output, pass: rep.verdict() })
        }
        Action::Verify { p, r, json_out } => {
            let ctx = build_ctx(*p, *r)?;
            let rep = verify_theorem(&ctx, config.limit, config.workers)?;
            if let Some(path) = json_out {
                let mut json = report::verify_json(&rep);
                json.push('\n');
                std::fs::write(path, json).map_err(|e| {
                    RunError::usage(format!("cannot write {}: {e}", path.display()))
                })?;
            }
            let output = match config.format {
                OutputFormat::Text => report::verify_text(&rep, !config.no_timing),
                OutputFormat::Json => report::verify_json(&rep),
                OutputFormat::Csv => report::verify_csv(&rep),
            };
            Ok(Execution { output, pass: rep.pass })
        }
    }
}

/// Full entry point for the binary: parse, run, and map help text to
/// stdout (exit 0) and diagnostics to stderr (exit 2).
pub fn main_entry<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_args(args) {
        Ok(config) => run(&config),
        Err(ParseError::Help(text)) => {
            let mut text = text;
            if !text.ends_with('\n') {
                text.push('\n');
            }
            print!("{text}");
            0
        }
        Err(ParseError::Usage(text)) => {
            eprintln!("{}", text.trim_end());
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig, ParseError> {
        parse_args(args.iter().copied())
    }

    #[test]
    fn verify_defaults() {
        let cfg = parse(&["gsp4-nearby", "verify", "--p", "3"]).unwrap();
        assert_eq!(cfg.action, Action::Verify { p: 3, r: 1, json_out: None });
        assert_eq!(cfg.format, OutputFormat::Text);
        assert_eq!(cfg.limit, DEFAULT_LIMIT);
        assert_eq!(cfg.workers, None);
        assert!(!cfg.no_timing);
    }

    #[test]
    fn even_p_is_a_usage_error() {
        let err = parse(&["gsp4-nearby", "verify", "--p", "4", "--r", "1"]).unwrap_err();
        match err {
            ParseError::Usage(msg) => assert!(msg.contains("p must be an odd prime")),
            ParseError::Help(_) => panic!("expected a usage error"),
        }
    }

    #[test]
    fn composite_and_tiny_p_are_rejected() {
        for bad in ["9", "1", "15"] {
            let err = parse(&["gsp4-nearby", "strata", "--p", bad]).unwrap_err();
            assert!(matches!(err, ParseError::Usage(m) if m.contains("odd prime")));
        }
    }

    #[test]
    fn degree_out_of_range_is_rejected() {
        let err = parse(&["gsp4-nearby", "strata", "--p", "3", "--r", "5"]).unwrap_err();
        assert!(matches!(err, ParseError::Usage(m) if m.contains("1..=4")));
    }

    #[test]
    fn point_parsing() {
        let cfg = parse(&[
            "gsp4-nearby", "trace", "--p", "3", "--point", "0, 0, 1, 2, 0",
        ])
        .unwrap();
        assert_eq!(cfg.action, Action::Trace { p: 3, r: 1, point: [0, 0, 1, 2, 0] });

        let err = parse(&["gsp4-nearby", "trace", "--p", "3", "--point", "1,2,3"]) // arity
            .unwrap_err();
        assert!(matches!(err, ParseError::Usage(m) if m.contains("expects 5")));

        let err = parse(&["gsp4-nearby", "trace", "--p", "3", "--point", "0,0,x,0,0"])
            .unwrap_err();
        assert!(matches!(err, ParseError::Usage(m) if m.contains("not a nonnegative")));
    }

    #[test]
    fn phi_argument_validation() {
        let cfg = parse(&[
            "gsp4-nearby", "phi", "--p", "3", "--s", "1,1,2,2", "--w", "s010tau",
        ])
        .unwrap();
        assert_eq!(
            cfg.action,
            Action::Phi { p: 3, r: 1, s: [1, 1, 2, 2], w: AdmLabel::S010Tau }
        );

        let err = parse(&["gsp4-nearby", "phi", "--p", "3", "--s", "1,0,1,1", "--w", "tau"])
            .unwrap_err();
        assert!(matches!(err, ParseError::Usage(m) if m.contains("nonzero")));

        let err = parse(&["gsp4-nearby", "phi", "--p", "3", "--s", "1,1,1,1", "--w", "bogus"])
            .unwrap_err();
        assert!(matches!(err, ParseError::Usage(m) if m.contains("bogus")));
    }

    #[test]
    fn force_overrides_limit() {
        let cfg = parse(&[
            "gsp4-nearby", "verify", "--p", "3", "--limit", "5", "--force",
        ])
        .unwrap();
        assert_eq!(cfg.limit, u64::MAX);
    }

    #[test]
    fn zero_limit_is_rejected() {
        let err = parse(&["gsp4-nearby", "verify", "--p", "3", "--limit", "0"]).unwrap_err();
        assert!(matches!(err, ParseError::Usage(m) if m.contains("at least 1")));
    }

    #[test]
    fn limit_resolution_order() {
        // Flag beats environment beats default; force beats everything.
        assert_eq!(resolve_limit(Some(7), false, Some("99")).unwrap(), 7);
        assert_eq!(resolve_limit(None, false, Some("99")).unwrap(), 99);
        assert_eq!(resolve_limit(None, false, None).unwrap(), DEFAULT_LIMIT);
        assert_eq!(resolve_limit(Some(7), true, Some("99")).unwrap(), u64::MAX);
        assert!(resolve_limit(None, false, Some("junk")).is_err());
        assert!(resolve_limit(None, false, Some("0")).is_err());
    }

    #[test]
    fn worker_resolution_order() {
        assert_eq!(resolve_workers(Some(2), Some("8")).unwrap(), Some(2));
        assert_eq!(resolve_workers(None, Some("8")).unwrap(), Some(8));
        assert_eq!(resolve_workers(None, None).unwrap(), None);
        assert!(resolve_workers(Some(0), None).is_err());
        assert!(resolve_workers(None, Some("many")).is_err());
    }

    #[test]
    fn help_is_not_a_usage_error() {
        let err = parse(&["gsp4-nearby", "--help"]).unwrap_err();
        assert!(matches!(err, ParseError::Help(_)));
        let err = parse(&["gsp4-nearby", "verify", "--help"]).unwrap_err();
        assert!(matches!(err, ParseError::Help(_)));
    }

    #[test]
    fn missing_subcommand_is_help_like() {
        // Bare invocation prints the command list; it is not a pass/fail run.
        let err = parse(&["gsp4-nearby"]).unwrap_err();
        assert!(matches!(err, ParseError::Help(_) | ParseError::Usage(_)));
    }

    #[test]
    fn run_writes_the_report_to_a_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("adm.csv");
        let config = RunConfig {
            action: Action::Adm,
            format: OutputFormat::Csv,
            out: Some(path.clone()),
            limit: DEFAULT_LIMIT,
            workers: None,
            no_timing: false,
        };
        assert_eq!(run(&config), 0);
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("label,"));
        assert_eq!(text.lines().count(), 14);
    }

    #[test]
    fn verify_writes_side_channel_json() {
        let dir = tempfile::tempdir().unwrap();
        let json_path = dir.path().join("report.json");
        let out_path = dir.path().join("report.txt");
        let config = RunConfig {
            action: Action::Verify { p: 3, r: 1, json_out: Some(json_path.clone()) },
            format: OutputFormat::Text,
            out: Some(out_path.clone()),
            limit: DEFAULT_LIMIT,
            workers: Some(2),
            no_timing: true,
        };
        assert_eq!(run(&config), 0);
        let json: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
        assert_eq!(json["verdict"], "pass");
        assert_eq!(json["params"]["q"], 3);
        let text = std::fs::read_to_string(&out_path).unwrap();
        assert!(text.contains("verdict pass"));
        assert!(!text.contains("elapsed"));
    }

    #[test]
    fn trace_run_reports_an_off_fiber_point_as_usage() {
        // x = y = 1 forces xy = 1 != 0, so the point misses the fiber.
        let config = RunConfig {
            action: Action::Trace { p: 3, r: 1, point: [1, 1, 0, 0, 0] },
            format: OutputFormat::Text,
            out: None,
            limit: DEFAULT_LIMIT,
            workers: None,
            no_timing: false,
        };
        assert_eq!(run(&config), 2);
    }

    #[test]
    fn drinfeld_budget_violation_is_usage() {
        let config = RunConfig {
            action: Action::Drinfeld { p: 5, r: 2, n: 2 },
            format: OutputFormat::Text,
            out: None,
            limit: DEFAULT_LIMIT,
            workers: None,
            no_timing: false,
        };
        assert_eq!(run(&config), 2);
    }
}
