//! `heckoid`: slope-1/2 table, arithmeticity reports, Farey relator search and scans.
//!
//! Exit codes: 0 success, 1 verification mismatch or failed check, 2 usage error,
//! 3 computational failure.

use clap::{Args, Parser, Subcommand, ValueEnum};
use heckoid::algebraic::AlgebraicNumber;
use heckoid::criterion::{check_arithmetic_subgroup, parabolic_check, GammaCandidate, GenOrder};
use heckoid::error::Error;
use heckoid::farey::{relator_search, relator_search_parabolic};
use heckoid::interval::RationalInterval;
use heckoid::poly::IntPoly;
use heckoid::precision::{Precision, CAP_BITS, PRECISION_ENV};
use heckoid::search::{self, RhoRegion, SearchOptions, SearchRegion};
use heckoid::serde_util::parse_rational;
use heckoid::slope_half::{self, SlopeHalfRow};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "heckoid", version, about = "Arithmetic two-generator groups: slope-1/2 table, criteria, Farey relators")]
struct Cli {
    /// Starting precision in bits (doubled on demand up to 4096).
    #[arg(long, global = true, env = PRECISION_ENV)]
    precision: Option<u32>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Enumerate thin generalized triangle groups of slope 1/2.
    SlopeHalf(SlopeHalfArgs),
    /// Run the arithmeticity criterion on one γ.
    CheckGamma(GammaArgs),
    /// Search Farey words for relators.
    Farey(FareyArgs),
    /// Enumerate candidate γ in a region.
    Scan(ScanArgs),
    /// Enumerate parabolic parameters ρ in a region.
    ScanParabolic(ScanParabolicArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PointFormat {
    Jsonl,
    Csv,
}

#[derive(Args, Debug)]
struct SlopeHalfArgs {
    #[arg(long, default_value_t = 30)]
    p_max: u32,
    #[arg(long, default_value_t = 30)]
    q_max: u32,
    #[arg(long, default_value_t = 30)]
    n_max: u32,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
    /// Output file (stdout if absent).
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Compare against the committed 55-row table (restricted to the bounds).
    #[arg(long)]
    verify_golden: bool,
}

#[derive(Args, Debug)]
struct GammaArgs {
    /// Order of f (integer ≥ 2 or "inf").
    #[arg(long)]
    p: GenOrder,
    #[arg(long)]
    q: GenOrder,
    /// Minimal polynomial, ascending integer coefficients: "-11,0,9,0,1". For p = q = inf
    /// it is the minimal polynomial of ρ.
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    /// Root index, roots ordered by real part then imaginary part.
    #[arg(long, default_value_t = 0)]
    root_index: usize,
}

#[derive(Args, Debug)]
struct FareyArgs {
    #[command(flatten)]
    gamma: GammaArgs,
    #[arg(long, default_value_t = 100)]
    max_denominator: u64,
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = PointFormat::Jsonl)]
    format: PointFormat,
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 100)]
    max_denominator: u64,
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    q: u32,
    #[arg(long, default_value_t = 2)]
    degree_max: usize,
    /// Real range of the complex root, "lo,hi" (rationals allowed).
    #[arg(long, allow_hyphen_values = true)]
    re: String,
    /// Imaginary range of the upper complex root, "lo,hi".
    #[arg(long, allow_hyphen_values = true)]
    im: String,
    /// Real roots lie in (-B, 0).
    #[arg(long, default_value = "4")]
    real_bound: String,
    #[arg(long, default_value_t = 10_000_000)]
    max_points: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct ScanParabolicArgs {
    #[arg(long, allow_hyphen_values = true, default_value = "-4,4")]
    re: String,
    #[arg(long, allow_hyphen_values = true, default_value = "-4,4")]
    im: String,
    /// Keep both ρ and -ρ̄.
    #[arg(long)]
    no_symmetry_reduce: bool,
    #[command(flatten)]
    out: OutputArgs,
}

/// Failure with an exit code.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::Invalid(_) | Error::Reducible(_) => 2,
            _ => 3,
        };
        Fail(code, e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Fail {
    Fail(2, msg.into())
}

fn io(e: std::io::Error) -> Fail {
    Fail(3, e.to_string())
}

fn sink(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Fail> {
    Ok(match path {
        Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p).map_err(io)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn parse_range(s: &str) -> Result<RationalInterval, Fail> {
    let (a, b) = s.split_once(',').ok_or_else(|| usage(format!("range {s:?} is not \"lo,hi\"")))?;
    let lo = parse_rational(a.trim()).ok_or_else(|| usage(format!("bad rational {a:?}")))?;
    let hi = parse_rational(b.trim()).ok_or_else(|| usage(format!("bad rational {b:?}")))?;
    Ok(RationalInterval::new(lo, hi))
}

fn pick_root(a: &GammaArgs) -> Result<AlgebraicNumber, Fail> {
    let p = IntPoly::parse_csv(&a.poly)?;
    if p.degree() == 0 {
        return Err(usage("constant polynomial"));
    }
    let roots = AlgebraicNumber::roots_of(&p, &Precision::from_env()?)?;
    let n = roots.len();
    roots
        .into_iter()
        .nth(a.root_index)
        .ok_or_else(|| usage(format!("root index {} out of range 0..{n}", a.root_index)))
}

fn json_line<T: serde::Serialize>(v: &T) -> Result<(), Fail> {
    let s = serde_json::to_string_pretty(v).map_err(|e| Fail(3, e.to_string()))?;
    println!("{s}");
    Ok(())
}

fn cmd_slope_half(a: &SlopeHalfArgs) -> Result<u8, Fail> {
    if a.p_max < 3 || a.q_max < 3 {
        return Err(usage("generator orders start at 3: --p-max and --q-max must be at least 3"));
    }
    if a.n_max < 2 {
        return Err(usage("--n-max must be at least 2"));
    }
    let rows = slope_half::enumerate_slope_half(a.p_max, a.q_max, a.n_max)?;
    let mut out = sink(&a.output)?;
    match a.format {
        TableFormat::Csv => slope_half::write_csv(&rows, &mut out)?,
        TableFormat::Json => {
            serde_json::to_writer_pretty(&mut out, &rows).map_err(|e| Fail(3, e.to_string()))?;
            writeln!(out).map_err(io)?;
        }
    }
    out.flush().map_err(io)?;
    if !a.verify_golden {
        return Ok(0);
    }
    let expected = restrict_golden(a.p_max, a.q_max, a.n_max);
    let diff = slope_half::diff_rows(&expected, &rows);
    if diff.is_empty() {
        eprintln!("golden table verified: {} rows", rows.len());
        Ok(0)
    } else {
        eprintln!("golden table mismatch ({} expected rows, {} computed):", expected.len(), rows.len());
        for d in diff {
            eprintln!("  {d}");
        }
        Ok(1)
    }
}

/// Golden rows inside the bounds, renumbered.
fn restrict_golden(p_max: u32, q_max: u32, n_max: u32) -> Vec<SlopeHalfRow> {
    let fin = |o: GenOrder| o.finite().unwrap_or(u32::MAX);
    let mut v: Vec<SlopeHalfRow> = slope_half::golden_rows()
        .into_iter()
        .filter(|r| {
            let (p, q) = (fin(r.symbol.p), fin(r.symbol.q));
            r.symbol.n <= n_max && ((p <= p_max && q <= q_max) || (q <= p_max && p <= q_max))
        })
        .collect();
    for (i, r) in v.iter_mut().enumerate() {
        r.index = i + 1;
    }
    v
}

fn cmd_check_gamma(a: &GammaArgs) -> Result<u8, Fail> {
    let x = pick_root(a)?;
    let report = match (a.p, a.q) {
        (GenOrder::Infinite, GenOrder::Infinite) => parabolic_check(&x)?,
        (GenOrder::Finite(_), GenOrder::Finite(_)) => {
            match check_arithmetic_subgroup(&GammaCandidate { p: a.p, q: a.q, gamma: x }) {
                Err(Error::RealGamma(msg)) => {
                    json_line(&serde_json::json!({ "status": "not_applicable", "message": msg }))?;
                    return Ok(1);
                }
                r => r?,
            }
        }
        _ => return Err(usage("mixed parabolic/elliptic pairs are not supported by check-gamma")),
    };
    json_line(&report)?;
    Ok(if report.all_pass { 0 } else { 1 })
}

fn cmd_farey(a: &FareyArgs) -> Result<u8, Fail> {
    let x = pick_root(&a.gamma)?;
    let rep = match (a.gamma.p, a.gamma.q) {
        (GenOrder::Infinite, GenOrder::Infinite) => relator_search_parabolic(&x, a.max_denominator, a.tolerance)?,
        (p, q) => relator_search(p, q, &x, a.max_denominator, a.tolerance)?,
    };
    json_line(&rep)?;
    Ok(0)
}

fn options(o: &OutputArgs, max_points: u64) -> SearchOptions {
    SearchOptions { max_points, max_denominator: o.max_denominator, tolerance: o.tolerance }
}

fn emit_points(o: &OutputArgs, pts: &[search::CandidatePoint]) -> Result<u8, Fail> {
    let mut out = sink(&o.output)?;
    match o.format {
        PointFormat::Jsonl => search::write_jsonl(pts, &mut out)?,
        PointFormat::Csv => search::write_point_cloud(pts, &mut out)?,
    }
    out.flush().map_err(io)?;
    Ok(0)
}

fn cmd_scan(a: &ScanArgs) -> Result<u8, Fail> {
    let b = parse_rational(&a.real_bound).ok_or_else(|| usage("bad --real-bound"))?;
    let region = SearchRegion::new(parse_range(&a.re)?, parse_range(&a.im)?).with_real_bound(b);
    let pts = search::enumerate_gammas(a.p, a.q, a.degree_max, &region, &options(&a.out, a.max_points))?;
    emit_points(&a.out, &pts)
}

fn cmd_scan_parabolic(a: &ScanParabolicArgs) -> Result<u8, Fail> {
    let region = RhoRegion { re: parse_range(&a.re)?, im: parse_range(&a.im)? };
    let pts = search::parabolic_scan(&region, !a.no_symmetry_reduce, &options(&a.out, u64::MAX))?;
    emit_points(&a.out, &pts)
}

fn run(cli: Cli) -> Result<u8, Fail> {
    if let Some(bits) = cli.precision {
        if !(16..=CAP_BITS).contains(&bits) {
            return Err(usage(format!("--precision must be between 16 and {CAP_BITS}")));
        }
        std::env::set_var(PRECISION_ENV, bits.to_string());
    }
    match &cli.cmd {
        Cmd::SlopeHalf(a) => cmd_slope_half(a),
        Cmd::CheckGamma(a) => cmd_check_gamma(a),
        Cmd::Farey(a) => cmd_farey(a),
        Cmd::Scan(a) => cmd_scan(a),
        Cmd::ScanParabolic(a) => cmd_scan_parabolic(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
