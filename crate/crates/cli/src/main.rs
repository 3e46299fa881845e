mod config;
mod figure;
mod records;

use std::f64::consts::TAU;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use chtri::criteria::{wak_elliptic_window, WakWindow, WbEllipticity};
use chtri::triangle::RepReport;
use chtri::crosscheck::{run_oracles, OracleConfig, OracleReport, Perturbation};
use chtri::{
    build_rep, classify_region, decide, search_elliptic_infinite_order, tolerance, verify_rep, wb_ellipticity,
    DecideOptions, Decision, EllipticWitness, TriangleParams,
};

use records::{thresholds, AlphaRecord, ScanRecord};

/// Bad input detected after argument parsing; exit code 2.
#[derive(Debug)]
struct InvalidArgs(String);

impl fmt::Display for InvalidArgs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InvalidArgs {}

/// A self-check residual exceeded its tolerance; exit code 3.
#[derive(Debug)]
struct ResidualFailure(String);

impl fmt::Display for ResidualFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ResidualFailure {}

fn invalid(msg: impl Into<String>) -> anyhow::Error {
    InvalidArgs(msg.into()).into()
}

/// Errors from the library caused by the caller's input count as invalid
/// arguments.
fn user_input(e: chtri::Error) -> anyhow::Error {
    match e {
        chtri::Error::ParameterOutOfRange { .. } | chtri::Error::InvalidConfig(_) | chtri::Error::InvalidLetter(_) => {
            invalid(e.to_string())
        }
        other => other.into(),
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "chtri",
    version,
    about = "Discreteness of ultra-parallel complex hyperbolic [m1, m2, 0]-triangle groups",
    after_help = "Any long flag may also be given in a key = value file passed with --config PATH; \
                  flags on the command line win."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct Point {
    /// Radius `cosh(m1/2)`, at least 1.
    #[arg(long, allow_negative_numbers = true)]
    r1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    r2: Option<f64>,
    /// Distance between the first pair of complex geodesics (instead of --r1).
    #[arg(long, conflicts_with = "r1", allow_negative_numbers = true)]
    m1: Option<f64>,
    #[arg(long, conflicts_with = "r2", allow_negative_numbers = true)]
    m2: Option<f64>,
}

impl Point {
    fn radii(&self) -> Result<(f64, f64)> {
        let r = |r: Option<f64>, m: Option<f64>, name: &str| match (r, m) {
            (Some(r), None) => Ok(r),
            (None, Some(m)) if m.is_finite() && m >= 0.0 => Ok(chtri::triangle::r_from_length(m)),
            (None, Some(m)) => Err(invalid(format!("m{name} = {m} must be finite and >= 0"))),
            _ => Err(invalid(format!("give exactly one of --r{name} and --m{name}"))),
        };
        Ok((r(self.r1, self.m1, "1")?, r(self.r2, self.m2, "2")?))
    }

    fn params(&self, alpha: f64) -> Result<TriangleParams> {
        let (r1, r2) = self.radii()?;
        TriangleParams::new(r1, r2, alpha).map_err(user_input)
    }
}

#[derive(Args, Debug, Clone)]
struct TolArgs {
    /// Relative band for the sign of the Hermitian form.
    #[arg(long)]
    eps_sig: Option<f64>,
    /// Relative band around the deltoid.
    #[arg(long)]
    eps_deltoid: Option<f64>,
    /// Absolute slack in conditions (*) and region edges.
    #[arg(long)]
    eps_star: Option<f64>,
}

impl TolArgs {
    fn apply(&self) -> Result<()> {
        let mut t = tolerance::get();
        for (name, v, slot) in [
            ("eps-sig", self.eps_sig, &mut t.sig),
            ("eps-deltoid", self.eps_deltoid, &mut t.deltoid),
            ("eps-star", self.eps_star, &mut t.star),
        ] {
            if let Some(v) = v {
                if !(v.is_finite() && v >= 0.0) {
                    return Err(invalid(format!("--{name} = {v} must be finite and >= 0")));
                }
                *slot = v;
            }
        }
        tolerance::set(t);
        Ok(())
    }
}

#[derive(Args, Debug, Clone)]
struct SearchArgs {
    /// Also search all reduced words up to this length for elliptic
    /// elements of infinite order.
    #[arg(long)]
    max_word_len: Option<usize>,
    /// Largest order tried before an elliptic element is called infinite.
    #[arg(long, default_value_t = 2000)]
    max_order: u64,
    /// Tolerance of the finite-order test.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

impl SearchArgs {
    fn options(&self) -> DecideOptions {
        DecideOptions {
            search_len: self.max_word_len,
            max_order: self.max_order,
            tol: self.tol,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Grid {
    /// Figure coordinates `X = (r1^2 - r2^2)/(r2^2 - 1)`, `Y = 1/(r2^2 - 1)`.
    Xy,
    R1r2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
    Text,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Evaluate every criterion at one parameter point.
    #[command(args_override_self = true)]
    Classify {
        #[command(flatten)]
        point: Point,
        #[arg(long)]
        alpha: f64,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        tol: TolArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Region tags and alpha thresholds over a grid of `(X, Y)` or `(r1, r2)`.
    #[command(args_override_self = true)]
    Scan {
        #[arg(long, value_enum, default_value_t = Grid::Xy)]
        grid: Grid,
        #[arg(long, value_parser = parse_range, default_value = "0,3", allow_hyphen_values = true)]
        xrange: (f64, f64),
        #[arg(long, value_parser = parse_range, default_value = "0.01,0.6", allow_hyphen_values = true)]
        yrange: (f64, f64),
        /// Points per axis: `N` or `NX,NY`.
        #[arg(long, value_parser = parse_resolution, default_value = "61")]
        resolution: (usize, usize),
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[command(flatten)]
        tol: TolArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verdicts along a range of alpha at fixed `(r1, r2)`.
    #[command(args_override_self = true)]
    AlphaScan {
        #[command(flatten)]
        point: Point,
        #[arg(long, value_parser = parse_range, default_value = "0.001,3.141592653589793")]
        alpha_range: (f64, f64),
        #[arg(long, value_parser = parse_count, default_value = "200")]
        resolution: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        tol: TolArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded cross-checks of closed forms against brute force.
    #[command(args_override_self = true)]
    Oracle {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Offset added to the closed-form traces (negative control).
        #[arg(long, hide = true, allow_negative_numbers = true)]
        perturb: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Elliptic words of apparently infinite order.
    #[command(args_override_self = true)]
    WitnessSearch {
        #[command(flatten)]
        point: Point,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 12)]
        max_word_len: usize,
        #[arg(long, default_value_t = 2000)]
        max_order: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[command(flatten)]
        tols: TolArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_range(s: &str) -> std::result::Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected LO,HI, got {s:?}"))?;
    let a: f64 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: f64 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(format!("range {s:?} must be finite with LO < HI"));
    }
    Ok((a, b))
}

fn parse_count(s: &str) -> std::result::Result<usize, String> {
    let n: usize = s.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
    if n < 2 {
        return Err(format!("resolution {n} must be at least 2"));
    }
    Ok(n)
}

fn parse_resolution(s: &str) -> std::result::Result<(usize, usize), String> {
    match s.split_once(',') {
        Some((a, b)) => Ok((parse_count(a)?, parse_count(b)?)),
        None => parse_count(s).map(|n| (n, n)),
    }
}

fn lerp(range: (f64, f64), i: usize, n: usize) -> f64 {
    range.0 + (range.1 - range.0) * i as f64 / (n - 1) as f64
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    Ok(rayon::ThreadPoolBuilder::new().num_threads(workers).build()?)
}

fn emit(out: &Option<PathBuf>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(p) => fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn json(v: &impl Serialize) -> Result<Vec<u8>> {
    let mut b = serde_json::to_vec_pretty(v)?;
    b.push(b'\n');
    Ok(b)
}

#[derive(Serialize)]
struct ParamsOut {
    r1: f64,
    r2: f64,
    m1: f64,
    m2: f64,
    alpha: f64,
    sin2_half: f64,
    swapped: bool,
}

impl From<&TriangleParams> for ParamsOut {
    fn from(p: &TriangleParams) -> Self {
        ParamsOut {
            r1: p.r1,
            r2: p.r2,
            m1: p.m1(),
            m2: p.m2(),
            alpha: p.alpha,
            sin2_half: p.sin2_half(),
            swapped: p.swapped,
        }
    }
}

#[derive(Serialize)]
struct ClassifyOut<'a> {
    verdict: &'static str,
    label: String,
    params: ParamsOut,
    region: String,
    tolerances: chtri::Tolerances,
    decision: &'a Decision,
    wb_ellipticity: WbEllipticity,
    wak_window: Option<WakWindow>,
    rep_check: &'a RepReport,
}

fn classify(point: &Point, alpha: f64, search: &SearchArgs, out: &Option<PathBuf>) -> Result<()> {
    let p = point.params(alpha)?;
    let d = decide(&p, &search.options()).map_err(user_input)?;
    let rep = build_rep(p.r1, p.r2, p.alpha).map_err(user_input)?;
    let rep_check = verify_rep(&rep);
    let wak_window = d.region.k.filter(|_| d.region.point.defined).map(|k| wak_elliptic_window(p.r1, p.r2, k as i64));
    let doc = ClassifyOut {
        verdict: d.verdict.as_str(),
        label: d.label(),
        params: ParamsOut::from(&p),
        region: records::tag_name(&d.region.tag),
        tolerances: tolerance::get(),
        decision: &d,
        wb_ellipticity: wb_ellipticity(p.r1, p.r2),
        wak_window,
        rep_check: &rep_check,
    };
    emit(out, &json(&doc)?)?;
    if !rep_check.passed {
        return Err(ResidualFailure(format!("representation self-check failed: {rep_check:?}")).into());
    }
    Ok(())
}

#[derive(Serialize)]
struct ScanOut<'a> {
    grid: &'static str,
    xrange: (f64, f64),
    yrange: (f64, f64),
    resolution: (usize, usize),
    overlay: figure::Overlay,
    records: &'a [ScanRecord],
}

#[allow(clippy::too_many_arguments)]
fn scan(
    grid: Grid,
    xrange: (f64, f64),
    yrange: (f64, f64),
    resolution: (usize, usize),
    format: Format,
    workers: usize,
    out: &Option<PathBuf>,
) -> Result<()> {
    match grid {
        Grid::Xy if yrange.0 <= 0.0 => return Err(invalid("the (X, Y) grid needs Y > 0 (r2 > 1)")),
        Grid::Xy if xrange.0 < 0.0 => return Err(invalid("the (X, Y) grid needs X >= 0 (r1 >= r2)")),
        Grid::R1r2 if xrange.0 < 1.0 || yrange.0 < 1.0 => return Err(invalid("radii must be >= 1")),
        _ => {}
    }
    if format == Format::Text {
        return Err(invalid("scan writes json, csv or svg"));
    }
    let (nx, ny) = resolution;
    let records: Vec<ScanRecord> = pool(workers)?.install(|| {
        (0..nx * ny)
            .into_par_iter()
            .map(|idx| {
                let (j, i) = (idx / nx, idx % nx);
                let (x, y) = (lerp(xrange, i, nx), lerp(yrange, j, ny));
                let (r1, r2) = match grid {
                    Grid::Xy => figure::radii(x, y),
                    Grid::R1r2 => (x, y),
                };
                let region = classify_region(r1, r2);
                ScanRecord {
                    i,
                    j,
                    x,
                    y,
                    r1,
                    r2,
                    region_label: records::tag_name(&region.tag),
                    thresholds: thresholds(r1, r2, &region),
                    region,
                }
            })
            .collect()
    });
    let figure_plane = grid == Grid::Xy;
    let bytes = match format {
        Format::Csv => {
            let mut b = Vec::new();
            records::write_scan_csv(&mut b, &records)?;
            b
        }
        Format::Svg => figure::render(&records, xrange, yrange, figure_plane).into_bytes(),
        _ => json(&ScanOut {
            grid: if figure_plane { "xy" } else { "r1r2" },
            xrange,
            yrange,
            resolution,
            overlay: figure::overlay(if figure_plane { xrange } else { (0.0, 3.0) }),
            records: &records,
        })?,
    };
    emit(out, &bytes)
}

#[derive(Serialize)]
struct AlphaScanOut<'a> {
    r1: f64,
    r2: f64,
    thresholds: records::Thresholds,
    records: &'a [AlphaRecord],
}

fn alpha_scan(
    point: &Point,
    range: (f64, f64),
    n: usize,
    format: Format,
    workers: usize,
    search: &SearchArgs,
    out: &Option<PathBuf>,
) -> Result<()> {
    if !(range.0 > 0.0 && range.1 < TAU) {
        return Err(invalid("alpha range must lie in (0, 2 pi)"));
    }
    if !matches!(format, Format::Json | Format::Csv) {
        return Err(invalid("alpha-scan writes json or csv"));
    }
    let p0 = point.params(range.0)?;
    let opts = search.options();
    let decisions: Vec<AlphaRecord> = pool(workers)?.install(|| {
        (0..n)
            .into_par_iter()
            .map(|i| {
                let p = TriangleParams::new(p0.r1, p0.r2, lerp(range, i, n)).map_err(user_input)?;
                let d = decide(&p, &opts).map_err(user_input)?;
                Ok(AlphaRecord::from_decision(i, &d))
            })
            .collect::<Result<_>>()
    })?;
    let bytes = match format {
        Format::Csv => {
            let mut b = Vec::new();
            records::write_alpha_csv(&mut b, &decisions)?;
            b
        }
        _ => json(&AlphaScanOut {
            r1: p0.r1,
            r2: p0.r2,
            thresholds: thresholds(p0.r1, p0.r2, &classify_region(p0.r1, p0.r2)),
            records: &decisions,
        })?,
    };
    emit(out, &bytes)
}

fn oracle_text(r: &OracleReport) -> String {
    let mut s = String::new();
    for suite in &r.suites {
        s.push_str(&format!(
            "suite {}: {} cases={} skipped={} failures={} max_residual={:.3e} tolerance={:.0e}\n",
            suite.name,
            if suite.passed { "PASS" } else { "FAIL" },
            suite.cases,
            suite.skipped,
            suite.failures,
            suite.max_residual,
            suite.tolerance
        ));
        if let Some(f) = &suite.first_failure {
            s.push_str(&format!("  first failure: {f}\n"));
        }
    }
    s.push_str(&format!("oracle seed {}: {}\n", r.seed, if r.passed { "PASS" } else { "FAIL" }));
    s
}

fn oracle(seed: u64, perturb: Option<f64>, format: Format, out: &Option<PathBuf>) -> Result<()> {
    let cfg = OracleConfig {
        seed,
        perturbation: perturb.map(Perturbation::TraceOffset),
        ..OracleConfig::default()
    };
    let report = run_oracles(&cfg);
    let bytes = match format {
        Format::Text => oracle_text(&report).into_bytes(),
        Format::Json => json(&report)?,
        _ => return Err(invalid("oracle writes text or json")),
    };
    emit(out, &bytes)?;
    if !report.passed {
        let failed: Vec<&str> = report.suites.iter().filter(|s| !s.passed).map(|s| s.name.as_str()).collect();
        return Err(ResidualFailure(format!("oracle suites failed: {}", failed.join(", "))).into());
    }
    Ok(())
}

#[derive(Serialize)]
struct WitnessOut {
    params: ParamsOut,
    max_word_len: usize,
    max_order: u64,
    tol: f64,
    count: usize,
    witnesses: Vec<EllipticWitness>,
}

#[allow(clippy::too_many_arguments)]
fn witness_search(
    point: &Point,
    alpha: f64,
    max_len: usize,
    max_order: u64,
    tol: f64,
    workers: usize,
    out: &Option<PathBuf>,
) -> Result<()> {
    let p = point.params(alpha)?;
    let rep = build_rep(p.r1, p.r2, p.alpha).map_err(user_input)?;
    let witnesses =
        pool(workers)?.install(|| search_elliptic_infinite_order(&rep, max_len, max_order, tol)).map_err(user_input)?;
    let doc = WitnessOut {
        params: ParamsOut::from(&p),
        max_word_len: max_len,
        max_order,
        tol,
        count: witnesses.len(),
        witnesses,
    };
    emit(out, &json(&doc)?)
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Classify {
            point,
            alpha,
            search,
            tol,
            out,
        } => {
            tol.apply()?;
            classify(&point, alpha, &search, &out)
        }
        Cmd::Scan {
            grid,
            xrange,
            yrange,
            resolution,
            format,
            workers,
            tol,
            out,
        } => {
            tol.apply()?;
            scan(grid, xrange, yrange, resolution, format, workers, &out)
        }
        Cmd::AlphaScan {
            point,
            alpha_range,
            resolution,
            format,
            workers,
            search,
            tol,
            out,
        } => {
            tol.apply()?;
            alpha_scan(&point, alpha_range, resolution, format, workers, &search, &out)
        }
        Cmd::Oracle {
            seed,
            perturb,
            format,
            out,
        } => oracle(seed, perturb, format, &out),
        Cmd::WitnessSearch {
            point,
            alpha,
            max_word_len,
            max_order,
            tol,
            workers,
            tols,
            out,
        } => {
            tols.apply()?;
            witness_search(&point, alpha, max_word_len, max_order, tol, workers, &out)
        }
    }
}

fn main() -> ExitCode {
    let args = match config::expand(std::env::args().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<InvalidArgs>().is_some() {
                ExitCode::from(2)
            } else if e.downcast_ref::<ResidualFailure>().is_some() {
                ExitCode::from(3)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn ranges_and_resolutions() {
        assert_eq!(parse_range("0, 3").unwrap(), (0.0, 3.0));
        assert!(parse_range("3,0").is_err());
        assert!(parse_range("0").is_err());
        assert_eq!(parse_resolution("5").unwrap(), (5, 5));
        assert_eq!(parse_resolution("5,7").unwrap(), (5, 7));
        assert!(parse_resolution("1").is_err());
    }

    #[test]
    fn later_flag_wins() {
        let cli = Cli::try_parse_from(["chtri", "classify", "--r1=2", "--r2=1.5", "--alpha=1", "--r1", "3"]).unwrap();
        let Cmd::Classify { point, .. } = cli.cmd else {
            panic!("wrong subcommand")
        };
        assert_eq!(point.r1, Some(3.0));
    }

    #[test]
    fn lerp_hits_endpoints() {
        assert_eq!(lerp((0.0, PI), 0, 5), 0.0);
        assert_eq!(lerp((0.0, PI), 4, 5), PI);
    }
}
