//! Command line front end. [`run_command`] is the whole program; the binary
//! only forwards `std::env::args_os` and the standard streams to it.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

pub mod doc;
pub mod svg;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_traits::Signed;

use crate::crosscut::{crosscut_figure, KParam};
use crate::geometry::{canonicalize, CanonicalParams, Quadrilateral};
use crate::poly::verify_all;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::verify::{
    empirical_extrema, equality_locus_check, scan_k, verify_bounds, SampleSpec, ScanRow,
};

use doc::{FigureDocument, QuadDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "quadcut",
    version,
    about = "Exact crosscut quadrilaterals and their area ratio bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone)]
struct SamplingArgs {
    /// Grid spacing on Ω ∩ [0, box]².
    #[arg(long, value_parser = rational_arg, default_value = "1/10")]
    grid_step: Rational,
    /// Upper edge of the sampling box.
    #[arg(long = "box", value_parser = rational_arg, default_value = "4")]
    box_max: Rational,
    /// Number of seeded random rational samples.
    #[arg(long, default_value_t = 500)]
    random: usize,
    #[arg(long, default_value_t = 1943)]
    seed: u64,
    /// Largest denominator of random sample coordinates.
    #[arg(long, default_value_t = 64)]
    denominator_bound: u64,
}

impl SamplingArgs {
    fn spec(&self) -> SampleSpec {
        SampleSpec {
            seed: self.seed,
            grid_step: self.grid_step.clone(),
            box_max: self.box_max.clone(),
            random_count: self.random,
            denominator_bound: self.denominator_bound,
            extra_points: Vec::new(),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the crosscut figure of a quadrilateral read from JSON.
    Construct {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        k: Rational,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Write the figure document here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print s/S for the canonical quadrilateral (0,0), (0,1), (a,b), (1,0).
    Ratio {
        /// `a,b`
        #[arg(long)]
        canonical: String,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        k: Rational,
    },
    /// Check s/S = P/Q, both bound factorizations and the positivity rewrites.
    VerifyIdentities,
    /// Check the sharp bounds and their equality cases over sampled Ω.
    VerifyBounds {
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        k: Rational,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Tabulate bounds and empirical extrema for several k.
    ScanK {
        /// Comma list (`1/2,1,2`) or range `from:to:step`.
        #[arg(long, allow_hyphen_values = true)]
        ks: String,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Empirical, unproven envelope of s/S for k in (-1, 0).
    Explore {
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        k: Rational,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

/// A failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type Outcome = Result<i32, Failure>;

pub fn run_command<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Construct {
            input,
            k,
            svg,
            output,
        } => construct(&input, &k, svg.as_deref(), output.as_deref(), out),
        Command::Ratio { canonical, k } => ratio(&canonical, &k, out),
        Command::VerifyIdentities => verify_identities(out),
        Command::VerifyBounds { k, sampling, json } => {
            bounds(&k, &sampling.spec(), json.as_deref(), out)
        }
        Command::ScanK { ks, sampling, csv } => scan(&ks, &sampling.spec(), csv.as_deref(), out),
        Command::Explore { k, sampling, json } => {
            explore(&k, &sampling.spec(), json.as_deref(), out)
        }
    }
}

fn io_failure(path: &Path, e: impl std::fmt::Display) -> Failure {
    usage(format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| io_failure(path, e))
}

fn emit(out: &mut dyn Write, text: std::fmt::Arguments<'_>) -> Result<(), Failure> {
    out.write_fmt(text)
        .and_then(|_| out.write_all(b"\n"))
        .map_err(|e| Failure {
            code: EXIT_FAILED,
            message: e.to_string(),
        })
}

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        emit($out, format_args!($($arg)*))?
    };
}

pub fn read_quad_document(path: &Path) -> Result<QuadDocument, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn construct(
    input: &Path,
    k: &Rational,
    svg_path: Option<&Path>,
    output: Option<&Path>,
    out: &mut dyn Write,
) -> Outcome {
    let document = read_quad_document(input).map_err(usage)?;
    let quad = Quadrilateral::new(document.points())
        .map_err(|e| usage(format!("invalid quadrilateral: {e}")))?;
    let kp = KParam::from_any(k.clone()).map_err(|e| usage(e.to_string()))?;
    let frame = canonicalize(&quad).map_err(|e| usage(e.to_string()))?;
    let figure =
        crosscut_figure(&quad, &kp).map_err(|e| usage(format!("construction failed: {e}")))?;
    let json = serde_json::to_string_pretty(&FigureDocument::new(&quad, &frame, &figure))
        .expect("figure document serializes");
    match output {
        Some(path) => write_file(path, &(json + "\n"))?,
        None => say!(out, "{json}"),
    }
    if let Some(path) = svg_path {
        write_file(path, &svg::render(&figure))?;
    }
    Ok(EXIT_OK)
}

fn parse_canonical(text: &str) -> Result<CanonicalParams, Failure> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| usage(format!("--canonical expects `a,b`, got `{text}`")))?;
    let a = parse_rational(a).map_err(|e| usage(e.to_string()))?;
    let b = parse_rational(b).map_err(|e| usage(e.to_string()))?;
    CanonicalParams::new(a, b).map_err(|e| usage(e.to_string()))
}

fn ratio(canonical: &str, k: &Rational, out: &mut dyn Write) -> Outcome {
    let params = parse_canonical(canonical)?;
    let kp = KParam::from_any(k.clone()).map_err(|e| usage(e.to_string()))?;
    let figure = crosscut_figure(&params.quadrilateral(), &kp)
        .map_err(|e| usage(format!("construction failed: {e}")))?;
    say!(out, "{}", format_rational(&figure.ratio));
    Ok(EXIT_OK)
}

fn verify_identities(out: &mut dyn Write) -> Outcome {
    let mut all_passed = true;
    for outcome in verify_all() {
        match &outcome.result {
            Ok(summary) => say!(out, "PASS {summary}"),
            Err(e) => {
                all_passed = false;
                say!(out, "FAIL {}: {e}", outcome.name);
            }
        }
    }
    Ok(if all_passed { EXIT_OK } else { EXIT_FAILED })
}

fn list_points(points: &[CanonicalParams]) -> String {
    const SHOWN: usize = 6;
    let mut s: Vec<String> = points.iter().take(SHOWN).map(|p| p.to_string()).collect();
    if points.len() > SHOWN {
        s.push(format!("… {} more", points.len() - SHOWN));
    }
    s.join(", ")
}

fn bounds(k: &Rational, spec: &SampleSpec, json: Option<&Path>, out: &mut dyn Write) -> Outcome {
    if !k.is_positive() {
        return Err(usage("verify-bounds needs k > 0"));
    }
    let report = verify_bounds(spec, k).map_err(|e| usage(e.to_string()))?;
    say!(out, "k = {}", format_rational(&report.k));
    say!(
        out,
        "bounds = [{}, {}]",
        format_rational(&report.lower),
        format_rational(&report.upper)
    );
    say!(out, "samples = {}", report.samples_checked);
    say!(
        out,
        "min = {} at {}",
        format_rational(&report.min_ratio),
        list_points(&report.min_at)
    );
    say!(
        out,
        "max = {} at {}",
        format_rational(&report.max_ratio),
        list_points(&report.max_at)
    );
    say!(out, "equality hits = {}", report.equality_hits.len());
    say!(out, "violations = {}", report.violations.len());
    say!(
        out,
        "oracle mismatches = {}",
        report.oracle_mismatches.len()
    );
    say!(out, "locus mismatches = {}", report.locus_mismatches.len());
    let locus = equality_locus_check(k, 10, spec);
    match &locus {
        Ok(r) => say!(
            out,
            "equality locus: upper on {} + {} line points, lower only at (1,0) and (0,1)",
            r.line1_points.len(),
            r.line2_points.len()
        ),
        Err(e) => say!(out, "equality locus: {e}"),
    }
    if let Some(path) = json {
        let text = serde_json::to_string_pretty(&report).expect("report serializes");
        write_file(path, &(text + "\n"))?;
    }
    let passed = report.passed() && locus.is_ok();
    say!(out, "{}", if passed { "PASS" } else { "FAIL" });
    Ok(if passed { EXIT_OK } else { EXIT_FAILED })
}

/// `1/2,1,2` or `from:to:step` (inclusive of `to` when it is hit exactly).
pub fn parse_k_list(text: &str) -> Result<Vec<Rational>, String> {
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        let [from, to, step] = parts.as_slice() else {
            return Err(format!("range `{text}` must be from:to:step"));
        };
        let parse = |s: &str| parse_rational(s).map_err(|e| e.to_string());
        let (from, to, step) = (parse(from)?, parse(to)?, parse(step)?);
        if !step.is_positive() {
            return Err("range step must be positive".into());
        }
        let mut ks = Vec::new();
        let mut k = from;
        while k <= to {
            ks.push(k.clone());
            k += &step;
        }
        return Ok(ks);
    }
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_rational(s).map_err(|e| e.to_string()))
        .collect()
}

fn opt(value: &Option<Rational>) -> String {
    value.as_ref().map(format_rational).unwrap_or_default()
}

pub fn write_scan_csv<W: Write>(rows: &[ScanRow], writer: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record([
        "k",
        "lower",
        "upper",
        "empirical_min",
        "empirical_max",
        "samples",
        "equality_hits",
    ])?;
    for r in rows {
        w.write_record([
            format_rational(&r.k),
            opt(&r.lower),
            opt(&r.upper),
            opt(&r.empirical_min),
            opt(&r.empirical_max),
            r.samples.to_string(),
            r.equality_hits.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn scan(ks: &str, spec: &SampleSpec, csv_path: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let ks = parse_k_list(ks).map_err(usage)?;
    if ks.is_empty() {
        return Err(usage("--ks is empty"));
    }
    let rows = scan_k(&ks, spec).map_err(|e| usage(e.to_string()))?;
    let mut table = Vec::new();
    write_scan_csv(&rows, &mut table).map_err(|e| usage(e.to_string()))?;
    let table = String::from_utf8(table).expect("csv output is utf-8");
    match csv_path {
        Some(path) => write_file(path, &table)?,
        None => out.write_all(table.as_bytes()).map_err(|e| Failure {
            code: EXIT_FAILED,
            message: e.to_string(),
        })?,
    }
    let defects: usize = rows.iter().map(|r| r.defects).sum();
    if rows.iter().any(|r| r.k.is_negative()) {
        say!(out, "rows with k < 0 are empirical (CONJECTURAL)");
    }
    if defects > 0 {
        say!(out, "FAIL: {defects} defects in rows with k > 0");
        return Ok(EXIT_FAILED);
    }
    Ok(EXIT_OK)
}

fn explore(k: &Rational, spec: &SampleSpec, json: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let report = empirical_extrema(spec, k).map_err(|e| usage(e.to_string()))?;
    say!(
        out,
        "{}: empirical envelope only, not a proven bound",
        report.label
    );
    say!(out, "k = {}", format_rational(&report.k));
    say!(
        out,
        "samples = {} (grid step {}, box {}, {} random, seed {})",
        report.samples,
        format_rational(&report.grid_step),
        format_rational(&report.box_max),
        report.random_count,
        report.seed
    );
    say!(out, "construction failures = {}", report.failures);
    say!(
        out,
        "empirical min = {} at {}",
        opt(&report.empirical_min),
        list_points(&report.min_at)
    );
    say!(
        out,
        "empirical max = {} at {}",
        opt(&report.empirical_max),
        list_points(&report.max_at)
    );
    say!(
        out,
        "P/Q agreement: {} agree, {} disagree",
        report.pq_agreements,
        report.pq_disagreements
    );
    if let Some(path) = json {
        let text = serde_json::to_string_pretty(&report).expect("report serializes");
        write_file(path, &(text + "\n"))?;
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("quadcut").chain(args.iter().copied());
        let code = run_command(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn ratio_command() {
        assert_eq!(
            run(&["ratio", "--canonical", "1,1", "--k", "1/1"]).1,
            "1/5\n"
        );
        assert_eq!(
            run(&["ratio", "--canonical", "1,0", "--k", "1/1"]).1,
            "1/6\n"
        );
        assert_eq!(
            run(&["ratio", "--canonical", "2,1", "--k", "1"]).1,
            "151/756\n"
        );
        assert_eq!(
            run(&["ratio", "--canonical", "1,1", "--k", "-1/2"]).1,
            "2/1\n"
        );
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(
            run(&["ratio", "--canonical", "1/2,0", "--k", "1"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            run(&["ratio", "--canonical", "1", "--k", "1"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            run(&["ratio", "--canonical", "1,1", "--k", "-1"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            run(&["ratio", "--canonical", "1,1", "--k", "x"]).0,
            EXIT_USAGE
        );
        assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run(&["verify-bounds", "--k", "0"]).0, EXIT_USAGE);
        let (code, _, err) = run(&["explore", "--k", "1/2"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("(-1, 0)"));
    }

    #[test]
    fn help_exits_0() {
        let (code, out, _) = run(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("verify-identities"));
    }

    #[test]
    fn k_lists() {
        assert_eq!(
            parse_k_list("1/2,1,2").unwrap(),
            vec![rat(1, 2), int(1), int(2)]
        );
        assert_eq!(
            parse_k_list("1/2:2:1/2").unwrap(),
            vec![rat(1, 2), int(1), rat(3, 2), int(2)]
        );
        assert_eq!(parse_k_list("-1/2:0:1/4").unwrap().len(), 3);
        assert!(parse_k_list("1:2").is_err());
        assert!(parse_k_list("1:2:0").is_err());
        assert!(parse_k_list("a,b").is_err());
    }
}
