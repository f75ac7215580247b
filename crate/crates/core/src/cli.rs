//! Command-line front end. Exit codes: 0 success or verdict produced, 1 a
//! verification failed, 2 invalid usage.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::contact_geo::{
    contact_sweep, critical_values_f64, equivariance_sweep, induced_profile, pullback_generating_check,
    random_base_points, random_product_points, richardson_profile, translated_points, Embedding, PolynomialGf,
    RadialContactMap, SmoothstepProfile, SweepReport, Tolerances,
};
use crate::error::{Error, Result};
use crate::exact::Prime;
use crate::morse_bott::{stabilized_homology_with, CoefficientMode, LensData, StabilizationOptions};
use crate::oracles::ball_table;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::squeeze::{equivariant_verdict_at, nonequivariant_verdict, SqueezeVerdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "lens-homology", version, about = "Filtered homology of balls and lens spaces, squeezing verdicts, contact checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Stabilized chain-level homology of B(R) in the window (a, inf], next to the closed form.
    Homology(HomologyArgs),
    /// Squeezing verdict for B(R) x S^1 into B(R') x S^1.
    Squeeze(SqueezeArgs),
    /// Numerical checks of the contact embedding, equivariance and translated points.
    VerifyContact(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Coeff {
    #[value(name = "Fk")]
    Fk,
    #[value(name = "Z")]
    Z,
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also write the JSON report to this file.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct HomologyArgs {
    #[arg(short = 'n')]
    n: usize,
    #[arg(short = 'k')]
    k: u64,
    /// Comma-separated rotation weights (default: all 1).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    weights: Option<Vec<i64>>,
    #[arg(short = 'R', value_parser = parse_rational_arg)]
    capacity: Rational,
    #[arg(short = 'a', value_parser = parse_rational_arg)]
    a: Rational,
    #[arg(long)]
    max_degree: usize,
    #[arg(long)]
    equivariant: bool,
    #[arg(long, value_enum, default_value_t = Coeff::Fk)]
    coeff: Coeff,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct SqueezeArgs {
    #[arg(short = 'n')]
    n: usize,
    /// Group order; required with --equivariant.
    #[arg(short = 'k')]
    k: Option<u64>,
    #[arg(short = 'R', value_parser = parse_rational_arg)]
    capacity: Rational,
    #[arg(long = "Rp", value_parser = parse_rational_arg)]
    target: Rational,
    #[arg(long)]
    equivariant: bool,
    /// Window start for the equivariant diagram (default 1).
    #[arg(short = 'a', value_parser = parse_rational_arg)]
    a: Option<Rational>,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MapChoice {
    Sigma,
    Bhupal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CheckChoice {
    Contact,
    Equivariance,
    TranslatedPoints,
    GeneratingFunction,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CorruptChoice {
    Sigma,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(short = 'n', default_value_t = 2)]
    n: usize,
    #[arg(short = 'k', default_value_t = 5)]
    k: u64,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    weights: Option<Vec<i64>>,
    #[arg(long, default_value_t = 1000)]
    points: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = MapChoice::Sigma)]
    map: MapChoice,
    #[arg(long, value_enum, default_value_t = CheckChoice::All)]
    check: CheckChoice,
    /// Finite-difference step.
    #[arg(long, default_value_t = 1e-5)]
    step: f64,
    /// Replace the embedding by a deliberately wrong formula.
    #[arg(long, value_enum, hide = true)]
    corrupt: Option<CorruptChoice>,
    #[command(flatten)]
    output: Output,
}

fn parse_rational_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Shared run configuration, echoed in every JSON report.
#[derive(Clone, Debug, Serialize)]
pub struct Config {
    pub k: u64,
    pub n: usize,
    pub weights: Vec<i64>,
    pub tolerances: Tolerances,
    pub format: &'static str,
    pub seed: u64,
}

fn lens_from(n: usize, k: u64, weights: Option<Vec<i64>>) -> Result<LensData> {
    let weights = weights.unwrap_or_else(|| vec![1; n]);
    if weights.len() != n {
        return Err(Error::DimensionMismatch(format!("n = {n} but {} weights given", weights.len())));
    }
    LensData::new(Prime::new(k)?, weights)
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let result = match cli.command {
        Command::Homology(a) => homology(a, out),
        Command::Squeeze(a) => squeeze(a, out),
        Command::VerifyContact(a) => verify_contact(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn emit(output: &Output, report: &Value, text: &str, out: &mut dyn Write) -> Result<()> {
    let pretty = serde_json::to_string_pretty(report).expect("reports serialize");
    match output.format {
        Format::Json => writeln!(out, "{pretty}"),
        Format::Text => write!(out, "{text}"),
    }
    .map_err(|e| Error::InvalidArgument(format!("cannot write output: {e}")))?;
    if let Some(path) = &output.output {
        std::fs::write(path, pretty + "\n")
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct DegreeRow {
    degree: usize,
    chain: String,
    chain_rank: usize,
    oracle_rank: usize,
    marker: &'static str,
}

fn homology(args: HomologyArgs, out: &mut dyn Write) -> Result<i32> {
    let lens = lens_from(args.n, args.k, args.weights)?;
    let options = StabilizationOptions {
        coefficients: match args.coeff {
            Coeff::Fk => CoefficientMode::Field,
            Coeff::Z => CoefficientMode::Integer,
        },
        ..Default::default()
    };
    let chain = stabilized_homology_with(&lens, &args.capacity, &args.a, args.max_degree, args.equivariant, options)?;
    let oracle = ball_table(lens.n(), lens.k(), &args.capacity, &args.a, args.max_degree, args.equivariant)?;
    // integral tables are compared through their F_k ranks
    let chain_field = chain.table.field_ranks(lens.k());
    let rows: Vec<DegreeRow> = (1..=args.max_degree)
        .map(|d| {
            let chain_rank = chain_field.get(d).copied().unwrap_or(0);
            let oracle_rank = oracle.rank(d);
            let marker = if chain.is_tower_sensitive(d) {
                "tower-sensitive"
            } else if chain_rank == oracle_rank {
                "agree"
            } else {
                "DISAGREE"
            };
            let group = chain.table.group(d);
            let label = match args.coeff {
                Coeff::Z => group.to_string(),
                Coeff::Fk if group.rank == 0 => "0".to_string(),
                Coeff::Fk if group.rank == 1 => format!("F_{}", args.k),
                Coeff::Fk => format!("F_{}^{}", args.k, group.rank),
            };
            DegreeRow { degree: d, chain: label, chain_rank, oracle_rank, marker }
        })
        .collect();
    let pass = rows.iter().all(|r| r.marker != "DISAGREE");
    let closed_form = if args.equivariant {
        "equivariant: Z_k in degrees 2nl <= d < 2n(l+1)-1 when R >= a/l"
    } else {
        "non-equivariant: Z_k in degree 2nl when a/l <= R < a/(l-1)"
    };
    let coefficients = match args.coeff {
        Coeff::Fk => format!("F_{}", args.k),
        Coeff::Z => "Z".to_string(),
    };
    let config = Config {
        k: args.k,
        n: args.n,
        weights: lens.weights().to_vec(),
        tolerances: Tolerances::default(),
        format: format_name(args.output.format),
        seed: 0,
    };
    let report = json!({
        "command": "homology",
        "config": config,
        "R": format_rational(&args.capacity),
        "a": format_rational(&args.a),
        "max_degree": args.max_degree,
        "equivariant": args.equivariant,
        "coefficients": coefficients,
        "closed_form": closed_form,
        "nu": chain.profile.nu(),
        "chain": chain.table,
        "oracle": oracle,
        "degrees": rows,
        "pass": pass,
    });
    let mut text = format!(
        "B(R) window (a, inf], n = {}, k = {}, weights = {:?}, R = {}, a = {}, coefficients {}{}\n",
        args.n,
        args.k,
        lens.weights(),
        format_rational(&args.capacity),
        format_rational(&args.a),
        coefficients,
        if args.equivariant { ", equivariant" } else { "" }
    );
    text += &format!("closed form ({closed_form}); stabilized with nu = {}\n", chain.profile.nu());
    text += &format!("{:>6}  {:>8}  {:>10}  {:>6}  {}\n", "degree", "chain", "chain rank", "oracle", "marker");
    for r in &rows {
        text += &format!("{:>6}  {:>8}  {:>10}  {:>6}  {}\n", r.degree, r.chain, r.chain_rank, r.oracle_rank, r.marker);
    }
    text += if pass { "result: agree\n" } else { "result: DISAGREE\n" };
    emit(&args.output, &report, &text, out)?;
    Ok(if pass { EXIT_OK } else { EXIT_FAILURE })
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Text => "text",
        Format::Json => "json",
    }
}

fn verdict_text(v: &SqueezeVerdict) -> String {
    let mut text = format!("status: {:?}\n", v.status);
    if let Some(w) = v.witness {
        text += &format!("witness: {w}\n");
    }
    if let Some(d) = v.degree {
        text += &format!("degree: {d}\n");
    }
    if let Some(g) = v.diagram {
        text += &format!("diagram ranks: B(R'') = {}, B(R) = {}, B(R') = {}\n", g.larger, g.source, g.target);
    }
    text
}

fn squeeze(args: SqueezeArgs, out: &mut dyn Write) -> Result<i32> {
    let verdict = if args.equivariant {
        let k = args.k.ok_or_else(|| Error::InvalidArgument("-k is required with --equivariant".into()))?;
        let a = args.a.clone().unwrap_or_else(|| Rational::from_integer(1.into()));
        equivariant_verdict_at(args.n, Prime::new(k)?, &args.capacity, &args.target, &a)?
    } else {
        if args.a.is_some() {
            return Err(Error::InvalidArgument("-a applies to the equivariant verdict only".into()));
        }
        nonequivariant_verdict(args.n, &args.capacity, &args.target)?
    };
    let report = serde_json::to_value(&verdict).expect("verdicts serialize");
    emit(&args.output, &report, &verdict_text(&verdict), out)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct CheckOutcome {
    name: String,
    pass: bool,
    expected_negative: bool,
    detail: Value,
}

const TEST_CAPACITY: f64 = 1.0;

fn verify_contact(args: VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    if args.points == 0 {
        return Err(Error::InvalidArgument("--points must be positive".into()));
    }
    if !(args.step > 0.0) {
        return Err(Error::InvalidArgument("--step must be positive".into()));
    }
    let lens = lens_from(args.n, args.k, args.weights)?;
    let tol = Tolerances { step: args.step, ..Tolerances::default() };
    let embedding = match (args.corrupt, args.map) {
        (Some(CorruptChoice::Sigma), _) => Embedding::CorruptedSigma,
        (None, MapChoice::Sigma) => Embedding::Sigma,
        (None, MapChoice::Bhupal) => Embedding::Bhupal,
    };
    let wants = |c: CheckChoice| args.check == c || args.check == CheckChoice::All;
    let radial = RadialContactMap::new(TEST_CAPACITY, lens.n(), SmoothstepProfile::new(-2.5 * TEST_CAPACITY, 0.1)?)?;
    let mut outcomes = Vec::new();

    if wants(CheckChoice::Contact) {
        let sweep = contact_sweep(embedding, lens.n(), args.points, args.seed, tol.step, tol.finite_difference);
        let points = random_product_points(lens.n(), args.points.min(200), args.seed);
        let richardson = richardson_profile(embedding, &points, &[1e-3, 1e-4, 1e-5]);
        outcomes.push(CheckOutcome {
            name: "contact".into(),
            pass: sweep.pass,
            expected_negative: false,
            detail: json!({"sweep": sweep, "richardson": richardson}),
        });
    }
    if wants(CheckChoice::Equivariance) {
        let sweep = equivariance_sweep(&radial, embedding, &lens, args.points, args.seed, tol.closed_form);
        // only the symmetric embedding commutes with the rotations
        let expected_negative = embedding == Embedding::Bhupal;
        outcomes.push(CheckOutcome {
            name: "equivariance".into(),
            pass: sweep.pass,
            expected_negative,
            detail: serde_json::to_value(&sweep).expect("reports serialize"),
        });
    }
    if wants(CheckChoice::TranslatedPoints) {
        let points = translated_points(&radial);
        let profile = induced_profile(&radial)?;
        let exact = critical_values_f64(&profile);
        let max_gap = points.iter().zip(&exact).map(|(p, c)| (p.action - c).abs()).fold(0.0, f64::max);
        let bounded = points.iter().all(|p| p.action > 0.0 && p.action < p.j as f64 * TEST_CAPACITY);
        let pass = points.len() == exact.len() && max_gap <= tol.action && bounded;
        outcomes.push(CheckOutcome {
            name: "translated-points".into(),
            pass,
            expected_negative: false,
            detail: json!({"points": points, "critical_values": exact, "max_difference": max_gap, "tolerance": tol.action}),
        });
    }
    if wants(CheckChoice::GeneratingFunction) {
        let samples = random_base_points(lens.n(), args.points.min(200), args.seed, 1.0);
        let report = if lens.n() == 1 {
            pullback_generating_check(&PolynomialGf::linear_coupling(), &lens, &samples, tol.step, tol.finite_difference)
        } else {
            pullback_generating_check(&PolynomialGf::invariant_coupling(lens.n()), &lens, &samples, tol.step, tol.finite_difference)
        };
        outcomes.push(CheckOutcome {
            name: "generating-function".into(),
            pass: report.pass,
            expected_negative: false,
            detail: serde_json::to_value(&report).expect("reports serialize"),
        });
    }

    let ok = outcomes.iter().all(|o| o.pass != o.expected_negative);
    let config = Config {
        k: args.k,
        n: lens.n(),
        weights: lens.weights().to_vec(),
        tolerances: tol,
        format: format_name(args.output.format),
        seed: args.seed,
    };
    let report = json!({
        "command": "verify-contact",
        "config": config,
        "map": embedding.name(),
        "points": args.points,
        "checks": outcomes,
        "pass": ok,
    });
    let mut text = format!(
        "verify-contact: map {}, n = {}, k = {}, weights = {:?}, {} points, seed {}\n",
        embedding.name(),
        lens.n(),
        args.k,
        lens.weights(),
        args.points,
        args.seed
    );
    for o in &outcomes {
        let verdict = match (o.pass, o.expected_negative) {
            (true, false) => "PASS",
            (false, false) => "FAIL",
            (false, true) => "FAIL (expected-negative)",
            (true, true) => "PASS (expected a failure)",
        };
        text += &format!("{:<20} {:<26} {}\n", o.name, verdict, summary(&o.detail));
    }
    text += if ok { "result: ok\n" } else { "result: verification failed\n" };
    emit(&args.output, &report, &text, out)?;
    Ok(if ok { EXIT_OK } else { EXIT_FAILURE })
}

fn summary(detail: &Value) -> String {
    let sweep = detail.get("sweep").unwrap_or(detail);
    if let Ok(s) = serde_json::from_value::<SweepReport>(sweep.clone()) {
        return format!("max residual {:.3e} (tolerance {:.0e})", s.max_residual, s.tolerance);
    }
    if let Some(gap) = detail.get("max_difference") {
        let count = detail["points"].as_array().map_or(0, Vec::len);
        return format!("{count} circles, max action difference {:.3e}", gap.as_f64().unwrap_or(f64::NAN));
    }
    if let Some(r) = detail.get("max_residual") {
        return format!("max residual {:.3e}", r.as_f64().unwrap_or(f64::NAN));
    }
    String::new()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("lens-homology").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap() + &String::from_utf8(err).unwrap())
    }

    #[test]
    fn composite_modulus_is_a_usage_error() {
        let (code, text) = run_args(&["homology", "-n", "2", "-k", "4", "-R", "7/10", "-a", "1", "--max-degree", "8"]);
        assert_eq!(code, EXIT_USAGE, "{text}");
    }

    #[test]
    fn unknown_flag_is_a_usage_error() {
        assert_eq!(run_args(&["squeeze", "--bogus"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn equivariant_squeeze_needs_k() {
        let (code, _) = run_args(&["squeeze", "-n", "2", "-R", "4/5", "--Rp", "1/10", "--equivariant"]);
        assert_eq!(code, EXIT_USAGE);
    }
}
