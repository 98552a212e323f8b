mod render;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use cardguess::closedform::{self, Parity};
use cardguess::gf_fast::{self, Tier};
use cardguess::kshuffle::{KShuffleAnswer, KShuffleMode, KShuffleQuery};
use cardguess::moments::{self, DistributionTable, MomentSource};
use cardguess::verify::{self, Suite};
use cardguess::{Error, Rat, ShuffleSpec};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use render::Meta;

/// Largest deck the `slow` tier will enumerate from the command line.
const CLI_SLOW_MAX_N: usize = 15;

#[derive(Parser)]
#[command(name = "cardguess", version, about = "Exact distributions and moments of correct guesses after riffle shuffles")]
struct Cli {
    /// Write output to this file, replacing it atomically
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Report elapsed_ms as null so JSON output is byte-reproducible
    #[arg(long, global = true)]
    no_timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generating function of the number of correct guesses after one shuffle
    Gen(GenArgs),
    /// Raw, central and standardized moments after one shuffle
    Moments(MomentsArgs),
    /// Closed-form E[X^r] in L, B = binom(2L,L)/4^L and 2^-n, for n = 4L + alpha
    ClosedForm(ClosedFormArgs),
    /// Fit P(L), Q(L) with D^r F_A(1) = P(L) binom(2L,L) + Q(L) 4^L
    Interpolate(InterpolateArgs),
    /// Expected correct guesses for a deck of C increasing sequences
    Kshuffle(KShuffleArgs),
    /// Run self-checks; exits with status 3 if any fails
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum TierArg {
    Slow,
    Fast,
    Fastest,
}

impl From<TierArg> for Tier {
    fn from(t: TierArg) -> Tier {
        match t {
            TierArg::Slow => Tier::Slow,
            TierArg::Fast => Tier::Fast,
            TierArg::Fastest => Tier::Fastest,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenFormat {
    Poly,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Leading,
    Simulate,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Tiers,
    Closedform,
    Series,
    Kshuffle,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "fastest")]
    tier: TierArg,
    #[arg(long, value_enum, default_value = "poly")]
    format: GenFormat,
}

#[derive(Args)]
struct MomentsArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: u32,
    #[arg(long)]
    central: bool,
    #[arg(long)]
    standardized: bool,
    /// Decimal digits for standardized moments
    #[arg(long, env = "CARDGUESS_PRECISION", default_value_t = moments::DEFAULT_PRECISION)]
    precision: u32,
    /// Force a generating-function tier; by default large n uses closed forms
    #[arg(long, value_enum)]
    tier: Option<TierArg>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct ClosedFormArgs {
    #[arg(long)]
    r: u32,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    alpha: i8,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct InterpolateArgs {
    #[arg(long)]
    r: u32,
    #[arg(long, value_enum)]
    parity: ParityArg,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct KShuffleArgs {
    #[arg(long)]
    n: usize,
    /// Number of riffle shuffles (C = 2^k)
    #[arg(long, conflicts_with = "c", required_unless_present = "c")]
    k: Option<u32>,
    /// Number of increasing sequences
    #[arg(long)]
    c: Option<u64>,
    #[arg(long, value_enum, default_value = "exact")]
    mode: ModeArg,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Decimal digits for the leading term
    #[arg(long, env = "CARDGUESS_PRECISION", default_value_t = moments::DEFAULT_PRECISION)]
    precision: u32,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteArg,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let kind = match e {
            Error::SizeGuard { .. } => "size_guard",
            Error::SingularSystem { .. } | Error::FitValidation { .. } => "fit_failure",
            Error::Undefined(_) => "undefined",
            _ => "invalid_input",
        };
        Failure { code: 2, kind, message: e.to_string() }
    }
}

struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Output {
        Output { text, code: 0 }
    }
}

type Outcome = Result<Output, Failure>;

fn lines(parts: &[String]) -> String {
    let mut out = parts.join("\n");
    out.push('\n');
    out
}

fn slow_guard(tier: Tier, n: usize) -> Result<(), Failure> {
    if tier == Tier::Slow && n > CLI_SLOW_MAX_N {
        return Err(Failure {
            code: 2,
            kind: "size_guard",
            message: format!("slow enumeration: n = {n} exceeds the limit {CLI_SLOW_MAX_N}"),
        });
    }
    Ok(())
}

fn gen(args: &GenArgs, mut meta: Meta) -> Outcome {
    let tier = Tier::from(args.tier);
    slow_guard(tier, args.n)?;
    let generated = gf_fast::generate(args.n, tier)?;
    meta.tier_used = Some(generated.used.to_string());
    Ok(Output::ok(match args.format {
        GenFormat::Poly => format!("{}\n", generated.poly),
        GenFormat::Csv => render::table_csv(&DistributionTable::from_poly(args.n, generated.used, &generated.poly)),
        GenFormat::Json => {
            let table = DistributionTable::from_poly(args.n, generated.used, &generated.poly);
            let coefficients: Vec<Value> =
                generated.poly.coeffs().iter().map(|c| Value::String(c.to_string())).collect();
            render::record(
                meta,
                json!({
                    "coefficients": coefficients,
                    "total": generated.outcomes().to_string(),
                    "polynomial": generated.poly.to_string(),
                    "distribution": render::table_json(&table),
                }),
            )
        }
    }))
}

fn moments_cmd(args: &MomentsArgs, mut meta: Meta) -> Outcome {
    if args.standardized && args.r < 2 {
        return Err(Failure { code: 2, kind: "invalid_input", message: "standardized moments need --r 2 or more".into() });
    }
    let raw = match args.tier {
        Some(tier) => {
            let tier = Tier::from(tier);
            slow_guard(tier, args.n)?;
            let generated = gf_fast::generate(args.n, tier)?;
            meta.tier_used = Some(generated.used.to_string());
            let total = Rat::from_integer(generated.outcomes());
            generated.poly.power_sums(args.r).into_iter().map(|c| Rat::from_integer(c) / &total).collect()
        }
        None => {
            let (raw, source) = moments::raw_moments_auto(args.n, args.r)?;
            meta.tier_used = Some(match source {
                MomentSource::GeneratingFunction(t) => t.to_string(),
                MomentSource::ClosedForm => "closed-form".to_string(),
            });
            raw
        }
    };
    let central = (args.central || args.standardized).then(|| moments::central_from_raw(&raw));
    let standardized = match (&central, args.standardized) {
        (Some(c), true) => Some(moments::standardize(c, args.precision)),
        _ => None,
    };
    Ok(Output::ok(match args.format {
        Format::Text => {
            let mut parts = vec![format!("raw: {}", render::rat_list(&raw))];
            if let Some(c) = &central {
                parts.push(format!("central: {}", render::rat_list(c)));
            }
            match &standardized {
                Some(Some(values)) => {
                    let shown: Vec<String> = values.iter().map(ToString::to_string).collect();
                    parts.push(format!("standardized ({} digits): [{}]", args.precision, shown.join(", ")));
                }
                Some(None) => parts.push("standardized: undefined (variance is zero)".to_string()),
                None => {}
            }
            lines(&parts)
        }
        Format::Json => {
            let mut payload = json!({ "raw": render::rats(&raw) });
            if let Some(c) = &central {
                payload["central"] = render::rats(c);
            }
            match &standardized {
                Some(Some(values)) => payload["standardized"] = Value::Array(values.iter().map(render::decimal).collect()),
                Some(None) => payload["standardized"] = json!({ "undefined": "variance is zero" }),
                None => {}
            }
            render::record(meta, payload)
        }
    }))
}

fn parities_for(alpha: i8) -> Vec<Parity> {
    let mut out = Vec::new();
    for offset in [i64::from(alpha + 1).div_euclid(2), i64::from(alpha).div_euclid(2)] {
        let parity = if offset == 0 { Parity::Even } else { Parity::Odd };
        if !out.contains(&parity) {
            out.push(parity);
        }
    }
    out
}

fn closed_form_cmd(args: &ClosedFormArgs, meta: Meta) -> Outcome {
    let expr = closedform::assemble_moment_expression(args.r, args.alpha)?;
    let mut fits = Vec::new();
    for parity in parities_for(args.alpha) {
        for i in 1..=args.r {
            let fit = closedform::interpolate_half_moment(i, parity)?;
            fits.push(json!({
                "r": i,
                "parity": parity.to_string(),
                "fit_points": fit.fit_points,
                "held_out": fit.held_out,
                "validated": true,
            }));
        }
    }
    let status = format!("held-out validation: passed ({} half-moment fits)", fits.len());
    Ok(Output::ok(match args.format {
        Format::Text => lines(&[expr.to_string(), status]),
        Format::Json => {
            let terms: Vec<Value> = expr
                .terms
                .iter()
                .map(|t| Value::Array(t.coeffs().iter().map(render::rat).collect()))
                .collect();
            render::record(
                meta,
                json!({
                    "expression": expr.to_string(),
                    "b_power_coefficients": terms,
                    "denominator_power": expr.denom_power,
                    "tail": render::rat(&expr.tail),
                    "validation": fits,
                }),
            )
        }
    }))
}

fn interpolate_cmd(args: &InterpolateArgs, meta: Meta) -> Outcome {
    let parity = match args.parity {
        ParityArg::Even => Parity::Even,
        ParityArg::Odd => Parity::Odd,
    };
    let fit = closedform::interpolate_half_moment(args.r, parity)?;
    let first = fit.fit_points.first().copied().unwrap_or_default();
    let last = fit.fit_points.last().copied().unwrap_or_default();
    let held: Vec<String> = fit.held_out.iter().map(ToString::to_string).collect();
    let status = format!("fit on L = {first}..{last}, held out L = {}: passed", held.join(", "));
    Ok(Output::ok(match args.format {
        Format::Text => lines(&[format!("P(L) = {}, Q(L) = {}", fit.p, fit.q), status]),
        Format::Json => render::record(
            meta,
            json!({
                "p": fit.p.to_string(),
                "q": fit.q.to_string(),
                "p_coefficients": fit.p.coeffs().iter().map(render::rat).collect::<Vec<_>>(),
                "q_coefficients": fit.q.coeffs().iter().map(render::rat).collect::<Vec<_>>(),
                "fit_points": fit.fit_points,
                "held_out": fit.held_out,
                "validated": true,
            }),
        ),
    }))
}

fn kshuffle_cmd(args: &KShuffleArgs, meta: Meta) -> Outcome {
    let sequences = match (args.k, args.c) {
        (Some(k), _) => ShuffleSpec::with_shuffles(args.n, k)?.sequences(),
        (None, Some(c)) => c,
        (None, None) => unreachable!("clap requires one of --k and --c"),
    };
    let mode = match args.mode {
        ModeArg::Exact => KShuffleMode::Exact,
        ModeArg::Leading => KShuffleMode::Leading { digits: args.precision },
        ModeArg::Simulate => KShuffleMode::Simulate { trials: args.trials, seed: args.seed },
    };
    let answer = KShuffleQuery { n: args.n, sequences, mode }.run()?;
    let (text, payload) = match &answer {
        KShuffleAnswer::Exact(value) => (format!("{value}\n"), json!({ "mean": render::rat(value) })),
        KShuffleAnswer::Leading(value) => (format!("{value}\n"), json!({ "leading_term": render::decimal(value) })),
        KShuffleAnswer::Simulated(sample) => {
            let trials = Rat::from_integer(sample.trials.into());
            let mean = Rat::from_integer(sample.sum.into()) / &trials;
            let second = Rat::from_integer(sample.sum_squares.into()) / &trials;
            let std_error = format!("{:.6}", sample.std_error());
            let hist: serde_json::Map<String, Value> =
                sample.histogram.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            let hist_text: Vec<String> = sample.histogram.iter().map(|(k, v)| format!("{k}:{v}")).collect();
            (
                lines(&[
                    format!("mean: {mean}"),
                    format!("second moment: {second}"),
                    format!("std error: {std_error}"),
                    format!("histogram: {}", hist_text.join(" ")),
                ]),
                json!({
                    "trials": sample.trials,
                    "seed": sample.seed,
                    "rng": "ChaCha8, seed_from_u64(seed), stream = trial index",
                    "mean": render::rat(&mean),
                    "second_moment": render::rat(&second),
                    "std_error": { "decimal": std_error, "precision": 6 },
                    "histogram": hist,
                }),
            )
        }
    };
    Ok(Output::ok(match args.format {
        Format::Text => text,
        Format::Json => render::record(meta, payload),
    }))
}

fn verify_cmd(args: &VerifyArgs, meta: Meta) -> Outcome {
    let suite = match args.suite {
        SuiteArg::All => Suite::All,
        SuiteArg::Tiers => Suite::Tiers,
        SuiteArg::Closedform => Suite::ClosedForm,
        SuiteArg::Series => Suite::Series,
        SuiteArg::Kshuffle => Suite::KShuffle,
    };
    let report = verify::run(suite);
    let failed = report.failures().count();
    let text = match args.format {
        Format::Text => {
            let mut parts: Vec<String> = report
                .checks
                .iter()
                .map(|c| format!("[{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail))
                .collect();
            parts.push(format!("suite {suite}: {} checks, {failed} failed", report.checks.len()));
            lines(&parts)
        }
        Format::Json => {
            let checks: Vec<Value> = report
                .checks
                .iter()
                .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
                .collect();
            render::record(meta, json!({ "suite": suite.to_string(), "passed": failed == 0, "checks": checks }))
        }
    };
    Ok(Output { text, code: if failed == 0 { 0 } else { 3 } })
}

fn write_atomically(path: &Path, text: &str) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let meta = |command: &'static str, params: Value| Meta {
        command,
        params,
        tier_used: None,
        started,
        timing: !cli.no_timing,
    };
    let outcome = match &cli.command {
        Command::Gen(a) => gen(a, meta("gen", json!({ "n": a.n, "tier": Tier::from(a.tier).to_string() }))),
        Command::Moments(a) => moments_cmd(
            a,
            meta(
                "moments",
                json!({ "n": a.n, "r": a.r, "central": a.central, "standardized": a.standardized,
                        "precision": a.precision, "tier": a.tier.map(|t| Tier::from(t).to_string()) }),
            ),
        ),
        Command::ClosedForm(a) => closed_form_cmd(a, meta("closed-form", json!({ "r": a.r, "alpha": a.alpha }))),
        Command::Interpolate(a) => interpolate_cmd(
            a,
            meta("interpolate", json!({ "r": a.r, "parity": match a.parity { ParityArg::Even => "even", ParityArg::Odd => "odd" } })),
        ),
        Command::Kshuffle(a) => kshuffle_cmd(
            a,
            meta(
                "kshuffle",
                json!({ "n": a.n, "k": a.k, "c": a.c, "trials": a.trials, "seed": a.seed, "precision": a.precision }),
            ),
        ),
        Command::Verify(a) => verify_cmd(a, meta("verify", json!({}))),
    };
    match outcome {
        Ok(out) => {
            let written = match &cli.output {
                Some(path) => write_atomically(path, &out.text),
                None => std::io::stdout().lock().write_all(out.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("{}", json!({ "error": { "kind": "io", "message": e.to_string() } }));
                return ExitCode::from(1);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("{}", json!({ "error": { "kind": f.kind, "message": f.message } }));
            ExitCode::from(f.code)
        }
    }
}
