//! gptrans: evaluate the transform family on parsed integrands, integrate
//! expressions over (0, inf), and run the identity catalog.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 numerical
//! non-convergence or a failed must-pass identity.

mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use gptrans_core::catalog::{
    builtin_catalog, find, summarize, verify_record, VerificationOutcome,
};
use gptrans_core::expr::{classify_decay_with, parse, Expr, ParamMap};
use gptrans_core::quad::{integrate_auto, QuadError, QuadOptions, Strategy};
use gptrans_core::transforms::{
    eval_transform, eval_transform_raw, TransformError, TransformKind, TransformRequest,
};

use render::{EvalRow, Format};

#[derive(Parser)]
#[command(
    name = "gptrans",
    version,
    about = "Generalized Laplace- and Stieltjes-type transforms: evaluation, quadrature, identity audits"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a transform of f at one or more points.
    Eval(EvalArgs),
    /// Integrate an expression over (0, inf).
    Quad(QuadArgs),
    /// The identity catalog: list records, verify one, audit all.
    Identity {
        #[command(subcommand)]
        action: IdentityCmd,
    },
}

#[derive(Args)]
struct EvalArgs {
    /// Transform kind: laplace, l2, ln, l2n, stieltjes, pn, p2n, widder.
    #[arg(long)]
    kind: String,
    /// Transform order, required by ln, l2n, pn, p2n.
    #[arg(long)]
    n: Option<u32>,
    /// The original f(x).
    #[arg(long, value_name = "EXPR")]
    f: String,
    /// Evaluation point y > 0; repeat the flag for several points.
    #[arg(long = "at", value_name = "Y", required = true, allow_negative_numbers = true)]
    at: Vec<f64>,
    /// Bind a parameter of the expression, name=value; repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    param: Vec<String>,
    /// Integrate the defining kernel directly instead of reducing to the
    /// classical core; the two routes exist to cross-check each other.
    #[arg(long)]
    raw: bool,
    #[command(flatten)]
    tuning: Tuning,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct QuadArgs {
    /// The integrand g(x).
    #[arg(long, value_name = "EXPR")]
    f: String,
    /// Integration strategy; auto picks from the integrand's decay class.
    #[arg(long, value_enum, default_value_t = CliStrategy::Auto)]
    strategy: CliStrategy,
    /// Oscillation period hint, for integrands whose structure hides it.
    #[arg(long, value_name = "T", allow_negative_numbers = true)]
    period: Option<f64>,
    /// Bind a parameter of the expression, name=value; repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    param: Vec<String>,
    #[command(flatten)]
    tuning: Tuning,
    #[command(flatten)]
    output: Output,
}

#[derive(Subcommand)]
enum IdentityCmd {
    /// Print every record: id, anchor, expectation, case count, title.
    List {
        #[command(flatten)]
        output: Output,
    },
    /// Check one record at its default cases, or at overridden bindings.
    Verify(VerifyArgs),
    /// Check every record and summarize.
    Audit(AuditArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Record id, e.g. R4 or E5 (case-insensitive).
    id: String,
    /// Comparison tolerance; clamped up to the record's own floor.
    #[arg(long, default_value_t = 1e-7)]
    tol: f64,
    /// Override a scalar binding of the record's first default case;
    /// repeatable. Other default cases are dropped.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    param: Vec<String>,
    /// Integrand evaluation budget per integral. Overrides GPTRANS_MAX_EVALS.
    #[arg(long)]
    max_evals: Option<u64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct AuditArgs {
    /// Comparison tolerance; records clamp it up to their own floors.
    #[arg(long, default_value_t = 1e-7)]
    tol: f64,
    /// Integrand evaluation budget per integral. Overrides GPTRANS_MAX_EVALS.
    #[arg(long)]
    max_evals: Option<u64>,
    /// Worker threads (default: available parallelism). Output order is
    /// the catalog order either way.
    #[arg(long)]
    jobs: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct Tuning {
    /// Relative tolerance asked of the quadrature engine.
    #[arg(long, default_value_t = 1e-10)]
    rel_tol: f64,
    /// Absolute tolerance floor, for values near zero.
    #[arg(long, default_value_t = 1e-14)]
    abs_tol: f64,
    /// Integrand evaluation budget per integral. Overrides GPTRANS_MAX_EVALS.
    #[arg(long)]
    max_evals: Option<u64>,
}

#[derive(Args)]
struct Output {
    /// table for reading, json or csv for tooling.
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write to a file instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliStrategy {
    Auto,
    Decay,
    Algebraic,
    Oscillatory,
    Abel,
}

impl From<CliStrategy> for Strategy {
    fn from(s: CliStrategy) -> Strategy {
        match s {
            CliStrategy::Auto => Strategy::Auto,
            CliStrategy::Decay => Strategy::Decay,
            CliStrategy::Algebraic => Strategy::Algebraic,
            CliStrategy::Oscillatory => Strategy::Oscillatory,
            CliStrategy::Abel => Strategy::Abel,
        }
    }
}

/// What went wrong, sorted by whose fault it is.
enum Failure {
    /// Bad flags, unparseable expressions, invalid bindings. Exit 1.
    Usage(String),
    /// The numbers did not cooperate. Exit 2.
    Numeric(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Numeric(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Numeric(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version land here as non-error output.
            let code = u8::from(e.use_stderr());
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Eval(args) => cmd_eval(args),
        Cmd::Quad(args) => cmd_quad(args),
        Cmd::Identity { action } => match action {
            IdentityCmd::List { output } => cmd_identity_list(output),
            IdentityCmd::Verify(args) => cmd_identity_verify(args),
            IdentityCmd::Audit(args) => cmd_identity_audit(args),
        },
    }
}

/// Parse an expression, rendering errors with a caret under the offending
/// position. The grammar is ASCII, so byte positions are column positions.
fn parse_expr(src: &str) -> Result<Expr, Failure> {
    parse(src).map_err(|e| {
        let pos = e.position().min(src.len());
        let mut msg = format!("{e}\n  {src}\n  ");
        msg.push_str(&" ".repeat(pos));
        msg.push('^');
        Failure::Usage(msg)
    })
}

fn parse_params(specs: &[String]) -> Result<ParamMap, Failure> {
    let mut map = ParamMap::new();
    for spec in specs {
        let Some((name, value)) = spec.split_once('=') else {
            return Err(Failure::Usage(format!(
                "--param takes name=value, got `{spec}`"
            )));
        };
        let name = name.trim();
        let valid = !name.is_empty()
            && name.chars().next().is_some_and(|c| !c.is_ascii_digit())
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(Failure::Usage(format!(
                "`{name}` is not a valid parameter name"
            )));
        }
        if name == "x" {
            return Err(Failure::Usage(
                "`x` is the integration variable, not a parameter".into(),
            ));
        }
        let value: f64 = value.trim().parse().map_err(|_| {
            Failure::Usage(format!("--param {name}: `{value}` is not a number"))
        })?;
        if !value.is_finite() {
            return Err(Failure::Usage(format!(
                "--param {name} must be finite, got {value}"
            )));
        }
        map.set(name, value);
    }
    Ok(map)
}

/// Evaluation budget: explicit flag, then GPTRANS_MAX_EVALS, then default.
fn max_evals_setting(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(v) = flag {
        return Ok(v);
    }
    match std::env::var("GPTRANS_MAX_EVALS") {
        Ok(raw) => raw.trim().parse::<u64>().map_err(|_| {
            Failure::Usage(format!(
                "GPTRANS_MAX_EVALS must be a nonnegative integer, got `{raw}`"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(QuadOptions::default().max_evals),
        Err(std::env::VarError::NotUnicode(_)) => Err(Failure::Usage(
            "GPTRANS_MAX_EVALS is not valid unicode".into(),
        )),
    }
}

impl Tuning {
    fn options(&self) -> Result<QuadOptions, Failure> {
        let opts = QuadOptions {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            max_evals: max_evals_setting(self.max_evals)?,
            ..QuadOptions::default()
        };
        opts.validate().map_err(|e| Failure::Usage(e.to_string()))?;
        Ok(opts)
    }
}

impl Output {
    fn emit(&self, text: &str) -> Result<(), Failure> {
        match &self.out {
            None => {
                print!("{text}");
                Ok(())
            }
            Some(path) => std::fs::write(path, text).map_err(|e| {
                Failure::Usage(format!("cannot write {}: {e}", path.display()))
            }),
        }
    }
}

fn resolve_kind(kind: &str, n: Option<u32>) -> Result<TransformKind, Failure> {
    let base = kind.to_ascii_lowercase();
    let order = |n: Option<u32>| {
        n.ok_or_else(|| Failure::Usage(format!("--kind {base} requires --n")))
    };
    let k = match base.as_str() {
        "laplace" => TransformKind::Laplace,
        "l2" => TransformKind::L2,
        "ln" => TransformKind::Ln { n: order(n)? },
        "l2n" => TransformKind::L2n { n: order(n)? },
        "stieltjes" => TransformKind::Stieltjes,
        "pn" => TransformKind::Pn { n: order(n)? },
        "p2n" => TransformKind::P2n { n: order(n)? },
        "widder" => TransformKind::Widder,
        _ => {
            return Err(Failure::Usage(format!(
                "unknown transform kind `{kind}`; expected laplace, l2, ln, l2n, stieltjes, pn, p2n, or widder"
            )))
        }
    };
    let takes_n = matches!(base.as_str(), "ln" | "l2n" | "pn" | "p2n");
    if !takes_n && n.is_some() {
        return Err(Failure::Usage(format!("--kind {base} takes no --n")));
    }
    if k.validate().is_err() {
        // At this surface the order flag is literally `--n`.
        let v = n.unwrap_or(0);
        let msg = match k {
            TransformKind::Ln { .. } | TransformKind::Pn { .. } => {
                format!("n must be a power of two (1, 2, 4, ...), got {v}")
            }
            _ => format!("n must be at least 1, got {v}"),
        };
        return Err(Failure::Usage(msg));
    }
    Ok(k)
}

fn transform_failure(e: TransformError) -> Failure {
    match e {
        TransformError::BadOrder { .. } | TransformError::BadPoint { .. } => {
            Failure::Usage(e.to_string())
        }
        TransformError::Expr(inner) => Failure::Usage(inner.to_string()),
        TransformError::Quad(QuadError::BadOptions(m)) => {
            Failure::Usage(format!("invalid quadrature options: {m}"))
        }
        TransformError::Quad(q) => Failure::Numeric(q.to_string()),
    }
}

fn cmd_eval(args: EvalArgs) -> Result<(), Failure> {
    let kind = resolve_kind(&args.kind, args.n)?;
    let f = parse_expr(&args.f)?;
    let params = parse_params(&args.param)?;
    f.ensure_bound(&params)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let opts = args.tuning.options()?;

    let mut rows = Vec::with_capacity(args.at.len());
    for &point in &args.at {
        if !point.is_finite() || point <= 0.0 {
            return Err(Failure::Usage(format!(
                "--at must be positive and finite, got {point}"
            )));
        }
        let req = TransformRequest {
            kind,
            f: &f,
            params: &params,
            point,
            opts: &opts,
        };
        let result = if args.raw {
            eval_transform_raw(&req)
        } else {
            eval_transform(&req)
        }
        .map_err(transform_failure)?;
        rows.push(EvalRow {
            point: Some(point),
            result,
        });
    }

    args.output.emit(&render::eval_rows(args.output.format, &rows))?;

    let stuck: Vec<String> = rows
        .iter()
        .filter(|r| !r.result.converged())
        .map(|r| format!("y={}", r.point.unwrap_or(f64::NAN)))
        .collect();
    if stuck.is_empty() {
        Ok(())
    } else {
        Err(Failure::Numeric(format!(
            "quadrature did not converge at {}",
            stuck.join(", ")
        )))
    }
}

fn cmd_quad(args: QuadArgs) -> Result<(), Failure> {
    let f = parse_expr(&args.f)?;
    let params = parse_params(&args.param)?;
    f.ensure_bound(&params)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let mut opts = args.tuning.options()?;
    opts.strategy = args.strategy.into();
    opts.oscillation_period_hint = args.period;
    opts.validate().map_err(|e| Failure::Usage(e.to_string()))?;

    let class = classify_decay_with(&f, &params);
    let g = |x: f64| f.eval_or_nan(x, &params);
    let result = integrate_auto(g, &class, &opts).map_err(|e| match e {
        QuadError::Unclassified => Failure::Usage(
            "could not classify the integrand's decay; pass an explicit --strategy".into(),
        ),
        QuadError::MissingPeriod => Failure::Usage(
            "this strategy needs --period (the integrand exposes no oscillation structure)"
                .into(),
        ),
        QuadError::BadOptions(_) => Failure::Usage(e.to_string()),
    })?;

    let rows = [EvalRow { point: None, result }];
    args.output.emit(&render::eval_rows(args.output.format, &rows))?;

    if result.converged() {
        Ok(())
    } else {
        Err(Failure::Numeric(format!(
            "quadrature did not converge: {}",
            render::status_word(result.status)
        )))
    }
}

fn cmd_identity_list(output: Output) -> Result<(), Failure> {
    let catalog = builtin_catalog();
    output.emit(&render::list(output.format, &catalog))
}

fn check_tol(tol: f64) -> Result<(), Failure> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Failure::Usage(format!(
            "--tol must be positive and finite, got {tol}"
        )))
    }
}

fn cmd_identity_verify(args: VerifyArgs) -> Result<(), Failure> {
    check_tol(args.tol)?;
    let max_evals = max_evals_setting(args.max_evals)?;
    let catalog = builtin_catalog();
    let Some(rec) = find(&catalog, &args.id) else {
        let ids: Vec<&str> = catalog.iter().map(|r| r.id).collect();
        return Err(Failure::Usage(format!(
            "unknown identity `{}`; valid ids: {}",
            args.id,
            ids.join(", ")
        )));
    };

    let mut rec = rec.clone();
    if !args.param.is_empty() {
        let overrides = parse_params(&args.param)?;
        let mut case = rec.cases.first().cloned().expect("records have cases");
        let mut parts = Vec::new();
        for (name, value) in overrides.iter() {
            if name == "n" {
                if case.n.is_none() {
                    return Err(Failure::Usage(format!(
                        "{} is not order-generic; it has no n to override",
                        rec.id
                    )));
                }
                if value <= 0.0 || value.fract() != 0.0 || value > u32::MAX as f64 {
                    return Err(Failure::Usage(format!(
                        "n must be a positive integer, got {value}"
                    )));
                }
                case.n = Some(value as u32);
            } else if case.params.get(name).is_none() {
                let known: Vec<&str> = case.params.iter().map(|(k, _)| k).collect();
                return Err(Failure::Usage(format!(
                    "{} has no binding `{name}`; its case bindings are {}",
                    rec.id,
                    known.join(", ")
                )));
            }
            case.params.set(name, value);
            parts.push(format!("{name}={value}"));
        }
        case.label = format!("{} [override {}]", case.label, parts.join(", "));
        rec.cases = vec![case];
    }

    let outcomes = verify_record(&rec, args.tol, max_evals);
    let report = summarize(args.tol, outcomes);
    args.output.emit(&render::report(args.output.format, &report))?;
    if report.must_pass_failures == 0 {
        Ok(())
    } else {
        Err(Failure::Numeric(format!(
            "{} must-pass failure(s) in {}",
            report.must_pass_failures, rec.id
        )))
    }
}

fn cmd_identity_audit(args: AuditArgs) -> Result<(), Failure> {
    check_tol(args.tol)?;
    let max_evals = max_evals_setting(args.max_evals)?;
    let jobs = match args.jobs {
        Some(0) => return Err(Failure::Usage("--jobs must be at least 1".into())),
        Some(j) => j,
        None => std::thread::available_parallelism().map_or(1, |p| p.get()),
    };

    let catalog = builtin_catalog();
    let outcomes: Vec<VerificationOutcome> = if jobs == 1 {
        catalog
            .iter()
            .flat_map(|rec| verify_record(rec, args.tol, max_evals))
            .collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Failure::Usage(format!("cannot start {jobs} workers: {e}")))?;
        // par_iter + collect keeps catalog order regardless of scheduling.
        pool.install(|| {
            catalog
                .par_iter()
                .flat_map_iter(|rec| verify_record(rec, args.tol, max_evals))
                .collect()
        })
    };

    let report = summarize(args.tol, outcomes);
    args.output.emit(&render::report(args.output.format, &report))?;
    if report.must_pass_failures == 0 {
        Ok(())
    } else {
        Err(Failure::Numeric(format!(
            "{} must-pass failure(s)",
            report.must_pass_failures
        )))
    }
}
