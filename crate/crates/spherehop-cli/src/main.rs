//! Command-line surface: project models onto Gegenbauer expansions,
//! apply half-step operator chains, run positive-definiteness checks
//! and ladder walks, emit curves, and replay the invariant suite.
//!
//! Exit codes: 0 ok, 2 usage error, 3 chain incompatibility,
//! 4 PD-inconsistent.

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use spherehop::error::Error;
use spherehop::gegenbauer::GegenbauerSeries;
use spherehop::models::{pd_report, CauchySphereModel, GmGammaModel, PdCheckConfig, Verdict};
use spherehop::operators::{compose, OperatorInput, OperatorKind, OperatorSpec};
use spherehop::quadrature::project_with_order;
use spherehop::verify;
use spherehop::zonal::ZonalFunction;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_USAGE: u8 = 2;
const EXIT_CHAIN: u8 = 3;
const EXIT_INCONSISTENT: u8 = 4;

#[derive(Parser)]
#[command(
    name = "spherehop",
    about = "Dimension-hopping operators for positive definite zonal functions on spheres",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Project a model onto a Gegenbauer expansion and write it as JSON
    Project(ProjectArgs),
    /// Apply an operator chain to a series file
    Apply(ApplyArgs),
    /// Run the positive-definiteness checks and emit a report
    Check(CheckArgs),
    /// Sample a function on a uniform grid and emit CSV
    Curve(CurveArgs),
    /// Replay the named invariant suites
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ProjectArgs {
    /// Model spec: cauchy:BETA, gm:M:GAMMA, poly:C0,C1,..., or a series file path
    #[arg(long)]
    model: String,
    /// Basis parameter of the target expansion
    #[arg(long)]
    lambda: f64,
    /// Truncation degree of the expansion
    #[arg(long)]
    degree: usize,
    /// Quadrature order override (default: degree + 16)
    #[arg(long)]
    order: Option<usize>,
    /// Output series file
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct ApplyArgs {
    /// Input series file
    #[arg(long)]
    input: PathBuf,
    /// Operator chain Kind:LAMBDA[,Kind:LAMBDA...] with kinds
    /// Iplus,Iminus,Dplus,Dminus,CIplus,CIminus,CDplus,CDminus,I2,D2
    #[arg(long, default_value = "")]
    chain: String,
    /// Output series file
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct CheckArgs {
    /// Input series file (alternative to --model)
    #[arg(long, conflicts_with = "model")]
    input: Option<PathBuf>,
    /// Model spec (alternative to --input); projected before checking
    #[arg(long, requires = "lambda", requires = "degree")]
    model: Option<String>,
    /// Basis parameter for projecting a model spec
    #[arg(long)]
    lambda: Option<f64>,
    /// Truncation degree for projecting a model spec
    #[arg(long)]
    degree: Option<usize>,
    /// Sphere dimension d of S^{d-1} for the Gram test
    #[arg(long, default_value_t = 3)]
    dimension: usize,
    /// Number of sampled sphere points
    #[arg(long, default_value_t = 50)]
    points: usize,
    /// RNG seed for the point sample
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Relative tolerance for negative coefficients
    #[arg(long, default_value_t = 1e-10)]
    coeff_tol: f64,
    /// Relative tolerance for the smallest Gram eigenvalue
    #[arg(long, default_value_t = 1e-8)]
    gram_tol: f64,
    /// Also write the report JSON to a file
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CurveArgs {
    /// Input series file (alternative to --model)
    #[arg(long, conflicts_with = "model")]
    input: Option<PathBuf>,
    /// Model spec (alternative to --input)
    #[arg(long)]
    model: Option<String>,
    /// Number of grid points over [-1, 1]
    #[arg(long, default_value_t = 201)]
    grid_size: usize,
    /// Output CSV file (stdout when omitted)
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run only suites whose name contains this substring
    #[arg(long)]
    only: Option<String>,
    /// Emit a machine-readable JSON summary instead of text lines
    #[arg(long)]
    json: bool,
}

fn usage_error(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_USAGE)
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("SPHEREHOP_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .parse()
        .map_err(|_| format!("SPHEREHOP_THREADS must be a nonnegative integer, got {raw:?}"))?;
    if n == 0 {
        return Ok(()); // 0 = auto
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| format!("could not configure thread pool: {e}"))
}

/// A parsed model spec: either a closed-form kernel or a series file.
enum ModelSpec {
    Cauchy(f64),
    Gm(u32, f64),
    Poly(Vec<f64>),
    SeriesFile(GegenbauerSeries),
}

impl ModelSpec {
    fn parse(spec: &str) -> Result<ModelSpec, String> {
        if let Some(rest) = spec.strip_prefix("cauchy:") {
            let beta: f64 = rest
                .parse()
                .map_err(|_| format!("cauchy model needs a numeric beta, got {rest:?}"))?;
            CauchySphereModel::new(beta).map_err(|e| e.to_string())?;
            return Ok(ModelSpec::Cauchy(beta));
        }
        if let Some(rest) = spec.strip_prefix("gm:") {
            let (m_str, gamma_str) = rest
                .split_once(':')
                .ok_or_else(|| format!("gm model spec must be gm:M:GAMMA, got {spec:?}"))?;
            let m: u32 = m_str
                .parse()
                .map_err(|_| format!("gm model needs a nonnegative integer m, got {m_str:?}"))?;
            let gamma_exp: f64 = gamma_str
                .parse()
                .map_err(|_| format!("gm model needs a numeric gamma, got {gamma_str:?}"))?;
            GmGammaModel::new(m, gamma_exp).map_err(|e| e.to_string())?;
            return Ok(ModelSpec::Gm(m, gamma_exp));
        }
        if let Some(rest) = spec.strip_prefix("poly:") {
            let coeffs: Result<Vec<f64>, _> = rest.split(',').map(str::parse).collect();
            let coeffs = coeffs
                .map_err(|_| format!("poly model needs numeric coefficients, got {rest:?}"))?;
            if coeffs.is_empty() {
                return Err("poly model needs at least one coefficient".into());
            }
            return Ok(ModelSpec::Poly(coeffs));
        }
        if Path::new(spec).exists() {
            return Ok(ModelSpec::SeriesFile(read_series(Path::new(spec))?));
        }
        Err(format!(
            "unknown model spec {spec:?}: expected cauchy:BETA, gm:M:GAMMA, poly:C0,C1,..., or an existing series file"
        ))
    }

    fn zonal(&self) -> ZonalFunction {
        match self {
            ModelSpec::Cauchy(beta) => CauchySphereModel::new(*beta)
                .expect("validated at parse time")
                .zonal(),
            ModelSpec::Gm(m, gamma_exp) => GmGammaModel::new(*m, *gamma_exp)
                .expect("validated at parse time")
                .zonal(),
            ModelSpec::Poly(coeffs) => {
                let c = coeffs.clone();
                let d = coeffs.clone();
                ZonalFunction::from_fn_with_derivative(
                    move |x| c.iter().rev().fold(0.0, |acc, &ck| acc * x + ck),
                    move |x| {
                        d.iter()
                            .enumerate()
                            .skip(1)
                            .rev()
                            .fold(0.0, |acc, (k, &ck)| acc * x + k as f64 * ck)
                    },
                )
            }
            ModelSpec::SeriesFile(series) => ZonalFunction::from_series(series),
        }
    }
}

fn read_series(path: &Path) -> Result<GegenbauerSeries, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("could not read series file {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("invalid series file {}: {e}", path.display()))
}

fn write_series(path: &Path, series: &GegenbauerSeries) -> Result<(), String> {
    let text =
        serde_json::to_string(series).map_err(|e| format!("could not serialize series: {e}"))?;
    std::fs::write(path, text).map_err(|e| format!("could not write {}: {e}", path.display()))
}

fn parse_chain(chain: &str) -> Result<Vec<OperatorSpec>, String> {
    if chain.trim().is_empty() {
        return Ok(Vec::new());
    }
    chain
        .split(',')
        .map(|entry| {
            let (kind_str, lambda_str) = entry
                .split_once(':')
                .ok_or_else(|| format!("chain entry {entry:?} must be Kind:LAMBDA"))?;
            let kind = match kind_str {
                "Iplus" => OperatorKind::IPlus,
                "Iminus" => OperatorKind::IMinus,
                "Dplus" => OperatorKind::DPlus,
                "Dminus" => OperatorKind::DMinus,
                "CIplus" => OperatorKind::CIPlus,
                "CIminus" => OperatorKind::CIMinus,
                "CDplus" => OperatorKind::CDPlus,
                "CDminus" => OperatorKind::CDMinus,
                "I2" => OperatorKind::TwoStepI,
                "D2" => OperatorKind::TwoStepD,
                other => return Err(format!("unknown operator kind {other:?}")),
            };
            let lambda: f64 = lambda_str
                .parse()
                .map_err(|_| format!("chain entry {entry:?} has a non-numeric lambda"))?;
            Ok(OperatorSpec::spectral(kind, lambda))
        })
        .collect()
}

fn cmd_project(args: &ProjectArgs) -> ExitCode {
    let model = match ModelSpec::parse(&args.model) {
        Ok(m) => m,
        Err(e) => return usage_error(&e),
    };
    let f = model.zonal();
    let order = args.order.unwrap_or(args.degree + 16);
    let series = match project_with_order(&f, args.lambda, args.degree, order) {
        Ok(s) => s,
        Err(e) => return usage_error(&e.to_string()),
    };
    if let Err(e) = write_series(&args.output, &series) {
        return usage_error(&e);
    }
    // residual of the truncated expansion against the model itself
    let grid_points = 101;
    let mut max_residual = 0.0f64;
    for i in 0..grid_points {
        let x = -1.0 + 2.0 * i as f64 / (grid_points - 1) as f64;
        let r = (series.eval(x).expect("grid inside domain") - f.eval(x)).abs();
        max_residual = max_residual.max(r);
    }
    println!("max projection residual on {grid_points}-point grid: {max_residual:.3e}");
    ExitCode::SUCCESS
}

fn multiplier_log_range(spec: &OperatorSpec, input_degree: usize) -> Option<(f64, f64)> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for n in 0..=input_degree {
        let m = match spec.kind {
            OperatorKind::CIPlus | OperatorKind::IPlus | OperatorKind::IMinus => {
                spherehop::operators::ci_multiplier(spherehop::Side::Plus, spec.lambda, n).ok()?
            }
            OperatorKind::CIMinus => {
                spherehop::operators::ci_multiplier(spherehop::Side::Minus, spec.lambda, n).ok()?
            }
            OperatorKind::CDPlus | OperatorKind::DPlus | OperatorKind::DMinus => {
                spherehop::operators::cd_multiplier(spherehop::Side::Plus, spec.lambda, n).ok()?
            }
            OperatorKind::CDMinus => {
                spherehop::operators::cd_multiplier(spherehop::Side::Minus, spec.lambda, n).ok()?
            }
            OperatorKind::TwoStepD => 2.0 * spec.lambda,
            OperatorKind::TwoStepI => {
                if spec.lambda == 1.0 {
                    1.0 / (n as f64 + 1.0)
                } else {
                    1.0 / (2.0 * (spec.lambda - 1.0))
                }
            }
        };
        lo = lo.min(m);
        hi = hi.max(m);
    }
    Some((lo, hi))
}

fn cmd_apply(args: &ApplyArgs) -> ExitCode {
    let series = match read_series(&args.input) {
        Ok(s) => s,
        Err(e) => return usage_error(&e),
    };
    let chain = match parse_chain(&args.chain) {
        Ok(c) => c,
        Err(e) => return usage_error(&e),
    };
    let mut state = series;
    for (index, spec) in chain.iter().enumerate() {
        let input_lambda = state.lambda();
        let degree = state.degree();
        match compose(&[*spec], OperatorInput::Series(state)) {
            Ok(OperatorInput::Series(next)) => {
                let range = multiplier_log_range(spec, degree)
                    .map(|(lo, hi)| format!(", multipliers in [{lo:.6}, {hi:.6}]"))
                    .unwrap_or_default();
                eprintln!(
                    "step {index}: {}:{} basis {input_lambda} -> {}{range}",
                    spec.kind,
                    spec.lambda,
                    next.lambda(),
                );
                state = next;
            }
            Ok(OperatorInput::Function(_)) => unreachable!("spectral chain yields series"),
            Err(Error::ChainIncompatible { index: _, reason }) => {
                // steps run one at a time; the loop index is the rung
                eprintln!("error: chain incompatible at step {index}: {reason}");
                return ExitCode::from(EXIT_CHAIN);
            }
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_CHAIN);
            }
        }
    }
    if let Err(e) = write_series(&args.output, &state) {
        return usage_error(&e);
    }
    ExitCode::SUCCESS
}

fn config_value(pairs: &[(&str, Value)]) -> Value {
    let mut map = serde_json::Map::new();
    for (k, v) in pairs {
        map.insert((*k).to_string(), v.clone());
    }
    Value::Object(map)
}

fn cmd_check(args: &CheckArgs) -> ExitCode {
    let (series, kernel, source): (GegenbauerSeries, Option<ZonalFunction>, Value) =
        match (&args.input, &args.model) {
            (Some(path), None) => {
                let s = match read_series(path) {
                    Ok(s) => s,
                    Err(e) => return usage_error(&e),
                };
                (s, None, json!(path.display().to_string()))
            }
            (None, Some(spec)) => {
                let model = match ModelSpec::parse(spec) {
                    Ok(m) => m,
                    Err(e) => return usage_error(&e),
                };
                let lambda = args.lambda.expect("clap enforces --lambda with --model");
                let degree = args.degree.expect("clap enforces --degree with --model");
                let f = model.zonal();
                let s = match project_with_order(&f, lambda, degree, degree + 16) {
                    Ok(s) => s,
                    Err(e) => return usage_error(&e.to_string()),
                };
                (s, Some(f), json!(spec))
            }
            _ => return usage_error("check needs exactly one of --input or --model"),
        };
    let cfg = PdCheckConfig {
        points: args.points,
        seed: args.seed,
        coefficient_tol: args.coeff_tol,
        gram_tol: args.gram_tol,
    };
    let report = match pd_report(&series, kernel.as_ref(), args.dimension, &cfg) {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    let config = config_value(&[
        ("input", source),
        ("lambda", json!(args.lambda)),
        ("degree", json!(args.degree)),
        ("dimension", json!(args.dimension)),
        ("points", json!(args.points)),
        ("seed", json!(args.seed)),
        ("coeffTol", json!(args.coeff_tol)),
        ("gramTol", json!(args.gram_tol)),
    ]);
    let out = json!({ "config": config, "report": report });
    let text = serde_json::to_string_pretty(&out).expect("report serializes");
    println!("{text}");
    if let Some(path) = &args.output {
        if let Err(e) = std::fs::write(path, &text) {
            return usage_error(&format!("could not write {}: {e}", path.display()));
        }
    }
    if report.verdict == Verdict::Inconsistent {
        return ExitCode::from(EXIT_INCONSISTENT);
    }
    ExitCode::SUCCESS
}

fn cmd_curve(args: &CurveArgs) -> ExitCode {
    if args.grid_size < 2 {
        return usage_error("grid size must be at least 2");
    }
    let f = match (&args.input, &args.model) {
        (Some(path), None) => match read_series(path) {
            Ok(s) => ZonalFunction::from_series(&s),
            Err(e) => return usage_error(&e),
        },
        (None, Some(spec)) => match ModelSpec::parse(spec) {
            Ok(m) => m.zonal(),
            Err(e) => return usage_error(&e),
        },
        _ => return usage_error("curve needs exactly one of --input or --model"),
    };
    let mut csv = String::from("x,f\n");
    for i in 0..args.grid_size {
        let x = -1.0 + 2.0 * i as f64 / (args.grid_size - 1) as f64;
        csv.push_str(&format!("{x:.16e},{:.16e}\n", f.eval(x)));
    }
    match &args.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, csv) {
                return usage_error(&format!("could not write {}: {e}", path.display()));
            }
        }
        None => print!("{csv}"),
    }
    ExitCode::SUCCESS
}

fn cmd_verify(args: &VerifyArgs) -> ExitCode {
    let results = verify::run_all(args.only.as_deref());
    if results.is_empty() {
        return usage_error(&format!(
            "no invariant suite matches {:?}; known suites: {}",
            args.only.as_deref().unwrap_or(""),
            verify::check_names().join(", ")
        ));
    }
    let failed: Vec<&str> = results
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.name.as_str())
        .collect();
    if args.json {
        let config = config_value(&[("only", json!(args.only)), ("json", json!(true))]);
        let out = json!({
            "config": config,
            "checks": results,
            "failed": failed,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&out).expect("results serialize")
        );
    } else {
        for r in &results {
            println!(
                "{} {} (max residual {:.3e}, tolerance {:.1e})",
                if r.passed { "PASS" } else { "FAIL" },
                r.name,
                r.max_residual,
                r.tolerance
            );
        }
        println!("{} suites, {} failed", results.len(), failed.len());
    }
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    if let Err(e) = configure_threads() {
        return usage_error(&e);
    }
    let cli = Cli::parse();
    match &cli.command {
        Command::Project(args) => cmd_project(args),
        Command::Apply(args) => cmd_apply(args),
        Command::Check(args) => cmd_check(args),
        Command::Curve(args) => cmd_curve(args),
        Command::Verify(args) => cmd_verify(args),
    }
}
