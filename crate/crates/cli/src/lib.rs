//! Command-line front end for `gf-angular`.
//!
//! Data goes to stdout (or `--output`), diagnostics to stderr. Defaults can
//! come from a flat `key=value` file named by `--config` or
//! `GF_ANGULAR_CONFIG`; keys are long flag names and command-line flags win.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, CommandFactory, Parser, Subcommand};
use gf_angular::frobenius::{bocher_residual, frobenius_coeffs, SeriesSolution};
use gf_angular::harmonics::{eigen_convergence, operator_identity_study, Harmonic, REFINEMENT_LEVELS, THETA_MIN};
use gf_angular::harmonics::Radial;
use gf_angular::special::{general_residual, quantization_a};
use gf_angular::sturm::{orthogonality_matrix, SLProblem};
use gf_angular::symbolic::{symbolic_coefficients, verify_tables};
use gf_angular::{compute_a0, compute_q, reduce_general, Error, GeneralParams, IndicialRoot, PhysicalParams, Solution};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_BRACKET: i32 = 2;
pub const EXIT_INTEGRATION: i32 = 3;
pub const EXIT_DOMAIN: i32 = 4;
pub const EXIT_MISMATCH: i32 = 5;

pub const CONFIG_ENV: &str = "GF_ANGULAR_CONFIG";

#[derive(Parser, Debug, Clone, PartialEq)]
#[command(name = "gf-angular", version, about = "Angular equation of a charged massive scalar on Kerr", args_override_self = true)]
pub struct RunConfig {
    /// Flat key=value file of defaults (also GF_ANGULAR_CONFIG)
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write data here instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for randomized checks
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, PartialEq)]
pub enum Command {
    /// Bôcher coefficients Q0..Q4 (JSON)
    #[command(args_override_self = true)]
    Q(PhysicalArgs),
    /// Frobenius coefficients C_0..C_terms (JSON)
    #[command(args_override_self = true)]
    Coeffs(CoeffsArgs),
    /// Regenerate both coefficient tables and compare exactly (JSON; table on stderr)
    #[command(args_override_self = true)]
    VerifyTables,
    /// Both Frobenius solutions and their residuals on a grid (CSV)
    #[command(args_override_self = true)]
    Solve(SolveArgs),
    /// Quantized values a = -(a0+N)(a0+N+1) (CSV)
    #[command(args_override_self = true)]
    Quantize(QuantizeArgs),
    /// Closed-form solution samples or harmonic samples (CSV)
    #[command(args_override_self = true)]
    Harmonic(HarmonicArgs),
    /// Eigen-relation residuals and operator-identity convergence (JSON)
    #[command(args_override_self = true)]
    WuyangCheck(WuyangArgs),
    /// Eigenvalues by shooting (JSON)
    #[command(args_override_self = true)]
    Eigen(EigenArgs),
    /// Pairwise normalized integrals of eigenfunctions (JSON)
    #[command(args_override_self = true)]
    Ortho(EigenArgs),
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct FieldArgs {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub k: f64,
    /// Reduced field mass μ̃
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub mu: f64,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub m: i64,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub n: i64,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct PhysicalArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub lambda: f64,
}

impl PhysicalArgs {
    pub fn params(&self) -> PhysicalParams<f64> {
        self.field.params(self.lambda)
    }
}

impl FieldArgs {
    pub fn params(&self, lambda: f64) -> PhysicalParams<f64> {
        PhysicalParams::new(self.alpha, self.k, self.mu, self.m, self.n, lambda)
    }
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct CoeffsArgs {
    #[command(flatten)]
    pub physical: PhysicalArgs,
    /// Indicial root (0 or 1)
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(0..=1))]
    pub beta: u32,
    #[arg(long, default_value_t = 8)]
    pub terms: usize,
    /// Exact polynomials in Q0..Q4 instead of numbers
    #[arg(long)]
    pub symbolic: bool,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct SolveArgs {
    #[command(flatten)]
    pub physical: PhysicalArgs,
    /// Root of the S1 column; S2 uses the other one
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(0..=1))]
    pub beta: u32,
    /// start:stop:step, inclusive
    #[arg(long, default_value = "-0.5:0.5:0.1", allow_hyphen_values = true)]
    pub grid: Grid,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct GeneralArgs {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub a: f64,
    /// Coefficient A of z²/(1-z²)
    #[arg(long = "big-a", default_value_t = 0.0, allow_hyphen_values = true)]
    pub big_a: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub b: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub c: f64,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct QuantizeArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub b: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub c: f64,
    #[arg(long = "max-n", default_value_t = 5)]
    pub max_n: usize,
}

#[derive(Args, Debug, Clone, PartialEq)]
#[group(id = "mode", required = true, multiple = false, args = ["closed_form", "sample"])]
pub struct HarmonicArgs {
    #[command(flatten)]
    pub general: GeneralArgs,
    /// Use the quantized solution of this degree (a is then derived from B, C)
    #[arg(long)]
    pub degree: Option<usize>,
    /// Emit z,u,residual over --grid
    #[arg(long = "closed-form")]
    pub closed_form: bool,
    /// Emit phi,theta,re,im over an angular grid
    #[arg(long)]
    pub sample: bool,
    #[arg(long, default_value = "-0.9:0.9:0.1", allow_hyphen_values = true)]
    pub grid: Grid,
    #[arg(long = "n-theta", default_value_t = 9)]
    pub n_theta: usize,
    #[arg(long = "n-phi", default_value_t = 8)]
    pub n_phi: usize,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct WuyangArgs {
    #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
    pub b: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub c: f64,
    #[arg(long, default_value_t = 0)]
    pub degree: usize,
    /// a0 values of the operator-identity study
    #[arg(long, value_delimiter = ',', default_value = "0,0.5,1")]
    pub a0: Vec<f64>,
    /// Random test functions per a0
    #[arg(long, default_value_t = 5)]
    pub count: usize,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct EigenArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// lambda_min:lambda_max
    #[arg(long, allow_hyphen_values = true)]
    pub range: Range,
    #[arg(long)]
    pub count: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts = split_numbers(s, 2)?;
        if !(parts[0] < parts[1]) {
            return Err(format!("expected lo < hi in '{s}'"));
        }
        Ok(Range { lo: parts[0], hi: parts[1] })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let p = split_numbers(s, 3)?;
        if !(p[2] > 0.0) || !(p[0] <= p[1]) {
            return Err(format!("expected start <= stop and step > 0 in '{s}'"));
        }
        Ok(Grid { start: p[0], stop: p[1], step: p[2] })
    }
}

impl Grid {
    /// Inclusive points, rounded to 12 decimals to drop accumulation noise.
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..n).map(|i| ((self.start + i as f64 * self.step) * 1e12).round() / 1e12).collect()
    }
}

fn split_numbers(s: &str, n: usize) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != n {
        return Err(format!("expected {n} ':'-separated numbers, got '{s}'"));
    }
    parts.iter().map(|p| p.trim().parse::<f64>().map_err(|e| format!("'{p}': {e}"))).collect()
}

/// Parse failure: message plus exit code (0 for --help/--version).
#[derive(Debug, Clone, PartialEq)]
pub struct UsageError {
    pub message: String,
    pub code: i32,
}

const GLOBAL_VALUE_FLAGS: [&str; 3] = ["config", "output", "seed"];

/// `--key value` pairs from a flat `key=value` text; `#` starts a comment.
fn config_pairs(text: &str) -> Result<Vec<(String, String)>, UsageError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(UsageError { message: format!("config line {}: expected key=value", i + 1), code: EXIT_USAGE });
        };
        out.push((k.trim().trim_start_matches("--").to_string(), v.trim().to_string()));
    }
    Ok(out)
}

/// Builds a [`RunConfig`] from `argv` (program name first) and optional
/// config-file text. Config values are inserted ahead of the user's flags,
/// so the flags override them.
pub fn parse_config<I, S>(argv: I, config: Option<&str>) -> Result<RunConfig, UsageError>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let mut args: Vec<String> = argv.into_iter().map(Into::into).collect();
    if let Some(text) = config {
        let pairs = config_pairs(text)?;
        let root = RunConfig::command();
        // locate the subcommand token, skipping global flags and their values
        let mut i = 1;
        while i < args.len() {
            let a = &args[i];
            if GLOBAL_VALUE_FLAGS.iter().any(|g| a == &format!("--{g}")) {
                i += 2;
            } else if a.starts_with('-') {
                i += 1;
            } else {
                break;
            }
        }
        let sub = args.get(i).and_then(|name| root.find_subcommand(name).cloned());
        let mut global_args = Vec::new();
        let mut sub_args = Vec::new();
        for (key, value) in pairs {
            if key == "config" {
                continue;
            }
            if GLOBAL_VALUE_FLAGS.contains(&key.as_str()) {
                global_args.push(format!("--{key}={value}"));
                continue;
            }
            let known = root.get_subcommands().any(|c| c.get_arguments().any(|a| a.get_long() == Some(key.as_str())));
            if !known {
                return Err(UsageError { message: format!("unknown config key '{key}'"), code: EXIT_USAGE });
            }
            let Some(sub) = &sub else { continue };
            let Some(arg) = sub.get_arguments().find(|a| a.get_long() == Some(key.as_str())) else {
                continue;
            };
            if arg.get_action().takes_values() {
                sub_args.push(format!("--{key}={value}"));
            } else if matches!(value.as_str(), "true" | "1" | "yes") {
                sub_args.push(format!("--{key}"));
            }
        }
        if sub.is_some() {
            args.splice(i + 1..i + 1, sub_args);
        }
        args.splice(1..1, global_args);
    }
    RunConfig::try_parse_from(args).map_err(|e| UsageError {
        message: e.render().to_string(),
        code: if e.use_stderr() { EXIT_USAGE } else { EXIT_OK },
    })
}

/// Locates the config path: `--config` in `argv`, else the environment variable.
pub fn config_path(argv: &[String]) -> Option<PathBuf> {
    for (i, a) in argv.iter().enumerate() {
        if a == "--config" {
            return argv.get(i + 1).map(PathBuf::from);
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(PathBuf::from(p));
        }
    }
    std::env::var_os(CONFIG_ENV).map(PathBuf::from)
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Bracket { .. } => EXIT_BRACKET,
        Error::Integration(_) => EXIT_INTEGRATION,
        Error::Domain(_) | Error::Consistency(_) => EXIT_DOMAIN,
    }
}

/// JSON number: integral values print without a fraction, others use the
/// shortest representation that round-trips.
fn num(x: f64) -> Value {
    if x.is_finite() && x.fract() == 0.0 && x.abs() < 9.007_199_254_740_992e15 {
        Value::from(x as i64)
    } else {
        Value::from(x)
    }
}

/// Applies [`num`] to every float in `v`.
fn normalize(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => num(n.as_f64().unwrap_or(f64::NAN)),
        Value::Array(a) => Value::Array(a.into_iter().map(normalize).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, normalize(v))).collect()),
        other => other,
    }
}

fn to_json(v: impl serde::Serialize) -> Value {
    normalize(serde_json::to_value(v).expect("plain data serializes"))
}

/// CSV field: shortest round-trip form with a decimal point.
fn csv(x: f64) -> String {
    format!("{x:?}")
}

struct Emitted {
    data: String,
    diagnostics: String,
    code: i32,
}

fn emitted(data: String) -> Emitted {
    Emitted { data, diagnostics: String::new(), code: EXIT_OK }
}

fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("json");
    s.push('\n');
    s
}

fn execute(cfg: &RunConfig) -> gf_angular::Result<Emitted> {
    match &cfg.command {
        Command::Q(p) => {
            let q = compute_q(&p.params());
            Ok(emitted(json_line(&json!({ "Q": q.0.iter().map(|&x| num(x)).collect::<Vec<_>>() }))))
        }
        Command::Coeffs(a) => {
            let beta = IndicialRoot::from_value(a.beta).expect("validated by clap");
            let v = if a.symbolic {
                let c: Vec<String> = symbolic_coefficients(beta, a.terms).iter().map(|p| p.to_string()).collect();
                json!({ "beta": a.beta, "C": c })
            } else {
                let s = frobenius_coeffs(&compute_q(&a.physical.params()), beta, a.terms);
                json!({ "beta": a.beta, "C": s.coeffs.iter().map(|&x| num(x)).collect::<Vec<_>>() })
            };
            Ok(emitted(json_line(&v)))
        }
        Command::VerifyTables => {
            let report = verify_tables();
            Ok(Emitted {
                data: json_line(&to_json(&report)),
                diagnostics: report.to_table_string(),
                code: if report.all_pass() { EXIT_OK } else { EXIT_MISMATCH },
            })
        }
        Command::Solve(a) => {
            let p = a.physical.params();
            let q = compute_q(&p);
            let first = IndicialRoot::from_value(a.beta).expect("validated by clap");
            let s1 = SeriesSolution::adaptive(&q, first);
            let s2 = SeriesSolution::adaptive(&q, first.other());
            let mut out = String::from("z,S1,S2,res1,res2\n");
            for z in a.grid.points() {
                let (v1, v2) = (s1.jet(z)?.value, s2.jet(z)?.value);
                let (r1, r2) = (bocher_residual(&q, &s1, z)?, bocher_residual(&q, &s2, z)?);
                writeln!(out, "{},{},{},{},{}", csv(z), csv(v1), csv(v2), csv(r1), csv(r2)).expect("string write");
            }
            Ok(emitted(out))
        }
        Command::Quantize(a) => {
            let a0 = compute_a0(a.b, a.c)?;
            let mut out = String::from("N,a\n");
            for n in 0..=a.max_n {
                writeln!(out, "{n},{}", csv(quantization_a(a0, n))).expect("string write");
            }
            Ok(emitted(out))
        }
        Command::Harmonic(a) => harmonic(a),
        Command::WuyangCheck(a) => {
            let h = Harmonic::quantized(a.b, a.c, a.degree)?;
            let eigen = eigen_convergence(&h, &REFINEMENT_LEVELS)?;
            let identity = operator_identity_study(&a.a0, a.count, cfg.seed, &REFINEMENT_LEVELS)?;
            let orders: Vec<f64> = identity.iter().flat_map(|s| s.orders.iter().copied()).collect();
            let lo = orders.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = orders.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let v = json!({
                "harmonic": { "a0": h.a0, "C": h.c, "a": h.a, "degree": a.degree },
                "eigen": to_json(&eigen),
                "identity": to_json(&identity),
                "identity_order_range": [num(lo), num(hi)],
            });
            Ok(emitted(json_line(&normalize(v))))
        }
        Command::Eigen(a) => {
            let prob = SLProblem::new(&a.field.params(0.0))?;
            let scan = prob.scan_eigenvalues(a.range.lo, a.range.hi, a.count)?;
            let list: Vec<Value> = scan
                .eigenpairs
                .iter()
                .map(|r| {
                    json!({ "l_index": r.l_index, "lambda": num(r.lambda), "nodes": r.node_count, "residual": num(r.residual) })
                })
                .collect();
            let mut diagnostics = String::new();
            for w in &scan.warnings {
                writeln!(diagnostics, "warning: {w}").expect("string write");
            }
            Ok(Emitted { data: json_line(&Value::Array(list)), diagnostics, code: EXIT_OK })
        }
        Command::Ortho(a) => {
            let prob = SLProblem::new(&a.field.params(0.0))?;
            let scan = prob.scan_eigenvalues(a.range.lo, a.range.hi, Some(a.count.unwrap_or(3)))?;
            let lambdas: Vec<f64> = scan.eigenpairs.iter().map(|r| r.lambda).collect();
            let m = orthogonality_matrix(&prob, &lambdas)?;
            Ok(emitted(json_line(&to_json(json!({ "lambda": lambdas, "matrix": m })))))
        }
    }
}

fn harmonic(a: &HarmonicArgs) -> gf_angular::Result<Emitted> {
    let g = reduce_general(&GeneralParams::new(a.general.a, a.general.big_a, a.general.b, a.general.c));
    let h = match a.degree {
        Some(n) => Harmonic::quantized(g.b, g.c, n)?,
        None => Harmonic::generic(&g)?,
    };
    let mut out = String::new();
    if a.closed_form {
        let g = GeneralParams::reduced(h.a, g.b, g.c);
        out.push_str("z,u,residual\n");
        for z in a.grid.points() {
            let (u, r) = match &h.radial {
                Radial::Jacobi(q) => (q.value(z)?, general_residual(&g, q, z)?),
                Radial::Hypergeometric(s) => (s.value(z)?, general_residual(&g, s, z)?),
            };
            writeln!(out, "{},{},{}", csv(z), csv(u), csv(r)).expect("string write");
        }
    } else {
        out.push_str("phi,theta,re,im\n");
        let theta_min = THETA_MIN;
        let n_theta = a.n_theta.max(2);
        let h_theta = (std::f64::consts::PI - 2.0 * theta_min) / (n_theta - 1) as f64;
        for j in 0..n_theta {
            let theta = theta_min + j as f64 * h_theta;
            for k in 0..a.n_phi {
                let phi = std::f64::consts::TAU * k as f64 / a.n_phi as f64;
                let z = h.eval_z(phi, theta)?;
                writeln!(out, "{},{},{},{}", csv(phi), csv(theta), csv(z.re), csv(z.im)).expect("string write");
            }
        }
    }
    Ok(emitted(out))
}

/// Runs one invocation, writing data to `--output` or `stdout` and
/// diagnostics to `stderr`. Returns the process exit code.
pub fn run(cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = execute(cfg);
    let e = match result {
        Ok(e) => e,
        Err(err) => {
            let _ = writeln!(stderr, "error: {err}");
            return exit_code(&err);
        }
    };
    let _ = stderr.write_all(e.diagnostics.as_bytes());
    let written = match &cfg.output {
        Some(path) => std::fs::write(path, &e.data),
        None => stdout.write_all(e.data.as_bytes()),
    };
    if let Err(err) = written {
        let _ = writeln!(stderr, "error: writing output: {err}");
        return EXIT_USAGE;
    }
    e.code
}
