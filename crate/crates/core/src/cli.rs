//! The `zonalval` command line: `transform`, `eval`, `verify` and `constants`.
//!
//! Settings resolve as command-line flag, then `--config` JSON file, then
//! built-in default.

use crate::bodies::RevolutionBody;
use crate::error::{Error, Result};
use crate::integral_geometry::{a_nj, agr_constant, c_nj};
use crate::kernel::ZonalKernel;
use crate::special::{kappa, omega};
use crate::transforms::{pi_ball, pi_disk, q_ab, r_ab, t_alpha, t_alpha_inv};
use crate::valuations::{eval, eval_method, RepKind, Representation, ValuationSpec};
use crate::verify::{run_suite, Suite, VerifyOptions, DEFAULT_SAMPLES, DEFAULT_SEED};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Environment variable capping the worker thread count (`0` = automatic).
pub const THREADS_ENV: &str = "ZONALVAL_THREADS";

/// Default number of grid points for `transform`.
pub const DEFAULT_GRID: usize = 101;

#[derive(Debug, Parser)]
#[command(name = "zonalval", version, about = "Zonal valuations on bodies of revolution")]
struct Cli {
    /// JSON file with default settings; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply a kernel transform on a grid of [-1, 1] and emit `t,value`.
    Transform(TransformArgs),
    /// Evaluate a zonal valuation on a body.
    Eval(EvalArgs),
    /// Run a verification suite and emit a JSON report.
    Verify(VerifyArgs),
    /// Emit the normalizing constants for dimension n.
    Constants(ConstantsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
enum Op {
    #[value(name = "T")]
    #[serde(rename = "T")]
    T,
    #[value(name = "Tinv")]
    #[serde(rename = "Tinv")]
    Tinv,
    #[value(name = "R")]
    #[serde(rename = "R")]
    R,
    #[value(name = "Q")]
    #[serde(rename = "Q")]
    Q,
    #[value(name = "piBall")]
    #[serde(rename = "piBall")]
    PiBall,
    #[value(name = "piDisk")]
    #[serde(rename = "piDisk")]
    PiDisk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct TransformArgs {
    #[arg(long, value_enum)]
    op: Option<Op>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    /// Kernel name (`const:c`, `poly:c0,c1,..`, `cos`, `exp`, `power-sing:g`, `csv:path`).
    #[arg(long)]
    kernel: Option<String>,
    /// Number of evenly spaced points of [-1, 1].
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EvalArgs {
    /// Valuation spec as JSON text or a path to a JSON file.
    #[arg(long)]
    spec: Option<String>,
    /// Body as JSON text or a path to a JSON file.
    #[arg(long)]
    body: Option<String>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    i: Option<u32>,
    #[arg(long, value_enum)]
    rep: Option<RepArg>,
    #[arg(long)]
    kernel: Option<String>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum RepArg {
    Ball,
    Disk,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    suite: Option<String>,
    /// Overrides every per-case tolerance of the suite.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ConstantsArgs {
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Settings that may come from a `--config` file.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    op: Option<Op>,
    alpha: Option<f64>,
    a: Option<f64>,
    b: Option<f64>,
    n: Option<u32>,
    i: Option<u32>,
    rep: Option<RepArg>,
    kernel: Option<String>,
    spec: Option<String>,
    body: Option<String>,
    grid: Option<usize>,
    format: Option<Format>,
    tol: Option<f64>,
    samples: Option<usize>,
    seed: Option<u64>,
    suite: Option<String>,
    output: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }
}

/// Failure carrying its process exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, err: impl std::fmt::Display) -> Self {
        Self { code, message: err.to_string() }
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    configure_threads();
    let config = match &cli.config {
        Some(p) => match RunConfig::load(p) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: config {}: {e}", p.display());
                return 2;
            }
        },
        None => RunConfig::default(),
    };
    let result = match cli.command {
        Command::Transform(a) => cmd_transform(a, &config),
        Command::Eval(a) => cmd_eval(a, &config),
        Command::Verify(a) => cmd_verify(a, &config),
        Command::Constants(a) => cmd_constants(a, &config),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn configure_threads() {
    let Ok(raw) = std::env::var(THREADS_ENV) else { return };
    match raw.trim().parse::<usize>() {
        Ok(0) => {}
        Ok(n) => {
            // a pool may already exist when embedded in tests
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        Err(_) => eprintln!("warning: ignoring {THREADS_ENV}={raw}"),
    }
}

fn write_output(path: Option<&Path>, text: &str) -> std::result::Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::new(1, format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| Failure::new(1, e))
        }
    }
}

fn require<T>(v: Option<T>, flag: &str) -> std::result::Result<T, Failure> {
    v.ok_or_else(|| Failure::new(2, format!("missing --{flag}")))
}

/// Evenly spaced points of `[-1, 1]`, endpoints included.
pub fn grid_points(count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![0.0];
    }
    let m = (count - 1) as f64;
    (0..count)
        .map(|k| {
            if 2 * k + 1 == count {
                0.0
            } else {
                -1.0 + 2.0 * k as f64 / m
            }
        })
        .collect()
}

/// `t,value` table with 17 significant digits and LF line endings.
pub fn format_csv(rows: &[(f64, f64)]) -> String {
    let mut s = String::from("t,value\n");
    for (t, v) in rows {
        s.push_str(&format!("{t:.16e},{v:.16e}\n"));
    }
    s
}

fn cmd_transform(args: TransformArgs, cfg: &RunConfig) -> CmdResult {
    let op = require(args.op.or(cfg.op), "op")?;
    let kernel_name = require(args.kernel.or_else(|| cfg.kernel.clone()), "kernel")?;
    let grid = args.grid.or(cfg.grid).unwrap_or(DEFAULT_GRID);
    let format = args.format.or(cfg.format).unwrap_or(Format::Csv);
    let output = args.output.or_else(|| cfg.output.clone());
    if grid < 2 {
        return Err(Failure::new(2, "--grid must be at least 2"));
    }
    let kernel = ZonalKernel::parse(&kernel_name).map_err(|e| Failure::new(2, e))?;
    let alpha = args.alpha.or(cfg.alpha);
    let (a, b) = (args.a.or(cfg.a), args.b.or(cfg.b));
    let result = match op {
        Op::T => t_alpha(&kernel, require(alpha, "alpha")?),
        Op::Tinv => t_alpha_inv(&kernel, require(alpha, "alpha")?),
        Op::R => r_ab(&kernel, require(a, "a")?, require(b, "b")?),
        Op::Q => q_ab(&kernel, require(a, "a")?, require(b, "b")?),
        Op::PiBall => pi_ball(&kernel, require(alpha, "alpha")?),
        Op::PiDisk => pi_disk(&kernel, require(alpha, "alpha")?),
    };
    let out = result.map_err(|e| Failure::new(3, e))?;
    let rows: Vec<(f64, f64)> = grid_points(grid)
        .into_iter()
        .filter(|t| op != Op::Tinv || t.abs() < 1.0)
        .map(|t| (t, out.eval(t)))
        .collect();
    let text = match format {
        Format::Csv => format_csv(&rows),
        Format::Json => {
            let (t, value): (Vec<f64>, Vec<f64>) = rows.into_iter().unzip();
            let v = json!({"kernel": out.name(), "t": t, "value": value});
            serde_json::to_string_pretty(&v).map_err(|e| Failure::new(1, e))? + "\n"
        }
    };
    write_output(output.as_deref(), &text)?;
    Ok(0)
}

fn cmd_eval(args: EvalArgs, cfg: &RunConfig) -> CmdResult {
    let parse = |e: Error| Failure::new(2, e);
    let spec_src = args.spec.or_else(|| cfg.spec.clone());
    let spec = match spec_src {
        Some(src) => ValuationSpec::load(&src).map_err(parse)?,
        None => {
            let n = require(args.n.or(cfg.n), "n")?;
            let i = require(args.i.or(cfg.i), "i")?;
            let kernel = ZonalKernel::parse(&require(args.kernel.or_else(|| cfg.kernel.clone()), "kernel")?).map_err(parse)?;
            let rep = match args.rep.or(cfg.rep).unwrap_or(RepArg::Disk) {
                RepArg::Ball => Representation::Ball(kernel),
                RepArg::Disk => Representation::Disk(kernel),
            };
            ValuationSpec::new(n, i, rep).map_err(parse)?
        }
    };
    let body_src = require(args.body.or_else(|| cfg.body.clone()), "body")?;
    let body = RevolutionBody::load(&body_src).map_err(parse)?;
    let value = eval(&spec, &body).map_err(|e| Failure::new(3, e))?;
    let report = json!({
        "value": value,
        "representation": match spec.kind() { RepKind::Ball => "ball", RepKind::Disk => "disk" },
        "n": spec.n(),
        "i": spec.i(),
        "kernel": spec.kernel().name(),
        "method": eval_method(&spec, &body),
        "body": body.to_json(),
    });
    let text = serde_json::to_string_pretty(&report).map_err(|e| Failure::new(1, e))? + "\n";
    write_output(args.output.or_else(|| cfg.output.clone()).as_deref(), &text)?;
    Ok(0)
}

fn cmd_verify(args: VerifyArgs, cfg: &RunConfig) -> CmdResult {
    let name = require(args.suite.or_else(|| cfg.suite.clone()), "suite")?;
    let suite: Suite = name.parse().map_err(|e| Failure::new(2, e))?;
    let opts = VerifyOptions {
        tol: args.tol.or(cfg.tol),
        samples: args.samples.or(cfg.samples).unwrap_or(DEFAULT_SAMPLES),
        seed: args.seed.or(cfg.seed).unwrap_or(DEFAULT_SEED),
    };
    let report = run_suite(suite, &opts).map_err(|e| Failure::new(2, e))?;
    write_output(args.output.or_else(|| cfg.output.clone()).as_deref(), &(report.to_json() + "\n"))?;
    let failed = report.failures().count();
    eprintln!(
        "{}: {} of {} cases passed, max_rel_err {:e}",
        report.suite,
        report.cases.len() - failed,
        report.cases.len(),
        report.max_rel_err
    );
    Ok(if failed == 0 { 0 } else { 1 })
}

/// Constant tables for dimension `n`.
pub fn constants_json(n: u32) -> Result<serde_json::Value> {
    if !(2..=64).contains(&n) {
        return Err(Error::param(format!("constants need 2 <= n <= 64, got {n}")));
    }
    let kap: Vec<f64> = (0..=n + 1).map(kappa).collect();
    let om: Vec<f64> = (0..=n + 1).map(omega).collect();
    let mut a = Vec::new();
    let mut c = Vec::new();
    for j in 1..n {
        a.push(json!({"j": j, "value": a_nj(n, j)?}));
        c.push(json!({"j": j, "value": c_nj(n, j)?}));
    }
    let mut agr = Vec::new();
    for j in 0..=n {
        for k in n - j..=n {
            agr.push(json!({"j": j, "k": k, "value": agr_constant(n, j, k)?}));
        }
    }
    Ok(json!({"n": n, "kappa": kap, "omega": om, "a_nj": a, "c_nj": c, "agr": agr}))
}

fn cmd_constants(args: ConstantsArgs, cfg: &RunConfig) -> CmdResult {
    let n = args.n.or(cfg.n).unwrap_or(3);
    let v = constants_json(n).map_err(|e| Failure::new(2, e))?;
    let text = serde_json::to_string_pretty(&v).map_err(|e| Failure::new(1, e))? + "\n";
    write_output(args.output.or_else(|| cfg.output.clone()).as_deref(), &text)?;
    Ok(0)
}
