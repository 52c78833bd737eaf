use std::f64::consts::PI;
use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use su2_plane::basis::{harmonic, radial, PlanePoint, SpinIndex};
use su2_plane::laguerre::{laguerre_eval, LaguerreIndex};
use su2_plane::quadrature::gauss_laguerre;
use su2_plane::transform::{analyze, rotate, synthesize, CoefficientBlock, RotationSpec};
use su2_plane::verify::{run_suite, Suite, VerifyOptions};

/// Largest round-trip error the `transform roundtrip` command accepts.
const ROUNDTRIP_TOLERANCE: f64 = 1e-8;

#[derive(Parser)]
#[command(name = "su2plane", version, about = "Laguerre plane harmonics and their SU(2) action")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate a Laguerre polynomial, a radial function or a plane harmonic on a grid.
    Eval(EvalArgs),
    /// Run verification suites and report each check.
    Verify(VerifyArgs),
    /// Synthesize a coefficient block on a grid, or analyze it back and report the error.
    Transform(TransformArgs),
    /// Rotate a coefficient block by z-y-z Euler angles.
    Rotate(RotateArgs),
    /// Print Gauss-Laguerre nodes and weights.
    Quadrature(QuadratureArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Laguerre,
    #[value(name = "calL")]
    CalL,
    #[value(name = "calZ")]
    CalZ,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TransformMode {
    Synthesize,
    Roundtrip,
}

#[derive(Args)]
struct Grid {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    y_min: f64,
    #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
    y_max: f64,
    #[arg(long, default_value_t = 11)]
    y_steps: usize,
    /// Points on [-pi, pi]; a single point means phi = 0.
    #[arg(long, default_value_t = 1)]
    phi_steps: usize,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, value_enum)]
    what: What,
    #[arg(long, allow_negative_numbers = true)]
    n: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    two_j: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    two_m: Option<i64>,
    #[command(flatten)]
    grid: Grid,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    /// Largest j checked, e.g. 4 or 7/2.
    #[arg(long, default_value = "8")]
    j_max: String,
    /// Threshold override, ID=VALUE; may be repeated.
    #[arg(long = "tol")]
    tol: Vec<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct TransformArgs {
    /// Coefficient block JSON; standard input when absent.
    #[arg(long = "in")]
    input: Option<String>,
    #[arg(long, value_enum, default_value = "roundtrip")]
    mode: TransformMode,
    #[command(flatten)]
    grid: Grid,
    #[arg(long, value_enum, default_value = "json")]
    format: TableFormat,
}

#[derive(Args)]
struct RotateArgs {
    #[arg(long = "in")]
    input: Option<String>,
    /// Euler angles a,b,c in radians.
    #[arg(long, allow_hyphen_values = true)]
    euler: String,
}

#[derive(Args)]
struct QuadratureArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
}

/// A failure that ends the process: usage errors exit 2, failed checks exit 1.
enum Failure {
    Usage(String),
    Check,
}

impl From<su2_plane::Error> for Failure {
    fn from(e: su2_plane::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            emit(&e.to_string());
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            eprintln!("{line}");
            return ExitCode::from(2);
        }
    };
    let result = match cli.command {
        Command::Eval(args) => cmd_eval(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Transform(args) => cmd_transform(&args),
        Command::Rotate(args) => cmd_rotate(&args),
        Command::Quadrature(args) => cmd_quadrature(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {}", msg.lines().next().unwrap_or(""));
            ExitCode::from(2)
        }
    }
}

/// Writes to standard output; a closed pipe is not an error worth reporting.
fn emit(text: &str) {
    let _ = io::stdout().lock().write_all(text.as_bytes());
}

fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    match steps {
        1 => vec![lo],
        _ => (0..steps).map(|k| lo + (hi - lo) * k as f64 / (steps - 1) as f64).collect(),
    }
}

impl Grid {
    fn ys(&self) -> Result<Vec<f64>, Failure> {
        if self.y_steps == 0 {
            return usage("--y-steps must be at least 1");
        }
        if !(self.y_min.is_finite() && self.y_max.is_finite() && self.y_min >= 0.0 && self.y_min <= self.y_max) {
            return usage("the y range must satisfy 0 <= y-min <= y-max");
        }
        Ok(linspace(self.y_min, self.y_max, self.y_steps))
    }

    fn phis(&self) -> Result<Vec<f64>, Failure> {
        match self.phi_steps {
            0 => usage("--phi-steps must be at least 1"),
            1 => Ok(vec![0.0]),
            n => Ok(linspace(-PI, PI, n)),
        }
    }

    fn points(&self) -> Result<Vec<PlanePoint>, Failure> {
        let phis = self.phis()?;
        let mut out = Vec::new();
        for y in self.ys()? {
            for &phi in &phis {
                out.push(PlanePoint::new(y, phi)?);
            }
        }
        Ok(out)
    }
}

fn spin(two_j: Option<i64>, two_m: Option<i64>) -> Result<SpinIndex, Failure> {
    match (two_j, two_m) {
        (Some(j), Some(m)) => Ok(SpinIndex::new(j, m)?),
        _ => usage("--two-j and --two-m are required"),
    }
}

/// Rows of `(y, phi, re, im)`.
fn print_table(rows: &[(f64, f64, Complex64)], with_phi: bool, complex: bool, format: TableFormat) {
    let mut out = String::new();
    match format {
        TableFormat::Csv => {
            let mut header = vec!["y"];
            if with_phi {
                header.push("phi");
            }
            header.extend(if complex { ["re", "im"].as_slice() } else { ["value"].as_slice() });
            out.push_str(&header.join(","));
            out.push('\n');
            for (y, phi, v) in rows {
                let mut cells = vec![format!("{y}")];
                if with_phi {
                    cells.push(format!("{phi}"));
                }
                cells.push(format!("{:e}", v.re));
                if complex {
                    cells.push(format!("{:e}", v.im));
                }
                out.push_str(&cells.join(","));
                out.push('\n');
            }
        }
        TableFormat::Json => {
            let rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|(y, phi, v)| {
                    let mut row = serde_json::Map::new();
                    row.insert("y".into(), (*y).into());
                    if with_phi {
                        row.insert("phi".into(), (*phi).into());
                    }
                    if complex {
                        row.insert("re".into(), v.re.into());
                        row.insert("im".into(), v.im.into());
                    } else {
                        row.insert("value".into(), v.re.into());
                    }
                    serde_json::Value::Object(row)
                })
                .collect();
            out = serde_json::to_string_pretty(&rows).expect("plain data serializes") + "\n";
        }
    }
    emit(&out);
}

fn cmd_eval(args: &EvalArgs) -> Result<(), Failure> {
    let mut rows = Vec::new();
    match args.what {
        What::Laguerre => {
            let (Some(n), Some(alpha)) = (args.n, args.alpha) else {
                return usage("--n and --alpha are required for laguerre");
            };
            let idx = LaguerreIndex::new(n, alpha)?;
            for y in args.grid.ys()? {
                rows.push((y, 0.0, Complex64::new(laguerre_eval(idx, y), 0.0)));
            }
        }
        What::CalL => {
            let s = spin(args.two_j, args.two_m)?;
            for y in args.grid.ys()? {
                rows.push((y, 0.0, Complex64::new(radial(s, y)?, 0.0)));
            }
        }
        What::CalZ => {
            let s = spin(args.two_j, args.two_m)?;
            for p in args.grid.points()? {
                rows.push((p.y, p.phi, harmonic(s, p)?));
            }
        }
    }
    let is_plane = args.what == What::CalZ;
    print_table(&rows, is_plane, is_plane, args.format);
    Ok(())
}

/// `"4"` or `"7/2"` as `2j`.
fn parse_two_j(text: &str) -> Result<u32, Failure> {
    let bad = || Failure::Usage(format!("--j-max {text:?} is not a non-negative integer or half-integer"));
    let t = text.trim();
    match t.strip_suffix("/2") {
        Some(num) => {
            let v: u32 = num.parse().map_err(|_| bad())?;
            if v.is_multiple_of(2) {
                return Err(bad());
            }
            Ok(v)
        }
        None => t.parse::<u32>().ok().and_then(|v| v.checked_mul(2)).ok_or_else(bad),
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let suite: Suite = args.suite.parse()?;
    let mut opts = VerifyOptions { two_j_max: parse_two_j(&args.j_max)?, seed: args.seed, ..Default::default() };
    for entry in &args.tol {
        let Some((id, value)) = entry.split_once('=') else {
            return usage(format!("--tol {entry:?} is not ID=VALUE"));
        };
        let value: f64 = value.parse().map_err(|_| Failure::Usage(format!("--tol value {value:?} is not a number")))?;
        opts = opts.with_override(id, value)?;
    }
    let report = run_suite(suite, &opts)?;
    match args.format {
        ReportFormat::Text => emit(&format!("{}\n", report.to_text())),
        ReportFormat::Json => emit(&format!("{}\n", report.to_json())),
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn read_block(input: &Option<String>) -> Result<CoefficientBlock, Failure> {
    let text = match input {
        Some(path) => fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?,
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Usage(format!("cannot read standard input: {e}")))?;
            s
        }
    };
    Ok(CoefficientBlock::from_json_str(&text)?)
}

fn cmd_transform(args: &TransformArgs) -> Result<(), Failure> {
    let block = read_block(&args.input)?;
    match args.mode {
        TransformMode::Synthesize => {
            let rows: Vec<_> =
                args.grid.points()?.into_iter().map(|p| (p.y, p.phi, synthesize(&block, p))).collect();
            print_table(&rows, true, true, args.format);
            Ok(())
        }
        TransformMode::Roundtrip => {
            let back = analyze(&block, block.sector(), block.two_j_max())?;
            let error = back.max_abs_diff(&block);
            let out = serde_json::json!({
                "max_error": error,
                "tolerance": ROUNDTRIP_TOLERANCE,
                "block": back.to_json(),
            });
            emit(&format!("{}\n", serde_json::to_string_pretty(&out).expect("plain data serializes")));
            if error <= ROUNDTRIP_TOLERANCE {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
    }
}

fn parse_euler(text: &str) -> Result<RotationSpec, Failure> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Usage(format!("--euler {text:?} is not three comma-separated numbers")))?;
    let [a, b, c] = parts[..] else {
        return usage(format!("--euler {text:?} needs exactly three angles"));
    };
    Ok(RotationSpec::new(a, b, c)?)
}

fn cmd_rotate(args: &RotateArgs) -> Result<(), Failure> {
    let r = parse_euler(&args.euler)?;
    let block = read_block(&args.input)?;
    emit(&format!("{}\n", rotate(&block, &r)?.to_json_string()));
    Ok(())
}

fn cmd_quadrature(args: &QuadratureArgs) -> Result<(), Failure> {
    let rule = gauss_laguerre(args.n, args.alpha)?;
    match args.format {
        TableFormat::Csv => emit(&rule.to_csv()),
        TableFormat::Json => {
            let pairs: Vec<_> = rule.pairs().map(|(x, w)| serde_json::json!({"node": x, "weight": w})).collect();
            emit(&format!("{}\n", serde_json::to_string_pretty(&pairs).expect("plain data serializes")));
        }
    }
    Ok(())
}
