//! Command-line front end: `eval`, `sweep` and `verify`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::eval::{eval_ilhi, eval_toronto, EvalOptions, EvalResult, Method};
use crate::ilhi::IlhiParams;
use crate::quadrature::QuadSpec;
use crate::toronto::{SeriesControl, TorontoParams};
use crate::verify::{run_verify, verification_quad, Scope, VerifyGrid, DEFAULT_TOLERANCE};

pub const TOLERANCE_ENV: &str = "TORONTO_ILHI_TOL";

const EXIT_FAILURE: i32 = 1;
const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "toronto-ilhi",
    version,
    about = "Incomplete Toronto function and incomplete Lipschitz-Hankel integrals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one point.
    Eval(EvalArgs),
    /// Evaluate a one-dimensional grid and write CSV.
    Sweep(SweepArgs),
    /// Check every representation against the quadrature oracle on a grid.
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Function {
    Toronto,
    Ilhi,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum VerifyScope {
    All,
    Toronto,
    Ilhi,
}

#[derive(Args, Debug, Clone)]
struct Point {
    #[arg(long)]
    m: Option<f64>,
    #[arg(long)]
    n: Option<f64>,
    #[arg(long)]
    r: Option<f64>,
    /// Upper limit of the Toronto integral.
    #[arg(long = "B")]
    b: Option<f64>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    z: Option<f64>,
}

#[derive(Args, Debug)]
struct Truncation {
    /// Series truncation tolerance, also the oracle's relative tolerance.
    #[arg(long = "rel-tol")]
    rel_tol: Option<f64>,
    /// Series term cap.
    #[arg(long = "max-terms")]
    max_terms: Option<usize>,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(value_enum)]
    function: Function,
    #[command(flatten)]
    point: Point,
    /// closed, series3, series4, lower, upper or oracle; closed form with oracle fallback if omitted.
    #[arg(long)]
    method: Option<String>,
    #[command(flatten)]
    truncation: Truncation,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(value_enum)]
    function: Function,
    #[command(flatten)]
    point: Point,
    /// Swept parameter: m, n, r or B for toronto; m, n, a or z for ilhi.
    #[arg(long)]
    var: String,
    #[arg(long)]
    start: f64,
    #[arg(long)]
    stop: f64,
    #[arg(long)]
    step: f64,
    /// Comma-separated methods, each optionally pinned to an order as `name@n`.
    #[arg(long, value_delimiter = ',', required = true)]
    method: Vec<String>,
    #[command(flatten)]
    truncation: Truncation,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum, default_value = "all")]
    scope: VerifyScope,
    /// Replace the m axis (comma-separated).
    #[arg(long, value_delimiter = ',')]
    m: Vec<f64>,
    /// Replace the order axis; half-odd values feed the agreement checks, others the sandwich.
    #[arg(long, value_delimiter = ',')]
    n: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    r: Vec<f64>,
    #[arg(long = "B", value_delimiter = ',')]
    b: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    a: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    z: Vec<f64>,
    /// Closed form versus oracle tolerance (overrides TORONTO_ILHI_TOL).
    #[arg(long = "rel-tol")]
    rel_tol: Option<f64>,
}

/// Failure of a command, carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_domain() {
            EXIT_USAGE
        } else {
            EXIT_FAILURE
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_FAILURE,
        message: format!("write failed: {e}"),
    }
}

/// Runs the CLI on `args` (program name first) and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Eval(args) => cmd_eval(args, out, err),
        Command::Sweep(args) => cmd_sweep(args, out),
        Command::Verify(args) => cmd_verify(args, out),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn options(t: &Truncation) -> Result<EvalOptions> {
    let mut opts = EvalOptions::default();
    if t.rel_tol.is_some() || t.max_terms.is_some() {
        opts.series = SeriesControl::new(
            t.rel_tol.unwrap_or(opts.series.rel_tol()),
            t.max_terms.unwrap_or(opts.series.max_terms()),
        )?;
    }
    if let Some(tol) = t.rel_tol {
        opts.quad = QuadSpec::new(opts.quad.abs_tol, tol, opts.quad.max_subdivisions)?;
    }
    Ok(opts)
}

fn need(value: Option<f64>, flag: &str, function: Function) -> std::result::Result<f64, Failure> {
    value.ok_or_else(|| {
        let name = match function {
            Function::Toronto => "toronto",
            Function::Ilhi => "ilhi",
        };
        usage(format!("{name} needs --{flag}"))
    })
}

fn evaluate(
    function: Function,
    point: &Point,
    method: Option<Method>,
    opts: &EvalOptions,
) -> std::result::Result<EvalResult, Failure> {
    match function {
        Function::Toronto => {
            let p = TorontoParams::new(
                need(point.m, "m", function)?,
                need(point.n, "n", function)?,
                need(point.r, "r", function)?,
                need(point.b, "B", function)?,
            )?;
            Ok(eval_toronto(&p, method, opts)?)
        }
        Function::Ilhi => {
            let p = IlhiParams::new(
                need(point.m, "m", function)?,
                need(point.n, "n", function)?,
                need(point.a, "a", function)?,
                need(point.z, "z", function)?,
            )?;
            Ok(eval_ilhi(&p, method, opts)?)
        }
    }
}

fn cmd_eval(
    args: EvalArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::result::Result<i32, Failure> {
    let opts = options(&args.truncation)?;
    let method = args
        .method
        .as_deref()
        .map(str::parse::<Method>)
        .transpose()?;
    let result = evaluate(args.function, &args.point, method, &opts)?;
    if method.is_none() && result.method == Method::Oracle {
        writeln!(err, "note: closed form unavailable, served by oracle").map_err(io_failure)?;
    }
    match result.error_estimate {
        Some(e) => writeln!(
            out,
            "{} {:.16e} error_estimate={:.16e}",
            result.method, result.value, e
        ),
        None => writeln!(out, "{} {:.16e}", result.method, result.value),
    }
    .map_err(io_failure)?;
    Ok(0)
}

/// A sweep column: a method, an optional pinned order, and its label in the CSV.
struct Column {
    label: String,
    method: Method,
    order: Option<f64>,
}

fn parse_column(spec: &str) -> std::result::Result<Column, Failure> {
    let spec = spec.trim();
    let (name, order) = match spec.split_once('@') {
        Some((name, order)) => {
            let n = order
                .parse::<f64>()
                .map_err(|_| usage(format!("bad order in method '{spec}'")))?;
            (name, Some(n))
        }
        None => (spec, None),
    };
    Ok(Column {
        label: spec.to_string(),
        method: name.parse()?,
        order,
    })
}

fn grid(start: f64, stop: f64, step: f64) -> std::result::Result<Vec<f64>, Failure> {
    if !start.is_finite() || !stop.is_finite() || !(step > 0.0) || !step.is_finite() {
        return Err(usage("sweep needs finite --start/--stop and --step > 0"));
    }
    if !(start < stop) {
        return Err(usage(format!(
            "empty sweep range: --start {start} must be below --stop {stop}"
        )));
    }
    let count = ((stop - start) / step * (1.0 + 1e-12)).floor() as usize + 1;
    if count > 1_000_000 {
        return Err(usage(format!("sweep would produce {count} points")));
    }
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

fn set_var(
    point: &mut Point,
    function: Function,
    var: &str,
    value: f64,
) -> std::result::Result<(), Failure> {
    let slot = match (function, var) {
        (_, "m") => &mut point.m,
        (_, "n") => &mut point.n,
        (Function::Toronto, "r") => &mut point.r,
        (Function::Toronto, "B") => &mut point.b,
        (Function::Ilhi, "a") => &mut point.a,
        (Function::Ilhi, "z") => &mut point.z,
        _ => return Err(usage(format!("cannot sweep '{var}' for this function"))),
    };
    *slot = Some(value);
    Ok(())
}

fn cmd_sweep(args: SweepArgs, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let opts = options(&args.truncation)?;
    let mut columns = args
        .method
        .iter()
        .map(|s| parse_column(s))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    columns.sort_by(|a, b| a.label.cmp(&b.label));
    columns.dedup_by(|a, b| a.label == b.label);
    let xs = grid(args.start, args.stop, args.step)?;

    // everything is evaluated before anything is written
    let mut rows = Vec::with_capacity(xs.len() * columns.len());
    for &x in &xs {
        for column in &columns {
            let mut point = args.point.clone();
            set_var(&mut point, args.function, &args.var, x)?;
            if let Some(n) = column.order {
                point.n = Some(n);
            }
            let value = evaluate(args.function, &point, Some(column.method), &opts)
                .map_err(|f| Failure {
                    message: format!("{} at {}={x}: {}", column.label, args.var, f.message),
                    ..f
                })?
                .value;
            rows.push([
                format!("{x:.16e}"),
                column.label.clone(),
                format!("{value:.16e}"),
            ]);
        }
    }

    let mut buffer = Vec::new();
    {
        let mut writer = csv::Writer::from_writer(&mut buffer);
        let csv_error = |e: csv::Error| Failure {
            code: EXIT_FAILURE,
            message: e.to_string(),
        };
        writer
            .write_record(["sweep_var", "method", "value"])
            .map_err(csv_error)?;
        for row in &rows {
            writer.write_record(row).map_err(csv_error)?;
        }
        writer.flush().map_err(io_failure)?;
    }
    match &args.out {
        Some(path) => std::fs::write(path, &buffer).map_err(|e| Failure {
            code: EXIT_FAILURE,
            message: format!("{}: {e}", path.display()),
        })?,
        None => out.write_all(&buffer).map_err(io_failure)?,
    }
    Ok(0)
}

fn tolerance(flag: Option<f64>) -> std::result::Result<f64, Failure> {
    if let Some(tol) = flag {
        return Ok(tol);
    }
    match std::env::var(TOLERANCE_ENV) {
        Ok(raw) => raw
            .trim()
            .parse::<f64>()
            .map_err(|_| usage(format!("{TOLERANCE_ENV}='{raw}' is not a number"))),
        Err(_) => Ok(DEFAULT_TOLERANCE),
    }
}

fn cmd_verify(args: VerifyArgs, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let tol = tolerance(args.rel_tol)?;
    if !(tol > 0.0) {
        return Err(usage(format!(
            "verification tolerance must be > 0 (got {tol})"
        )));
    }
    let mut g = VerifyGrid::default();
    if !args.m.is_empty() {
        g.toronto_m = args.m.clone();
        g.sandwich_m = args.m.clone();
        g.identity_m = args.m.clone();
        g.ilhi_m = args.m.clone();
    }
    if !args.n.is_empty() {
        let (half, general): (Vec<f64>, Vec<f64>) = args
            .n
            .iter()
            .partition(|&&n| crate::special::is_half_odd(n));
        g.toronto_n = half.clone();
        g.ilhi_n = half;
        g.sandwich_n = general.clone();
        g.ilhi_sandwich_n = general;
    }
    if !args.r.is_empty() {
        g.r = args.r.clone();
        g.identity_r = args.r;
    }
    if !args.b.is_empty() {
        g.b = args.b;
    }
    if !args.a.is_empty() {
        g.a = args.a;
    }
    if !args.z.is_empty() {
        g.z = args.z;
    }
    let scope = match args.scope {
        VerifyScope::All => Scope::All,
        VerifyScope::Toronto => Scope::Toronto,
        VerifyScope::Ilhi => Scope::Ilhi,
    };
    let report = run_verify(&g, scope, tol, &verification_quad())?;
    for c in &report.comparisons {
        writeln!(out, "{c}").map_err(io_failure)?;
    }
    match report.worst_offender() {
        None => {
            writeln!(out, "verify: PASS").map_err(io_failure)?;
            Ok(0)
        }
        Some(w) => {
            writeln!(
                out,
                "verify: FAIL; worst offender: {} at {}",
                w.name, w.worst_at
            )
            .map_err(io_failure)?;
            Ok(EXIT_FAILURE)
        }
    }
}
