//! Command-line front end.
//!
//! Every subcommand renders its whole output in memory before writing it,
//! either to stdout or, with `--out`, through a temporary file that is
//! renamed into place. A failed run therefore never leaves partial output.
//!
//! Exit status: 0 on success, 2 for flag, spec or input-file errors, 1 for
//! numerical failures (quadrature non-convergence, incompatible heat data).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::antiperiodic::{antiperiodic_coefficients, half_basis, AntiperiodicCoefficients};
use crate::catalog::{parse_function_spec, CatalogError, FunctionSpec};
use crate::classical::{classical_coefficients, ClassicalCoefficients};
use crate::diagnostics::{self, symmetric_grid, DiagnosticsRow, FourierSeries};
use crate::error::SeriesError;
use crate::heat::{solve_heat, HeatProblem};
use crate::quadrature::QuadratureConfig;
use crate::SeriesDocument;

const ABOUT: &str = "Classical and antiperiodic Fourier series, endpoint diagnostics and a heat solver";

const COMPARE_HELP: &str = "CSV columns: series_kind,M,grid_size,window_fraction,endpoint_error_left,\
endpoint_error_right,sup_error,overshoot,decay_exponent_classical,decay_exponent_antiperiodic";

#[derive(Parser, Debug)]
#[command(name = "antifourier", version, about = ABOUT)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute series coefficients.
    Coeffs(CoeffsArgs),
    /// Evaluate partial sums on a uniform grid (columns x,f,classical,antiperiodic).
    Eval(EvalArgs),
    /// Error diagnostics over a ladder of truncation orders.
    #[command(after_help = COMPARE_HELP)]
    Compare(CompareArgs),
    /// Overshoot near the interval ends (columns series_kind,M,window_fraction,overshoot).
    Gibbs(GibbsArgs),
    /// Solve the heat problem with mean-value boundary data (columns x,t,u[,ux]).
    Heat(HeatArgs),
    /// Sample the half-integer basis (columns n,x,cos,sin).
    Basis(BasisArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Classical,
    Anti,
    Both,
}

impl Kind {
    fn classical(self) -> bool {
        matches!(self, Kind::Classical | Kind::Both)
    }
    fn anti(self) -> bool {
        matches!(self, Kind::Anti | Kind::Both)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn parse_interval(s: &str) -> Result<f64, String> {
    if s.eq_ignore_ascii_case("pi") {
        return Ok(std::f64::consts::PI);
    }
    match s.parse::<f64>() {
        Ok(l) if l > 0.0 && l.is_finite() => Ok(l),
        _ => Err(format!("expected `pi` or a positive half-width, got {s:?}")),
    }
}

fn parse_positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

fn parse_finite(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("expected a finite number, got {s:?}")),
    }
}

#[derive(Args, Debug)]
struct Target {
    /// Function spec: poly:<c0>,<c1>,.. | named:<id>[:<params>] | csv:<path>
    #[arg(long)]
    function: Option<String>,
    /// Half-width L of the interval [-L, L]; `pi` for π.
    #[arg(long, default_value = "pi", value_parser = parse_interval)]
    interval: f64,
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this path instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Absolute quadrature tolerance.
    #[arg(long, env = "ANTIFOURIER_QUAD_TOL", value_parser = parse_positive)]
    quad_tol: Option<f64>,
}

impl Output {
    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn quadrature(&self) -> QuadratureConfig {
        match self.quad_tol {
            Some(t) => QuadratureConfig::with_tol(t),
            None => QuadratureConfig::default(),
        }
    }
}

#[derive(Args, Debug)]
struct CoeffsArgs {
    #[command(flatten)]
    target: Target,
    #[arg(long, value_enum, default_value = "both")]
    kind: Kind,
    /// Truncation order N.
    #[arg(long, default_value_t = 16)]
    n: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[command(flatten)]
    target: Target,
    #[arg(long, value_enum, default_value = "both")]
    kind: Kind,
    #[arg(long, default_value_t = 64)]
    n: usize,
    /// Number of grid points over [-L, L].
    #[arg(long, default_value_t = 2001)]
    grid: usize,
    /// Coefficients written by `coeffs --format json`; replaces computation
    /// for the kinds it contains.
    #[arg(long)]
    coeffs_file: Vec<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[command(flatten)]
    target: Target,
    /// Highest order computed.
    #[arg(long, default_value_t = 400)]
    n: usize,
    /// Orders to report; defaults to 10,25,50,100,200,400 (those ≤ N).
    #[arg(long, value_delimiter = ',')]
    orders: Vec<usize>,
    #[arg(long, default_value_t = diagnostics::DEFAULT_GRID)]
    grid: usize,
    #[arg(long, default_value_t = diagnostics::DEFAULT_WINDOW_FRACTION)]
    window: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct GibbsArgs {
    #[command(flatten)]
    target: Target,
    #[arg(long, value_enum, default_value = "both")]
    kind: Kind,
    #[arg(long, default_value_t = 400)]
    n: usize,
    #[arg(long, default_value_t = diagnostics::DEFAULT_WINDOW_FRACTION)]
    window: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct HeatArgs {
    #[command(flatten)]
    target: Target,
    /// Diffusivity k.
    #[arg(long, default_value_t = 1.0, value_parser = parse_positive)]
    k: f64,
    /// Boundary mean c: u(-L,t) + u(L,t) = 2c.
    #[arg(long, default_value_t = 1.0, value_parser = parse_finite)]
    c: f64,
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, value_delimiter = ',', default_value = "0,0.5,1")]
    times: Vec<f64>,
    #[arg(long, default_value_t = 101)]
    grid: usize,
    /// Add a u_x column.
    #[arg(long)]
    with_dx: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct BasisArgs {
    #[arg(long, default_value = "pi", value_parser = parse_interval)]
    interval: f64,
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, default_value_t = 101)]
    grid: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(CatalogError),
    Numerical(SeriesError),
    Io(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) | Failure::Input(_) => 2,
            Failure::Numerical(_) | Failure::Io(_) => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Input(_) => "input",
            Failure::Numerical(_) => "numerical",
            Failure::Io(_) => "io",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Io(m) => m.clone(),
            Failure::Input(e) => e.to_string(),
            Failure::Numerical(e) => e.to_string(),
        }
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        Failure::Input(e)
    }
}

impl From<SeriesError> for Failure {
    fn from(e: SeriesError) -> Self {
        match e {
            SeriesError::InvalidParameter(m) => Failure::Usage(m),
            other => Failure::Numerical(other),
        }
    }
}

/// Runs the CLI with the process's stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let output = match &cli.command {
        Command::Coeffs(a) => &a.output,
        Command::Eval(a) => &a.output,
        Command::Compare(a) => &a.output,
        Command::Gibbs(a) => &a.output,
        Command::Heat(a) => &a.output,
        Command::Basis(a) => &a.output,
    };
    let json_errors = output.format == Some(Format::Json);
    let result = execute(&cli.command).and_then(|text| emit(&text, output.out.as_deref(), out));
    match result {
        Ok(()) => 0,
        Err(failure) => {
            if json_errors {
                let doc = serde_json::json!({"error": {"kind": failure.kind(), "message": failure.message()}});
                let _ = writeln!(err, "{doc}");
            } else {
                let _ = writeln!(err, "error: {}", failure.message());
            }
            failure.code()
        }
    }
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Io(e.to_string());
    match path {
        None => out.write_all(text.as_bytes()).map_err(io),
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
            tmp.write_all(text.as_bytes()).map_err(io)?;
            tmp.persist(path).map_err(|e| io(e.error))?;
            Ok(())
        }
    }
}

fn execute(command: &Command) -> Result<String, Failure> {
    match command {
        Command::Coeffs(a) => coeffs(a),
        Command::Eval(a) => eval(a),
        Command::Compare(a) => compare(a),
        Command::Gibbs(a) => gibbs(a),
        Command::Heat(a) => heat(a),
        Command::Basis(a) => basis(a),
    }
}

/// 17 significant digits, enough to round-trip any f64.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt_num(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

fn function(target: &Target) -> Result<FunctionSpec, Failure> {
    let text = target
        .function
        .as_deref()
        .ok_or_else(|| Failure::Usage("--function is required".into()))?;
    Ok(parse_function_spec(text, target.interval)?)
}

fn check_grid(grid: usize) -> Result<(), Failure> {
    if grid < 2 {
        return Err(Failure::Usage(format!("--grid must be at least 2, got {grid}")));
    }
    Ok(())
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn coeffs(a: &CoeffsArgs) -> Result<String, Failure> {
    let f = function(&a.target)?;
    let cfg = a.output.quadrature();
    let mut docs = Vec::new();
    if a.kind.classical() {
        docs.push(SeriesDocument::Classical(classical_coefficients(&f, a.n, &cfg)?));
    }
    if a.kind.anti() {
        docs.push(SeriesDocument::Antiperiodic(antiperiodic_coefficients(&f, a.n, &cfg)?));
    }
    Ok(match a.output.format_or(Format::Json) {
        Format::Json if docs.len() == 1 => to_json(&docs[0]),
        Format::Json => to_json(&docs),
        Format::Csv => {
            let mut s = String::from("kind,L,gamma,n,cos,sin\n");
            for doc in &docs {
                match doc {
                    SeriesDocument::Classical(c) => {
                        for n in 0..=c.order() {
                            let sin = if n == 0 {
                                String::new()
                            } else {
                                num(c.sin_coefficient(n))
                            };
                            let _ = writeln!(
                                s,
                                "classical,{},,{n},{},{sin}",
                                num(c.half_width()),
                                num(c.cos_coefficient(n))
                            );
                        }
                    }
                    SeriesDocument::Antiperiodic(c) => {
                        for n in 0..=c.order() {
                            let _ = writeln!(
                                s,
                                "antiperiodic,{},{},{n},{},{}",
                                num(c.half_width()),
                                num(c.gamma()),
                                num(c.alpha()[n]),
                                num(c.beta()[n])
                            );
                        }
                    }
                    SeriesDocument::Heat(_) => unreachable!(),
                }
            }
            s
        }
    })
}

fn load_documents(paths: &[PathBuf]) -> Result<Vec<SeriesDocument>, Failure> {
    let mut docs = Vec::new();
    for path in paths {
        let text = std::fs::read_to_string(path).map_err(|source| CatalogError::Io {
            path: path.clone(),
            source,
        })?;
        let bad = |e: serde_json::Error| Failure::Input(CatalogError::Validation(format!("{}: {e}", path.display())));
        let value: serde_json::Value = serde_json::from_str(&text).map_err(bad)?;
        if value.is_array() {
            docs.extend(serde_json::from_value::<Vec<SeriesDocument>>(value).map_err(bad)?);
        } else {
            docs.push(serde_json::from_value::<SeriesDocument>(value).map_err(bad)?);
        }
    }
    Ok(docs)
}

fn eval(a: &EvalArgs) -> Result<String, Failure> {
    check_grid(a.grid)?;
    let cfg = a.output.quadrature();
    let f = match a.target.function {
        Some(_) => Some(function(&a.target)?),
        None => None,
    };
    let mut classical: Option<ClassicalCoefficients> = None;
    let mut anti: Option<AntiperiodicCoefficients> = None;
    for doc in load_documents(&a.coeffs_file)? {
        match doc {
            SeriesDocument::Classical(c) => classical = Some(c),
            SeriesDocument::Antiperiodic(c) => anti = Some(c),
            SeriesDocument::Heat(_) => {
                return Err(Failure::Usage("eval does not take heat solutions".into()));
            }
        }
    }
    let need = |what: &str| Failure::Usage(format!("no {what} coefficients: pass --function or --coeffs-file"));
    if a.kind.classical() && classical.is_none() {
        let f = f.as_ref().ok_or_else(|| need("classical"))?;
        classical = Some(classical_coefficients(f, a.n, &cfg)?);
    }
    if a.kind.anti() && anti.is_none() {
        let f = f.as_ref().ok_or_else(|| need("antiperiodic"))?;
        anti = Some(antiperiodic_coefficients(f, a.n, &cfg)?);
    }
    let mut columns: Vec<(&str, &dyn FourierSeries)> = Vec::new();
    if a.kind.classical() {
        columns.push(("classical", classical.as_ref().expect("set above")));
    }
    if a.kind.anti() {
        columns.push(("antiperiodic", anti.as_ref().expect("set above")));
    }
    let l = columns[0].1.half_width();
    if columns.iter().any(|c| c.1.half_width() != l) || f.as_ref().is_some_and(|f| f.half_width() != l) {
        return Err(Failure::Usage(
            "coefficients and function use different intervals".into(),
        ));
    }
    let m = a.n;
    let xs = symmetric_grid(l, a.grid);
    let mut table: Vec<(&str, Vec<f64>)> = vec![("x", xs.clone())];
    if let Some(f) = &f {
        table.push(("f", xs.iter().map(|&x| f.evaluate(x)).collect::<Result<_, _>>()?));
    }
    for (name, series) in &columns {
        let ys = xs
            .iter()
            .map(|&x| series.partial_sum(x, m))
            .collect::<Result<Vec<_>, _>>()?;
        table.push((name, ys));
    }
    Ok(match a.output.format_or(Format::Csv) {
        Format::Csv => {
            let mut s = table.iter().map(|c| c.0).collect::<Vec<_>>().join(",");
            s.push('\n');
            for i in 0..xs.len() {
                let row: Vec<String> = table.iter().map(|c| num(c.1[i])).collect();
                s.push_str(&row.join(","));
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("M".into(), m.into());
            for (name, col) in &table {
                obj.insert((*name).into(), serde_json::to_value(col).expect("finite"));
            }
            to_json(&obj)
        }
    })
}

fn compare(a: &CompareArgs) -> Result<String, Failure> {
    let f = function(&a.target)?;
    let cfg = a.output.quadrature();
    let orders: Vec<usize> = if a.orders.is_empty() {
        let ladder: Vec<usize> = diagnostics::DEFAULT_ORDERS.into_iter().filter(|&m| m <= a.n).collect();
        if ladder.is_empty() {
            vec![a.n]
        } else {
            ladder
        }
    } else {
        a.orders.clone()
    };
    let c = classical_coefficients(&f, a.n, &cfg)?;
    let s = antiperiodic_coefficients(&f, a.n, &cfg)?;
    let rows = diagnostics::compare(&f, &c, &s, &orders, a.grid, a.window)?;
    Ok(match a.output.format_or(Format::Csv) {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut s = String::from(DiagnosticsRow::CSV_HEADER);
            s.push('\n');
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{},{}",
                    r.series_kind,
                    r.order,
                    r.grid_size,
                    num(r.window_fraction),
                    num(r.endpoint_error_left),
                    num(r.endpoint_error_right),
                    num(r.sup_error),
                    num(r.overshoot),
                    opt_num(r.decay_exponent_classical),
                    opt_num(r.decay_exponent_antiperiodic)
                );
            }
            s
        }
    })
}

fn gibbs(a: &GibbsArgs) -> Result<String, Failure> {
    let f = function(&a.target)?;
    let cfg = a.output.quadrature();
    let mut rows = Vec::new();
    if a.kind.classical() {
        let c = classical_coefficients(&f, a.n, &cfg)?;
        rows.push(("classical", diagnostics::gibbs_overshoot(&f, &c, a.n, a.window)?));
    }
    if a.kind.anti() {
        let s = antiperiodic_coefficients(&f, a.n, &cfg)?;
        rows.push(("antiperiodic", diagnostics::gibbs_overshoot(&f, &s, a.n, a.window)?));
    }
    Ok(match a.output.format_or(Format::Csv) {
        Format::Json => to_json(
            &rows
                .iter()
                .map(|(k, v)| serde_json::json!({"series_kind": k, "M": a.n, "window_fraction": a.window, "overshoot": v}))
                .collect::<Vec<_>>(),
        ),
        Format::Csv => {
            let mut s = String::from("series_kind,M,window_fraction,overshoot\n");
            for (k, v) in rows {
                let _ = writeln!(s, "{k},{},{},{}", a.n, num(a.window), num(v));
            }
            s
        }
    })
}

fn heat(a: &HeatArgs) -> Result<String, Failure> {
    check_grid(a.grid)?;
    let f = function(&a.target)?;
    let problem = HeatProblem::new(a.k, a.c, f)?;
    let solution = solve_heat(&problem, a.n, &a.output.quadrature())?;
    if let Some(&t) = a.times.iter().find(|t| !(**t >= 0.0)) {
        return Err(Failure::Usage(format!("times must be non-negative, got {t}")));
    }
    Ok(match a.output.format_or(Format::Csv) {
        Format::Json => to_json(&SeriesDocument::Heat(solution)),
        Format::Csv => {
            let mut s = String::from(if a.with_dx { "x,t,u,ux\n" } else { "x,t,u\n" });
            let xs = symmetric_grid(solution.half_width(), a.grid);
            for &t in &a.times {
                for &x in &xs {
                    let u = solution.eval(x, t, a.n)?;
                    let _ = write!(s, "{},{},{}", num(x), num(t), num(u));
                    if a.with_dx {
                        let _ = write!(s, ",{}", num(solution.eval_dx(x, t, a.n)?));
                    }
                    s.push('\n');
                }
            }
            s
        }
    })
}

fn basis(a: &BasisArgs) -> Result<String, Failure> {
    check_grid(a.grid)?;
    let xs = symmetric_grid(a.interval, a.grid);
    Ok(match a.output.format_or(Format::Csv) {
        Format::Json => {
            let modes: Vec<_> = (0..=a.n)
                .map(|n| {
                    let (c, s): (Vec<f64>, Vec<f64>) = xs.iter().map(|&x| half_basis(n, a.interval, x)).unzip();
                    serde_json::json!({"n": n, "cos": c, "sin": s})
                })
                .collect();
            to_json(&serde_json::json!({"L": a.interval, "x": xs, "modes": modes}))
        }
        Format::Csv => {
            let mut s = String::from("n,x,cos,sin\n");
            for n in 0..=a.n {
                for &x in &xs {
                    let (c, sn) = half_basis(n, a.interval, x);
                    let _ = writeln!(s, "{n},{},{},{}", num(x), num(c), num(sn));
                }
            }
            s
        }
    })
}
