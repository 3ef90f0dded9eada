//! Target functions on a symmetric interval `[-L, L]`.
//!
//! A [`FunctionSpec`] is a polynomial, an entry of the named registry, or a
//! sampled table read from CSV and interpolated piecewise linearly. Specs are
//! written and read through a small text grammar:
//!
//! ```text
//! poly:<c0>,<c1>,...          ascending powers
//! named:<id>[:<params>]       identity, const:<c>, poly:<c0>,.., signum,
//!                             x-plus-sign, scaled-square
//! csv:<path>                  two columns x,y
//! ```

use std::fmt;
use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("x = {x} lies outside [-{half_width}, {half_width}]")]
    OutOfDomain { x: f64, half_width: f64 },
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid function spec: {0}")]
    Validation(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Side from which a one-sided limit is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq)]
pub enum NamedFunction {
    /// `f(x) = x`
    Identity,
    /// `f(x) = c`
    Const(f64),
    /// Polynomial given in ascending powers.
    Poly(Vec<f64>),
    /// `sign(x)` with `sign(0) = 0`.
    Signum,
    /// `x + sign(x)`
    XPlusSign,
    /// `(x/π)²`
    ScaledSquare,
}

impl NamedFunction {
    pub fn identifier(&self) -> &'static str {
        match self {
            NamedFunction::Identity => "identity",
            NamedFunction::Const(_) => "const",
            NamedFunction::Poly(_) => "poly",
            NamedFunction::Signum => "signum",
            NamedFunction::XPlusSign => "x-plus-sign",
            NamedFunction::ScaledSquare => "scaled-square",
        }
    }

    fn value(&self, x: f64) -> f64 {
        match self {
            NamedFunction::Identity => x,
            NamedFunction::Const(c) => *c,
            NamedFunction::Poly(c) => horner(c, x),
            NamedFunction::Signum => signum(x),
            NamedFunction::XPlusSign => x + signum(x),
            NamedFunction::ScaledSquare => {
                let s = x / std::f64::consts::PI;
                s * s
            }
        }
    }

    fn jumps(&self) -> bool {
        matches!(self, NamedFunction::Signum | NamedFunction::XPlusSign)
    }

    /// Declared continuity on any interval.
    pub fn is_continuous(&self) -> bool {
        !self.jumps()
    }

    /// Declared antiperiodicity `f(-L) = -f(L)` on `[-L, L]`.
    pub fn is_antiperiodic(&self, _half_width: f64) -> bool {
        match self {
            NamedFunction::Identity | NamedFunction::Signum | NamedFunction::XPlusSign => true,
            NamedFunction::Const(c) => *c == 0.0,
            NamedFunction::Poly(c) => c.iter().step_by(2).all(|&v| v == 0.0),
            NamedFunction::ScaledSquare => false,
        }
    }
}

fn signum(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &ci| acc * x + ci)
}

/// Samples `(x_i, y_i)` with strictly increasing abscissae spanning `[-L, L]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Samples {
    xs: Vec<f64>,
    ys: Vec<f64>,
    source: Option<PathBuf>,
}

impl Samples {
    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn source(&self) -> Option<&Path> {
        self.source.as_deref()
    }

    fn value(&self, x: f64) -> f64 {
        let m = self.xs.len() - 1;
        // Index of the segment [x_i, x_{i+1}] holding x; outside the table the
        // end segments are extended.
        let i = self.xs.partition_point(|&xi| xi <= x).clamp(1, m) - 1;
        let (x0, x1, y0, y1) = (self.xs[i], self.xs[i + 1], self.ys[i], self.ys[i + 1]);
        if x == x0 {
            return y0;
        }
        if x == x1 {
            return y1;
        }
        y0 + (y1 - y0) * ((x - x0) / (x1 - x0))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Body {
    Polynomial(Vec<f64>),
    Named(NamedFunction),
    Sampled(Samples),
}

/// A real function on `[-L, L]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSpec {
    half_width: f64,
    body: Body,
}

fn check_half_width(half_width: f64) -> Result<(), CatalogError> {
    if half_width > 0.0 && half_width.is_finite() {
        Ok(())
    } else {
        Err(CatalogError::Validation(format!(
            "interval half-width must be positive and finite, got {half_width}"
        )))
    }
}

fn check_coefficients(c: &[f64]) -> Result<(), CatalogError> {
    if c.is_empty() {
        return Err(CatalogError::Validation(
            "polynomial needs at least one coefficient".into(),
        ));
    }
    if c.iter().any(|v| !v.is_finite()) {
        return Err(CatalogError::Validation(
            "polynomial coefficients must be finite".into(),
        ));
    }
    Ok(())
}

impl FunctionSpec {
    pub fn polynomial(coefficients: Vec<f64>, half_width: f64) -> Result<Self, CatalogError> {
        check_half_width(half_width)?;
        check_coefficients(&coefficients)?;
        Ok(FunctionSpec {
            half_width,
            body: Body::Polynomial(coefficients),
        })
    }

    pub fn named(function: NamedFunction, half_width: f64) -> Result<Self, CatalogError> {
        check_half_width(half_width)?;
        match &function {
            NamedFunction::Poly(c) => check_coefficients(c)?,
            NamedFunction::Const(c) if !c.is_finite() => {
                return Err(CatalogError::Validation("constant must be finite".into()))
            }
            _ => {}
        }
        Ok(FunctionSpec {
            half_width,
            body: Body::Named(function),
        })
    }

    /// Builds a sampled spec. The first and last abscissae must equal `-L`
    /// and `L` up to a relative `1e-9`; they are then set to exactly `∓L`.
    pub fn sampled(xs: Vec<f64>, ys: Vec<f64>, half_width: f64) -> Result<Self, CatalogError> {
        Self::sampled_from(xs, ys, half_width, None)
    }

    fn sampled_from(
        mut xs: Vec<f64>,
        ys: Vec<f64>,
        half_width: f64,
        source: Option<PathBuf>,
    ) -> Result<Self, CatalogError> {
        check_half_width(half_width)?;
        if xs.len() != ys.len() {
            return Err(CatalogError::Validation(format!(
                "{} abscissae but {} values",
                xs.len(),
                ys.len()
            )));
        }
        if xs.len() < 2 {
            return Err(CatalogError::Validation(
                "a sampled table needs at least two rows".into(),
            ));
        }
        if xs.iter().chain(&ys).any(|v| !v.is_finite()) {
            return Err(CatalogError::Validation("samples must be finite".into()));
        }
        for (i, w) in xs.windows(2).enumerate() {
            if w[1] == w[0] {
                return Err(CatalogError::Validation(format!(
                    "duplicate abscissa {} at rows {} and {}",
                    w[0],
                    i,
                    i + 1
                )));
            }
            if w[1] < w[0] {
                return Err(CatalogError::Validation(format!(
                    "abscissae not increasing at row {}",
                    i + 1
                )));
            }
        }
        let slack = 1e-9 * half_width;
        let (first, last) = (xs[0], xs[xs.len() - 1]);
        if (first + half_width).abs() > slack || (last - half_width).abs() > slack {
            return Err(CatalogError::Validation(format!(
                "samples span [{first}, {last}] but the interval is [-{half_width}, {half_width}]"
            )));
        }
        let m = xs.len() - 1;
        xs[0] = -half_width;
        xs[m] = half_width;
        if xs[1] <= xs[0] || xs[m - 1] >= xs[m] {
            return Err(CatalogError::Validation("samples crowd the interval ends".into()));
        }
        Ok(FunctionSpec {
            half_width,
            body: Body::Sampled(Samples { xs, ys, source }),
        })
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn body(&self) -> &Body {
        &self.body
    }

    /// `f(x)` for `-L <= x <= L`.
    pub fn evaluate(&self, x: f64) -> Result<f64, CatalogError> {
        if x.is_nan() || x.abs() > self.half_width {
            return Err(CatalogError::OutOfDomain {
                x,
                half_width: self.half_width,
            });
        }
        Ok(self.value(x))
    }

    /// Unchecked evaluation. Polynomials extend naturally, samples extend
    /// their end segments.
    pub(crate) fn value(&self, x: f64) -> f64 {
        match &self.body {
            Body::Polynomial(c) => horner(c, x),
            Body::Named(n) => n.value(x),
            Body::Sampled(s) => s.value(x),
        }
    }

    /// One-sided limit of `f` at `x`.
    pub fn limit(&self, x: f64, side: Side) -> f64 {
        if x == 0.0 {
            if let Body::Named(n) = &self.body {
                if n.jumps() {
                    let s = match side {
                        Side::Left => -1.0,
                        Side::Right => 1.0,
                    };
                    return n.value(0.0) + s;
                }
            }
        }
        self.value(x)
    }

    /// Interior points of `(-L, L)` where `f` may jump or lose smoothness.
    pub fn breakpoints(&self) -> Vec<f64> {
        match &self.body {
            Body::Polynomial(_) => Vec::new(),
            Body::Named(n) => {
                if n.jumps() {
                    vec![0.0]
                } else {
                    Vec::new()
                }
            }
            Body::Sampled(s) => s.xs[1..s.xs.len() - 1].to_vec(),
        }
    }

    pub fn is_continuous(&self) -> bool {
        match &self.body {
            Body::Named(n) => n.is_continuous(),
            _ => true,
        }
    }

    /// Declared (structural) antiperiodicity.
    pub fn is_antiperiodic(&self) -> bool {
        match &self.body {
            Body::Polynomial(c) => c.iter().step_by(2).all(|&v| v == 0.0),
            Body::Named(n) => n.is_antiperiodic(self.half_width),
            Body::Sampled(s) => s.ys[0] == -s.ys[s.ys.len() - 1],
        }
    }

    /// `f(-L) + f(L)`; zero exactly when `f` is antiperiodic.
    pub fn antiperiodic_defect(&self) -> f64 {
        self.value(-self.half_width) + self.value(self.half_width)
    }

    /// Grammar string for this spec. In-memory sampled tables have none.
    pub fn render(&self) -> Option<String> {
        let join = |c: &[f64]| c.iter().map(|v| format!("{v:?}")).collect::<Vec<_>>().join(",");
        Some(match &self.body {
            Body::Polynomial(c) => format!("poly:{}", join(c)),
            Body::Named(NamedFunction::Const(c)) => format!("named:const:{c:?}"),
            Body::Named(NamedFunction::Poly(c)) => format!("named:poly:{}", join(c)),
            Body::Named(n) => format!("named:{}", n.identifier()),
            Body::Sampled(s) => format!("csv:{}", s.source.as_ref()?.display()),
        })
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.render() {
            Some(s) => write!(f, "{s} on [-{L}, {L}]", L = self.half_width),
            None => write!(f, "sampled table on [-{L}, {L}]", L = self.half_width),
        }
    }
}

fn parse_number(text: &str, position: usize) -> Result<f64, CatalogError> {
    let t = text.trim();
    t.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| CatalogError::Parse {
            position,
            message: format!("expected a finite number, found {t:?}"),
        })
}

fn parse_list(text: &str, offset: usize) -> Result<Vec<f64>, CatalogError> {
    if text.trim().is_empty() {
        return Err(CatalogError::Parse {
            position: offset,
            message: "expected a comma-separated coefficient list".into(),
        });
    }
    let mut out = Vec::new();
    let mut pos = offset;
    for item in text.split(',') {
        out.push(parse_number(item, pos)?);
        pos += item.len() + 1;
    }
    Ok(out)
}

/// Parses `poly:..`, `named:..` or `csv:..` into a spec on `[-L, L]`.
pub fn parse_function_spec(text: &str, half_width: f64) -> Result<FunctionSpec, CatalogError> {
    let (scheme, rest) = text.split_once(':').ok_or_else(|| CatalogError::Parse {
        position: 0,
        message: "expected `poly:`, `named:` or `csv:`".into(),
    })?;
    let rest_at = scheme.len() + 1;
    match scheme {
        "poly" => FunctionSpec::polynomial(parse_list(rest, rest_at)?, half_width),
        "named" => {
            let (id, params) = match rest.split_once(':') {
                Some((id, p)) => (id, Some(p)),
                None => (rest, None),
            };
            let params_at = rest_at + id.len() + 1;
            let no_params = |f: NamedFunction| match params {
                None => Ok(f),
                Some(_) => Err(CatalogError::Parse {
                    position: params_at,
                    message: format!("`{id}` takes no parameters"),
                }),
            };
            let function = match id {
                "identity" => no_params(NamedFunction::Identity)?,
                "signum" => no_params(NamedFunction::Signum)?,
                "x-plus-sign" => no_params(NamedFunction::XPlusSign)?,
                "scaled-square" => no_params(NamedFunction::ScaledSquare)?,
                "const" => {
                    let p = params.ok_or_else(|| CatalogError::Parse {
                        position: rest_at + id.len(),
                        message: "`const` needs a value, e.g. named:const:1.5".into(),
                    })?;
                    NamedFunction::Const(parse_number(p, params_at)?)
                }
                "poly" => {
                    let p = params.ok_or_else(|| CatalogError::Parse {
                        position: rest_at + id.len(),
                        message: "`poly` needs coefficients, e.g. named:poly:1,2,1".into(),
                    })?;
                    NamedFunction::Poly(parse_list(p, params_at)?)
                }
                other => {
                    return Err(CatalogError::Parse {
                        position: rest_at,
                        message: format!("unknown named function {other:?}"),
                    })
                }
            };
            FunctionSpec::named(function, half_width)
        }
        "csv" => {
            if rest.is_empty() {
                return Err(CatalogError::Parse {
                    position: rest_at,
                    message: "expected a file path".into(),
                });
            }
            load_samples(Path::new(rest), half_width)
        }
        other => Err(CatalogError::Parse {
            position: 0,
            message: format!("unknown scheme {other:?}; expected poly, named or csv"),
        }),
    }
}

/// Reads a two-column `x,y` CSV file. A first row that does not parse as
/// numbers is taken as a header.
pub fn load_samples(path: &Path, half_width: f64) -> Result<FunctionSpec, CatalogError> {
    let file = std::fs::File::open(path).map_err(|source| CatalogError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(file);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CatalogError::Validation(format!("{}: {e}", path.display())))?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        if record.len() != 2 {
            return Err(CatalogError::Validation(format!(
                "{} row {}: expected 2 columns, found {}",
                path.display(),
                row + 1,
                record.len()
            )));
        }
        let parsed = (record[0].parse::<f64>(), record[1].parse::<f64>());
        match parsed {
            (Ok(x), Ok(y)) => {
                xs.push(x);
                ys.push(y);
            }
            _ if row == 0 => continue,
            _ => {
                return Err(CatalogError::Validation(format!(
                    "{} row {}: non-numeric entry",
                    path.display(),
                    row + 1
                )))
            }
        }
    }
    FunctionSpec::sampled_from(xs, ys, half_width, Some(path.to_path_buf()))
}

/// Functions exercised by the property and acceptance tests, each on the
/// interval it is used on.
pub fn registry() -> Vec<FunctionSpec> {
    use std::f64::consts::PI;
    let n = |f, l| FunctionSpec::named(f, l).expect("registry entry");
    vec![
        n(NamedFunction::Identity, PI),
        n(NamedFunction::Const(2.5), PI),
        n(NamedFunction::Poly(vec![1.0, 2.0, 1.0]), 1.0),
        n(NamedFunction::Signum, PI),
        n(NamedFunction::XPlusSign, PI),
        n(NamedFunction::ScaledSquare, PI),
    ]
}
