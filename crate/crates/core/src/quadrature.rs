//! Simpson-rule integration of real functions on a finite interval.
//!
//! Two schemes are available. The composite rule doubles a uniform panel grid
//! until successive estimates agree; the adaptive rule starts from the same
//! uniform grid and bisects each panel independently. Both keep every
//! integrand value they have computed, so the number of evaluations for a
//! given integrand and configuration is fixed.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureMethod {
    CompositeSimpson,
    AdaptiveSimpson,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub method: QuadratureMethod,
    /// Target for the estimated absolute error of the whole integral.
    pub abs_tol: f64,
    /// Maximum bisection depth (adaptive) or number of grid doublings
    /// (composite).
    pub max_subdivisions: u32,
    /// Number of uniform Simpson panels the schemes start from.
    pub base_panels: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            method: QuadratureMethod::AdaptiveSimpson,
            abs_tol: 1e-10,
            max_subdivisions: 30,
            base_panels: 64,
        }
    }
}

impl QuadratureConfig {
    pub fn with_tol(abs_tol: f64) -> Self {
        QuadratureConfig {
            abs_tol,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<(), QuadratureError> {
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(QuadratureError::InvalidConfig(format!(
                "abs_tol must be positive and finite, got {}",
                self.abs_tol
            )));
        }
        if self.base_panels < 2 || !self.base_panels.is_multiple_of(2) {
            return Err(QuadratureError::InvalidConfig(format!(
                "base_panels must be even and at least 2, got {}",
                self.base_panels
            )));
        }
        if self.max_subdivisions < 1 {
            return Err(QuadratureError::InvalidConfig(
                "max_subdivisions must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("invalid integration interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },
    #[error("no convergence on [{a}, {b}] after {depth} subdivisions (estimated error {estimate:e})")]
    NonConvergence { a: f64, b: f64, depth: u32, estimate: f64 },
    #[error("integrand is not finite at x = {x}")]
    NonFinite { x: f64 },
    #[error("invalid quadrature configuration: {0}")]
    InvalidConfig(String),
}

/// Value of an integral together with the bookkeeping of how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Integrates `f` over `[a, b]`.
pub fn integrate<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<f64, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    integrate_with_stats(f, a, b, cfg).map(|r| r.value)
}

pub fn integrate_with_stats<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<Integral, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    cfg.validate()?;
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(QuadratureError::InvalidInterval { a, b });
    }
    let mut counter = Counted { f: &f, calls: 0 };
    let (value, error_estimate) = match cfg.method {
        QuadratureMethod::CompositeSimpson => composite(&mut counter, a, b, cfg)?,
        QuadratureMethod::AdaptiveSimpson => adaptive(&mut counter, a, b, cfg)?,
    };
    Ok(Integral {
        value,
        error_estimate,
        evaluations: counter.calls,
    })
}

struct Counted<'a, F> {
    f: &'a F,
    calls: usize,
}

impl<F: Fn(f64) -> f64> Counted<'_, F> {
    fn eval(&mut self, x: f64) -> Result<f64, QuadratureError> {
        self.calls += 1;
        let y = (self.f)(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(QuadratureError::NonFinite { x })
        }
    }
}

/// Node `i` of a uniform grid with `n` intervals; the ends are exactly `a` and `b`.
fn node(a: f64, b: f64, i: usize, n: usize) -> f64 {
    if i == 0 {
        a
    } else if i == n {
        b
    } else {
        a + (b - a) * (i as f64 / n as f64)
    }
}

fn composite<F: Fn(f64) -> f64>(
    f: &mut Counted<'_, F>,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<(f64, f64), QuadratureError> {
    // Simpson on n intervals: h/3 (ends + 4 odd + 2 even).
    let mut n = 2 * cfg.base_panels;
    let ends = f.eval(a)? + f.eval(b)?;
    let mut even = 0.0;
    let mut odd = 0.0;
    for i in 1..n {
        let y = f.eval(node(a, b, i, n))?;
        if i % 2 == 0 {
            even += y;
        } else {
            odd += y;
        }
    }
    let mut estimate = (b - a) / n as f64 / 3.0 * (ends + 4.0 * odd + 2.0 * even);
    let mut last_delta = f64::INFINITY;
    for _ in 0..cfg.max_subdivisions {
        // Old nodes all become even nodes of the refined grid.
        even += odd;
        n *= 2;
        odd = 0.0;
        for i in (1..n).step_by(2) {
            odd += f.eval(node(a, b, i, n))?;
        }
        let refined = (b - a) / n as f64 / 3.0 * (ends + 4.0 * odd + 2.0 * even);
        let delta = refined - estimate;
        estimate = refined;
        last_delta = delta.abs() / 15.0;
        if last_delta <= cfg.abs_tol {
            return Ok((refined + delta / 15.0, last_delta));
        }
    }
    Err(QuadratureError::NonConvergence {
        a,
        b,
        depth: cfg.max_subdivisions,
        estimate: last_delta,
    })
}

fn adaptive<F: Fn(f64) -> f64>(
    f: &mut Counted<'_, F>,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<(f64, f64), QuadratureError> {
    let panels = cfg.base_panels;
    let n = 2 * panels;
    let mut ys = Vec::with_capacity(n + 1);
    for i in 0..=n {
        ys.push(f.eval(node(a, b, i, n))?);
    }
    let mut total = 0.0;
    let mut err = 0.0;
    for p in 0..panels {
        let (l, m, r) = (node(a, b, 2 * p, n), node(a, b, 2 * p + 1, n), node(a, b, 2 * p + 2, n));
        let (fl, fm, fr) = (ys[2 * p], ys[2 * p + 1], ys[2 * p + 2]);
        let whole = (r - l) / 6.0 * (fl + 4.0 * fm + fr);
        let tol = cfg.abs_tol * (r - l) / (b - a);
        let (v, e) = bisect(f, [l, m, r], [fl, fm, fr], whole, tol, 1, cfg.max_subdivisions)?;
        total += v;
        err += e;
    }
    Ok((total, err))
}

fn bisect<F: Fn(f64) -> f64>(
    f: &mut Counted<'_, F>,
    [a, m, b]: [f64; 3],
    [fa, fm, fb]: [f64; 3],
    whole: f64,
    tol: f64,
    depth: u32,
    max_depth: u32,
) -> Result<(f64, f64), QuadratureError> {
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f.eval(lm)?;
    let frm = f.eval(rm)?;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Ok((left + right + delta / 15.0, delta.abs() / 15.0));
    }
    if depth >= max_depth || lm <= a || rm >= b {
        return Err(QuadratureError::NonConvergence {
            a,
            b,
            depth,
            estimate: delta.abs() / 15.0,
        });
    }
    let (lv, le) = bisect(f, [a, lm, m], [fa, flm, fm], left, 0.5 * tol, depth + 1, max_depth)?;
    let (rv, re) = bisect(f, [m, rm, b], [fm, frm, fb], right, 0.5 * tol, depth + 1, max_depth)?;
    Ok((lv + rv, le + re))
}
