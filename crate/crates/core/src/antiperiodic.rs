//! Antiperiodic Fourier series on `[-L, L]`.
//!
//! Any `f` is shifted by `γ = (f(-L) + f(L))/2` so that `f - γ` takes opposite
//! values at the ends, and `f - γ` is expanded in the half-integer harmonics
//! `cos((2n+1)πx/2L)`, `sin((2n+1)πx/2L)`, `n ≥ 0`:
//!
//! ```text
//! AS f(x) = γ + Σ_{n≥0} α_n cos((2n+1)πx/2L) + β_n sin((2n+1)πx/2L)
//! α_n = (1/L) ∫ (f - γ) cos((2n+1)πx/2L),   β_n = (1/L) ∫ (f - γ) sin((2n+1)πx/2L)
//! ```
//!
//! Every basis function vanishes or flips sign between `-L` and `L`, so each
//! partial sum is antisymmetric about `γ` at the interval ends and matches
//! `f(±L)` once the coefficients have converged. For continuous `f` of bounded
//! variation the series converges uniformly on the closed interval.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::FunctionSpec;
use crate::classical::{self, ClassicalCoefficients};
use crate::error::{Family, SeriesError, SeriesKind};
use crate::projection::{Projection, Wave};
use crate::quadrature::QuadratureConfig;
use crate::trig::{cos_pi, sin_pi};

/// `γ`, `α_0..α_N`, `β_0..β_N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawAntiperiodic")]
pub struct AntiperiodicCoefficients {
    #[serde(rename = "L")]
    half_width: f64,
    #[serde(rename = "N")]
    order: usize,
    gamma: f64,
    alpha: Vec<f64>,
    beta: Vec<f64>,
}

#[derive(Deserialize)]
struct RawAntiperiodic {
    #[serde(rename = "L")]
    half_width: f64,
    #[serde(rename = "N")]
    order: usize,
    gamma: f64,
    alpha: Vec<f64>,
    beta: Vec<f64>,
}

impl TryFrom<RawAntiperiodic> for AntiperiodicCoefficients {
    type Error = SeriesError;

    fn try_from(raw: RawAntiperiodic) -> Result<Self, SeriesError> {
        let c = AntiperiodicCoefficients::from_parts(raw.half_width, raw.gamma, raw.alpha, raw.beta)?;
        if c.order != raw.order {
            return Err(SeriesError::InvalidCoefficients(format!(
                "N = {} but {} coefficients per family",
                raw.order,
                c.order + 1
            )));
        }
        Ok(c)
    }
}

impl AntiperiodicCoefficients {
    pub fn from_parts(half_width: f64, gamma: f64, alpha: Vec<f64>, beta: Vec<f64>) -> Result<Self, SeriesError> {
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(SeriesError::InvalidCoefficients(format!("L = {half_width}")));
        }
        if alpha.is_empty() || alpha.len() != beta.len() {
            return Err(SeriesError::InvalidCoefficients(format!(
                "need len(alpha) = len(beta) >= 1, got {} and {}",
                alpha.len(),
                beta.len()
            )));
        }
        if !gamma.is_finite() || alpha.iter().chain(&beta).any(|v| !v.is_finite()) {
            return Err(SeriesError::InvalidCoefficients("non-finite coefficient".into()));
        }
        Ok(AntiperiodicCoefficients {
            half_width,
            order: alpha.len() - 1,
            gamma,
            alpha,
            beta,
        })
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    /// `AS_M f(x) = γ + Σ_{n=0..M} (α_n cos + β_n sin)`. Defined for every
    /// real `x`; outside `[-L, L]` the sum is `4L`-periodic and
    /// `2L`-antiperiodic about `γ`.
    pub fn partial_sum(&self, x: f64, m: usize) -> Result<f64, SeriesError> {
        if m > self.order {
            return Err(SeriesError::OrderExceedsTruncation {
                requested: m,
                available: self.order,
            });
        }
        let t = x / self.half_width;
        let mut sum = 0.0;
        for n in 0..=m {
            let k = n as f64 + 0.5;
            sum += self.alpha[n] * cos_pi(k * t) + self.beta[n] * sin_pi(k * t);
        }
        Ok(self.gamma + sum)
    }
}

/// `(f(-L) + f(L)) / 2`.
pub fn shift_gamma(f: &FunctionSpec) -> f64 {
    0.5 * f.antiperiodic_defect()
}

/// `(cos((2n+1)πx/2L), sin((2n+1)πx/2L))`.
pub fn half_basis(n: usize, half_width: f64, x: f64) -> (f64, f64) {
    let t = (n as f64 + 0.5) * (x / half_width);
    (cos_pi(t), sin_pi(t))
}

/// Predicted value of the series at a point where `f` has one-sided limits.
pub fn jordan_midpoint(left_limit: f64, right_limit: f64) -> f64 {
    (right_limit + left_limit) / 2.0
}

/// `γ`, `α_n`, `β_n` for `n = 0..=N` by direct quadrature.
pub fn antiperiodic_coefficients(
    f: &FunctionSpec,
    order: usize,
    cfg: &QuadratureConfig,
) -> Result<AntiperiodicCoefficients, SeriesError> {
    cfg.validate()?;
    let gamma = shift_gamma(f);
    let l = f.half_width();
    let p = Projection {
        spec: f,
        offset: gamma,
        modulation: None,
    };
    let pairs = (0..=order)
        .into_par_iter()
        .map(|n| {
            let k = n as f64 + 0.5;
            let fail = |family| {
                move |source| SeriesError::Quadrature {
                    series: SeriesKind::Antiperiodic,
                    n,
                    family,
                    source,
                }
            };
            let alpha = p.against(Wave::Cos(k), cfg).map_err(fail(Family::Cosine))? / l;
            let beta = p.against(Wave::Sin(k), cfg).map_err(fail(Family::Sine))? / l;
            Ok((alpha, beta))
        })
        .collect::<Result<Vec<_>, SeriesError>>()?;
    let (alpha, beta) = pairs.into_iter().unzip();
    AntiperiodicCoefficients::from_parts(l, gamma, alpha, beta)
}

/// The same coefficients assembled from the classical series of
/// `f_c = (f - γ) cos(πx/2L)` and `f_s = (f - γ) sin(πx/2L)`, which take
/// equal values at `±L`.
///
/// With `a_n, b_n` the classical coefficients of `f_c` and `ã_n, b̃_n` those
/// of `f_s` (computed to order `N + 1`, `b_0 = b̃_0 = 0`):
///
/// ```text
/// α_0 = (a_0 + a_1 + b̃_1)/2            β_0 = (ã_0 - ã_1 + b_1)/2
/// α_n = (a_n + a_{n+1} - b̃_n + b̃_{n+1})/2
/// β_n = (ã_n - ã_{n+1} + b_n + b_{n+1})/2
/// ```
///
/// For sampled tables the modulated integrands are not covered by the exact
/// panel sums; they go through adaptive quadrature on the interpolant.
pub fn coefficients_via_periodic_split(
    f: &FunctionSpec,
    order: usize,
    cfg: &QuadratureConfig,
) -> Result<AntiperiodicCoefficients, SeriesError> {
    let gamma = shift_gamma(f);
    let split = |modulation| {
        classical::coefficients_of(
            &Projection {
                spec: f,
                offset: gamma,
                modulation: Some(modulation),
            },
            order + 1,
            cfg,
            SeriesKind::Antiperiodic,
        )
    };
    let fc: ClassicalCoefficients = split(Wave::Cos(0.5))?;
    let fs: ClassicalCoefficients = split(Wave::Sin(0.5))?;
    let (a, b) = (|n| fc.cos_coefficient(n), |n| fc.sin_coefficient(n));
    let (at, bt) = (|n| fs.cos_coefficient(n), |n| fs.sin_coefficient(n));

    let mut alpha = Vec::with_capacity(order + 1);
    let mut beta = Vec::with_capacity(order + 1);
    alpha.push((a(0) + a(1) + bt(1)) / 2.0);
    beta.push((at(0) - at(1) + b(1)) / 2.0);
    for n in 1..=order {
        alpha.push((a(n) + a(n + 1) - bt(n) + bt(n + 1)) / 2.0);
        beta.push((at(n) - at(n + 1) + b(n) + b(n + 1)) / 2.0);
    }
    AntiperiodicCoefficients::from_parts(f.half_width(), gamma, alpha, beta)
}
