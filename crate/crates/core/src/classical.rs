//! Classical Fourier series on `[-L, L]`:
//! `a_0/2 + Σ_{n≥1} a_n cos(nπx/L) + b_n sin(nπx/L)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::FunctionSpec;
use crate::error::{Family, SeriesError, SeriesKind};
use crate::projection::{Projection, Wave};
use crate::quadrature::QuadratureConfig;
use crate::trig::{cos_pi, sin_pi};

/// `a_0..a_N` and `b_1..b_N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawClassical")]
pub struct ClassicalCoefficients {
    #[serde(rename = "L")]
    half_width: f64,
    #[serde(rename = "N")]
    order: usize,
    a: Vec<f64>,
    /// `b[0]` is `b_1`.
    b: Vec<f64>,
}

#[derive(Deserialize)]
struct RawClassical {
    #[serde(rename = "L")]
    half_width: f64,
    #[serde(rename = "N")]
    order: usize,
    a: Vec<f64>,
    b: Vec<f64>,
}

impl TryFrom<RawClassical> for ClassicalCoefficients {
    type Error = SeriesError;

    fn try_from(raw: RawClassical) -> Result<Self, SeriesError> {
        let c = ClassicalCoefficients::from_parts(raw.half_width, raw.a, raw.b)?;
        if c.order != raw.order {
            return Err(SeriesError::InvalidCoefficients(format!(
                "N = {} but {} cosine coefficients",
                raw.order,
                c.order + 1
            )));
        }
        Ok(c)
    }
}

impl ClassicalCoefficients {
    /// Assembles coefficients; `a` holds `a_0..a_N`, `b` holds `b_1..b_N`.
    pub fn from_parts(half_width: f64, a: Vec<f64>, b: Vec<f64>) -> Result<Self, SeriesError> {
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(SeriesError::InvalidCoefficients(format!("L = {half_width}")));
        }
        if a.is_empty() || b.len() + 1 != a.len() {
            return Err(SeriesError::InvalidCoefficients(format!(
                "need len(a) = len(b) + 1 >= 1, got {} and {}",
                a.len(),
                b.len()
            )));
        }
        if a.iter().chain(&b).any(|v| !v.is_finite()) {
            return Err(SeriesError::InvalidCoefficients("non-finite coefficient".into()));
        }
        Ok(ClassicalCoefficients {
            half_width,
            order: a.len() - 1,
            a,
            b,
        })
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `a_0..a_N`
    pub fn a(&self) -> &[f64] {
        &self.a
    }

    /// `b_1..b_N`
    pub fn b(&self) -> &[f64] {
        &self.b
    }

    /// `a_n`
    pub fn cos_coefficient(&self, n: usize) -> f64 {
        self.a[n]
    }

    /// `b_n`, with `b_0 = 0`.
    pub fn sin_coefficient(&self, n: usize) -> f64 {
        if n == 0 {
            0.0
        } else {
            self.b[n - 1]
        }
    }

    /// `S_M f(x)`; defined for every real `x` as the `2L`-periodic sum.
    pub fn partial_sum(&self, x: f64, m: usize) -> Result<f64, SeriesError> {
        if m > self.order {
            return Err(SeriesError::OrderExceedsTruncation {
                requested: m,
                available: self.order,
            });
        }
        let t = x / self.half_width;
        let mut sum = 0.5 * self.a[0];
        for n in 1..=m {
            let k = n as f64;
            sum += self.a[n] * cos_pi(k * t) + self.b[n - 1] * sin_pi(k * t);
        }
        Ok(sum)
    }
}

/// Classical coefficients of `f` up to order `N`.
pub fn classical_coefficients(
    f: &FunctionSpec,
    order: usize,
    cfg: &QuadratureConfig,
) -> Result<ClassicalCoefficients, SeriesError> {
    coefficients_of(
        &Projection {
            spec: f,
            offset: 0.0,
            modulation: None,
        },
        order,
        cfg,
        SeriesKind::Classical,
    )
}

/// Classical coefficients of `(f - offset)·m` for the projection `p`.
/// `tag` names the series a quadrature failure is reported against.
pub(crate) fn coefficients_of(
    p: &Projection<'_>,
    order: usize,
    cfg: &QuadratureConfig,
    tag: SeriesKind,
) -> Result<ClassicalCoefficients, SeriesError> {
    cfg.validate()?;
    let l = p.spec.half_width();
    let pairs = (0..=order)
        .into_par_iter()
        .map(|n| {
            let k = n as f64;
            let fail = |family| {
                move |source| SeriesError::Quadrature {
                    series: tag,
                    n,
                    family,
                    source,
                }
            };
            let a = p.against(Wave::Cos(k), cfg).map_err(fail(Family::Cosine))? / l;
            let b = if n == 0 {
                0.0
            } else {
                p.against(Wave::Sin(k), cfg).map_err(fail(Family::Sine))? / l
            };
            Ok((a, b))
        })
        .collect::<Result<Vec<_>, SeriesError>>()?;
    let a = pairs.iter().map(|p| p.0).collect();
    let b = pairs.iter().skip(1).map(|p| p.1).collect();
    ClassicalCoefficients::from_parts(l, a, b)
}
