//! Error measurements for truncated series: endpoint and sup-norm errors,
//! overshoot near `±L`, and fitted coefficient decay rates.

use rayon::prelude::*;
use serde::Serialize;

use crate::antiperiodic::AntiperiodicCoefficients;
use crate::catalog::FunctionSpec;
use crate::classical::ClassicalCoefficients;
use crate::error::{SeriesError, SeriesKind};

pub const DEFAULT_GRID: usize = 2001;
pub const DEFAULT_WINDOW_FRACTION: f64 = 0.1;
pub const WINDOW_POINTS: usize = 4001;
pub const DEFAULT_ORDERS: [usize; 6] = [10, 25, 50, 100, 200, 400];

/// Coefficients are ignored by the decay fit below this magnitude.
const DECAY_FLOOR: f64 = 1e-13;

/// Common view of the two coefficient types.
pub trait FourierSeries: Sync {
    fn kind(&self) -> SeriesKind;
    fn half_width(&self) -> f64;
    fn order(&self) -> usize;
    fn partial_sum(&self, x: f64, m: usize) -> Result<f64, SeriesError>;
    /// Combined magnitude `max(|cos coeff|, |sin coeff|)` for `n = 0..=N`.
    fn magnitudes(&self) -> Vec<f64>;
}

impl FourierSeries for ClassicalCoefficients {
    fn kind(&self) -> SeriesKind {
        SeriesKind::Classical
    }
    fn half_width(&self) -> f64 {
        ClassicalCoefficients::half_width(self)
    }
    fn order(&self) -> usize {
        ClassicalCoefficients::order(self)
    }
    fn partial_sum(&self, x: f64, m: usize) -> Result<f64, SeriesError> {
        ClassicalCoefficients::partial_sum(self, x, m)
    }
    fn magnitudes(&self) -> Vec<f64> {
        (0..=self.order())
            .map(|n| self.cos_coefficient(n).abs().max(self.sin_coefficient(n).abs()))
            .collect()
    }
}

impl FourierSeries for AntiperiodicCoefficients {
    fn kind(&self) -> SeriesKind {
        SeriesKind::Antiperiodic
    }
    fn half_width(&self) -> f64 {
        AntiperiodicCoefficients::half_width(self)
    }
    fn order(&self) -> usize {
        AntiperiodicCoefficients::order(self)
    }
    fn partial_sum(&self, x: f64, m: usize) -> Result<f64, SeriesError> {
        AntiperiodicCoefficients::partial_sum(self, x, m)
    }
    fn magnitudes(&self) -> Vec<f64> {
        self.alpha()
            .iter()
            .zip(self.beta())
            .map(|(a, b)| a.abs().max(b.abs()))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorProfile {
    pub endpoint_error_left: f64,
    pub endpoint_error_right: f64,
    pub sup_error: f64,
    pub grid_size: usize,
}

/// Point `i` of a uniform grid of `points` nodes on `[lo, hi]`, ends exact.
fn grid_node(lo: f64, hi: f64, i: usize, points: usize) -> f64 {
    let last = points - 1;
    if i == 0 {
        lo
    } else if i == last {
        hi
    } else {
        lo + (hi - lo) * (i as f64 / last as f64)
    }
}

/// Uniform grid of `points` nodes over `[-L, L]`, symmetric bit for bit.
pub fn symmetric_grid(half_width: f64, points: usize) -> Vec<f64> {
    let last = (points - 1) as f64;
    (0..points)
        .map(|i| half_width * ((2.0 * i as f64 - last) / last))
        .collect()
}

fn check_order(series: &dyn FourierSeries, m: usize) -> Result<(), SeriesError> {
    if m > series.order() {
        Err(SeriesError::OrderExceedsTruncation {
            requested: m,
            available: series.order(),
        })
    } else {
        Ok(())
    }
}

/// `|S_M f - f|` on a uniform grid of `grid_size` (odd, `≥ 3`) points over
/// `[-L, L]`.
pub fn error_profile(
    f: &FunctionSpec,
    series: &dyn FourierSeries,
    m: usize,
    grid_size: usize,
) -> Result<ErrorProfile, SeriesError> {
    check_order(series, m)?;
    if grid_size < 3 || grid_size.is_multiple_of(2) {
        return Err(SeriesError::InvalidParameter(format!(
            "grid size must be odd and at least 3, got {grid_size}"
        )));
    }
    let l = f.half_width();
    let errors = symmetric_grid(l, grid_size)
        .into_par_iter()
        .map(|x| Ok((series.partial_sum(x, m)? - f.value(x)).abs()))
        .collect::<Result<Vec<f64>, SeriesError>>()?;
    Ok(ErrorProfile {
        endpoint_error_left: errors[0],
        endpoint_error_right: errors[grid_size - 1],
        sup_error: errors.iter().copied().fold(0.0, f64::max),
        grid_size,
    })
}

/// Overshoot of `S_M f` beyond the range of `f` within `window_fraction·L`
/// of either end: above `max f` near `L`, below `min f` near `-L`. The larger
/// of the two is returned, floored at zero.
pub fn gibbs_overshoot(
    f: &FunctionSpec,
    series: &dyn FourierSeries,
    m: usize,
    window_fraction: f64,
) -> Result<f64, SeriesError> {
    check_order(series, m)?;
    if !(window_fraction > 0.0 && window_fraction < 0.5) {
        return Err(SeriesError::InvalidParameter(format!(
            "window fraction must lie in (0, 0.5), got {window_fraction}"
        )));
    }
    let l = f.half_width();
    let start = l * (1.0 - window_fraction);
    let samples = (0..WINDOW_POINTS)
        .into_par_iter()
        .map(|j| {
            let x = grid_node(start, l, j, WINDOW_POINTS);
            Ok([
                series.partial_sum(x, m)?,
                f.value(x),
                series.partial_sum(-x, m)?,
                f.value(-x),
            ])
        })
        .collect::<Result<Vec<_>, SeriesError>>()?;
    let max_of = |k: usize| samples.iter().map(|s| s[k]).fold(f64::NEG_INFINITY, f64::max);
    let min_of = |k: usize| samples.iter().map(|s| s[k]).fold(f64::INFINITY, f64::min);
    let right = max_of(0) - max_of(1);
    let left = min_of(3) - min_of(2);
    Ok(right.max(left).max(0.0))
}

/// Fitted `p` in `|c_n| ~ n^{-p}`: least-squares slope of `log|c_n|` against
/// `log(n+1)` over `n ∈ [max(2, N/4), N]`, skipping magnitudes below `1e-13`.
pub fn decay_exponent(series: &dyn FourierSeries) -> Result<f64, SeriesError> {
    let mags = series.magnitudes();
    let n_max = series.order();
    let first = (n_max / 4).max(2);
    let points: Vec<(f64, f64)> = (first..=n_max)
        .filter(|&n| mags[n] > DECAY_FLOOR)
        .map(|n| (((n + 1) as f64).ln(), mags[n].ln()))
        .collect();
    if points.len() < 4 {
        return Err(SeriesError::InsufficientData { usable: points.len() });
    }
    let count = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / count;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / count;
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    Ok(-sxy / sxx)
}

/// One row of a comparison report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagnosticsRow {
    pub series_kind: &'static str,
    #[serde(rename = "M")]
    pub order: usize,
    pub grid_size: usize,
    pub window_fraction: f64,
    pub endpoint_error_left: f64,
    pub endpoint_error_right: f64,
    pub sup_error: f64,
    pub overshoot: f64,
    pub decay_exponent_classical: Option<f64>,
    pub decay_exponent_antiperiodic: Option<f64>,
}

impl DiagnosticsRow {
    pub const CSV_HEADER: &'static str = "series_kind,M,grid_size,window_fraction,endpoint_error_left,\
endpoint_error_right,sup_error,overshoot,decay_exponent_classical,decay_exponent_antiperiodic";
}

/// Rows for both series at every order in `orders` (orders above either
/// truncation are rejected).
pub fn compare(
    f: &FunctionSpec,
    classical: &ClassicalCoefficients,
    antiperiodic: &AntiperiodicCoefficients,
    orders: &[usize],
    grid_size: usize,
    window_fraction: f64,
) -> Result<Vec<DiagnosticsRow>, SeriesError> {
    let decay_c = decay_exponent(classical).ok();
    let decay_a = decay_exponent(antiperiodic).ok();
    let mut rows = Vec::with_capacity(2 * orders.len());
    for series in [classical as &dyn FourierSeries, antiperiodic] {
        for &m in orders {
            let profile = error_profile(f, series, m, grid_size)?;
            rows.push(DiagnosticsRow {
                series_kind: series.kind().as_str(),
                order: m,
                grid_size,
                window_fraction,
                endpoint_error_left: profile.endpoint_error_left,
                endpoint_error_right: profile.endpoint_error_right,
                sup_error: profile.sup_error,
                overshoot: gibbs_overshoot(f, series, m, window_fraction)?,
                decay_exponent_classical: decay_c,
                decay_exponent_antiperiodic: decay_a,
            });
        }
    }
    Ok(rows)
}
