//! Inner products of a [`FunctionSpec`] with trigonometric weights.
//!
//! Everything the series modules integrate has the form
//! `∫_{-L}^{L} (f(x) - offset) · m(x) · w(x) dx` where `w` is `cos(κπx/L)` or
//! `sin(κπx/L)` and `m` is an optional second factor of the same kind.
//!
//! Sampled tables against a single weight use exact panel sums of
//! (linear × trigonometric) products. Everything else goes through adaptive
//! quadrature on `[0, L]` after folding `x` and `-x` together, split at the
//! breakpoints of `f`; piece ends use one-sided limits of `f`. Folding makes
//! the integral of an odd integrand exactly zero.

use num_complex::Complex64;

use crate::catalog::{Body, FunctionSpec, Samples, Side};
use crate::quadrature::{self, QuadratureConfig, QuadratureError};
use crate::trig::{cos_pi, sin_pi};

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Wave {
    /// `cos(κπx/L)`
    Cos(f64),
    /// `sin(κπx/L)`
    Sin(f64),
}

impl Wave {
    /// Value at `x` given `t = x / L`.
    #[inline]
    pub(crate) fn at(self, t: f64) -> f64 {
        match self {
            Wave::Cos(k) => cos_pi(k * t),
            Wave::Sin(k) => sin_pi(k * t),
        }
    }
}

pub(crate) struct Projection<'a> {
    pub spec: &'a FunctionSpec,
    pub offset: f64,
    pub modulation: Option<Wave>,
}

impl Projection<'_> {
    pub(crate) fn against(&self, wave: Wave, cfg: &QuadratureConfig) -> Result<f64, QuadratureError> {
        match (self.spec.body(), self.modulation) {
            (Body::Sampled(s), None) => Ok(sampled_exact(s, self.offset, wave, self.spec.half_width())),
            _ => self.folded(wave, cfg),
        }
    }

    fn folded(&self, wave: Wave, cfg: &QuadratureConfig) -> Result<f64, QuadratureError> {
        cfg.validate()?;
        let l = self.spec.half_width();
        let mut cuts: Vec<f64> = self
            .spec
            .breakpoints()
            .into_iter()
            .map(f64::abs)
            .filter(|&b| b > 0.0 && b < l)
            .collect();
        cuts.push(0.0);
        cuts.push(l);
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();

        let g = |x: f64, side: Side| {
            let t = x / l;
            let m = self.modulation.map_or(1.0, |m| m.at(t));
            (self.spec.limit(x, side) - self.offset) * m * wave.at(t)
        };

        let mut total = 0.0;
        for piece in cuts.windows(2) {
            let (lo, hi) = (piece[0], piece[1]);
            let share = (hi - lo) / l;
            let panels = ((cfg.base_panels as f64 * share / 2.0).ceil() as usize).max(1) * 2;
            let piece_cfg = QuadratureConfig {
                abs_tol: cfg.abs_tol * share,
                base_panels: panels,
                ..*cfg
            };
            let h = |x: f64| {
                if x == lo {
                    g(x, Side::Right) + g(-x, Side::Left)
                } else if x == hi {
                    g(x, Side::Left) + g(-x, Side::Right)
                } else {
                    g(x, Side::Right) + g(-x, Side::Right)
                }
            };
            total += quadrature::integrate(h, lo, hi, &piece_cfg)?;
        }
        Ok(total)
    }
}

/// `∫_0^1 e^{iθs} ds` and `∫_0^1 s e^{iθs} ds`.
fn segment_moments(theta: f64) -> (Complex64, Complex64) {
    if theta.abs() < 0.5 {
        // Power series; 24 terms leave a remainder below 1e-30.
        let z = Complex64::new(0.0, theta);
        let mut term = Complex64::new(1.0, 0.0); // (iθ)^k / k!
        let mut m0 = Complex64::new(0.0, 0.0);
        let mut m1 = Complex64::new(0.0, 0.0);
        for k in 0..24 {
            m0 += term / (k as f64 + 1.0);
            m1 += term / (k as f64 + 2.0);
            term = term * z / (k as f64 + 1.0);
        }
        (m0, m1)
    } else {
        let e = Complex64::new(theta.cos(), theta.sin());
        let iz = Complex64::new(0.0, theta);
        let m0 = (e - 1.0) / iz;
        let m1 = e / iz + (e - 1.0) / (theta * theta);
        (m0, m1)
    }
}

fn sampled_exact(s: &Samples, offset: f64, wave: Wave, l: f64) -> f64 {
    let (kappa, take_sine) = match wave {
        Wave::Cos(k) => (k, false),
        Wave::Sin(k) => (k, true),
    };
    let omega = kappa * std::f64::consts::PI / l;
    let mut total = 0.0;
    for (xw, yw) in s.xs().windows(2).zip(s.ys().windows(2)) {
        let h = xw[1] - xw[0];
        let (u0, u1) = (yw[0] - offset, yw[1] - offset);
        let (m0, m1) = segment_moments(omega * h);
        let t0 = kappa * (xw[0] / l);
        let phase = Complex64::new(cos_pi(t0), sin_pi(t0));
        let seg = phase * (m0 * u0 + m1 * (u1 - u0)) * h;
        total += if take_sine { seg.im } else { seg.re };
    }
    total
}
