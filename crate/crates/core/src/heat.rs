//! Heat equation `u_t = k u_xx` on `(-L, L)` with mean-value boundary data
//!
//! ```text
//! u(x, 0) = f(x)
//! u(-L, t) + u(L, t) = 2c
//! u_x(-L, t) + u_x(L, t) = 0
//! ```
//!
//! solved by separation of variables. With `v = u - c` the boundary data are
//! antiperiodic, the eigenproblem `X'' = λX`, `X(-L) = -X(L)`,
//! `X'(-L) = -X'(L)` has only negative eigenvalues
//! `λ_n = -((2n+1)π/2L)²`, each with the two eigenfunctions
//! `cos((2n+1)πx/2L)` and `sin((2n+1)πx/2L)`, and
//!
//! ```text
//! u(x, t) = c + Σ_n e^{λ_n k t} (A_n cos((2n+1)πx/2L) + B_n sin((2n+1)πx/2L))
//! ```
//!
//! where `A_n`, `B_n` are the antiperiodic coefficients of `f - c`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::antiperiodic::antiperiodic_coefficients;
use crate::catalog::FunctionSpec;
use crate::error::SeriesError;
use crate::quadrature::QuadratureConfig;
use crate::trig::{cos_pi, sin_pi};

/// Largest accepted `|f(-L) + f(L) - 2c|`.
pub const COMPATIBILITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct HeatProblem {
    pub diffusivity: f64,
    pub boundary_mean: f64,
    pub initial: FunctionSpec,
}

impl HeatProblem {
    pub fn new(diffusivity: f64, boundary_mean: f64, initial: FunctionSpec) -> Result<Self, SeriesError> {
        if !(diffusivity > 0.0 && diffusivity.is_finite()) {
            return Err(SeriesError::InvalidParameter(format!(
                "diffusivity must be positive, got {diffusivity}"
            )));
        }
        if !boundary_mean.is_finite() {
            return Err(SeriesError::InvalidParameter("boundary mean must be finite".into()));
        }
        Ok(HeatProblem {
            diffusivity,
            boundary_mean,
            initial,
        })
    }

    pub fn half_width(&self) -> f64 {
        self.initial.half_width()
    }

    fn check_compatible(&self) -> Result<(), SeriesError> {
        let sum = self.initial.antiperiodic_defect();
        let expected = 2.0 * self.boundary_mean;
        if (sum - expected).abs() <= COMPATIBILITY_TOL {
            Ok(())
        } else {
            Err(SeriesError::IncompatibleData { sum, expected })
        }
    }
}

/// `λ_n` with its eigenfunctions `X_n = cos(ω_n x)`, `X̃_n = sin(ω_n x)`,
/// `ω_n = (2n+1)π/2L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenpair {
    pub n: usize,
    pub half_width: f64,
    pub lambda: f64,
}

impl Eigenpair {
    fn harmonic(&self) -> f64 {
        self.n as f64 + 0.5
    }

    pub fn wavenumber(&self) -> f64 {
        self.harmonic() * (PI / self.half_width)
    }

    /// `X_n(x)`
    pub fn cos_mode(&self, x: f64) -> f64 {
        cos_pi(self.harmonic() * (x / self.half_width))
    }

    /// `X̃_n(x)`
    pub fn sin_mode(&self, x: f64) -> f64 {
        sin_pi(self.harmonic() * (x / self.half_width))
    }
}

pub fn eigenpair(n: usize, half_width: f64) -> Eigenpair {
    let omega = (n as f64 + 0.5) * (PI / half_width);
    Eigenpair {
        n,
        half_width,
        lambda: -omega * omega,
    }
}

/// Modal coefficients of a solved heat problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawHeat")]
pub struct HeatSolution {
    k: f64,
    #[serde(rename = "L")]
    half_width: f64,
    c: f64,
    #[serde(rename = "N")]
    order: usize,
    #[serde(rename = "A")]
    cos_coefficients: Vec<f64>,
    #[serde(rename = "B")]
    sin_coefficients: Vec<f64>,
}

#[derive(Deserialize)]
struct RawHeat {
    k: f64,
    #[serde(rename = "L")]
    half_width: f64,
    c: f64,
    #[serde(rename = "N")]
    order: usize,
    #[serde(rename = "A")]
    cos_coefficients: Vec<f64>,
    #[serde(rename = "B")]
    sin_coefficients: Vec<f64>,
}

impl TryFrom<RawHeat> for HeatSolution {
    type Error = SeriesError;

    fn try_from(raw: RawHeat) -> Result<Self, SeriesError> {
        let s = HeatSolution::from_parts(raw.k, raw.half_width, raw.c, raw.cos_coefficients, raw.sin_coefficients)?;
        if s.order != raw.order {
            return Err(SeriesError::InvalidCoefficients(format!(
                "N = {} but {} modes",
                raw.order,
                s.order + 1
            )));
        }
        Ok(s)
    }
}

/// Per-point result of [`verify_solution`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualReport {
    /// `max |D_t u - k D_xx u|` with the central differences applied mode by mode.
    pub max_residual: f64,
    /// Same differences taken on values of [`HeatSolution::eval`]; limited by
    /// cancellation to roughly `1e-16 / h²`.
    pub max_direct_residual: f64,
    /// `h² · max Σ_n |A_n|+|B_n| e^{λ_n k t} (|λ_n k|³/6 + k ω_n⁴/12)`
    pub reference_scale: f64,
    pub step: f64,
    pub points: usize,
}

impl HeatSolution {
    pub fn from_parts(k: f64, half_width: f64, c: f64, a: Vec<f64>, b: Vec<f64>) -> Result<Self, SeriesError> {
        if !(k > 0.0 && k.is_finite() && half_width > 0.0 && half_width.is_finite() && c.is_finite()) {
            return Err(SeriesError::InvalidCoefficients(format!(
                "k = {k}, L = {half_width}, c = {c}"
            )));
        }
        if a.is_empty() || a.len() != b.len() {
            return Err(SeriesError::InvalidCoefficients(format!(
                "need len(A) = len(B) >= 1, got {} and {}",
                a.len(),
                b.len()
            )));
        }
        if a.iter().chain(&b).any(|v| !v.is_finite()) {
            return Err(SeriesError::InvalidCoefficients("non-finite coefficient".into()));
        }
        Ok(HeatSolution {
            k,
            half_width,
            c,
            order: a.len() - 1,
            cos_coefficients: a,
            sin_coefficients: b,
        })
    }

    pub fn diffusivity(&self) -> f64 {
        self.k
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn boundary_mean(&self) -> f64 {
        self.c
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `A_0..A_N`
    pub fn a(&self) -> &[f64] {
        &self.cos_coefficients
    }

    /// `B_0..B_N`
    pub fn b(&self) -> &[f64] {
        &self.sin_coefficients
    }

    fn check(&self, t: f64, m: usize) -> Result<(), SeriesError> {
        if !(t >= 0.0) {
            return Err(SeriesError::NegativeTime(t));
        }
        if m > self.order {
            return Err(SeriesError::OrderExceedsTruncation {
                requested: m,
                available: self.order,
            });
        }
        Ok(())
    }

    /// `e^{λ_n k t}`
    fn decay(&self, n: usize, t: f64) -> f64 {
        (eigenpair(n, self.half_width).lambda * self.k * t).exp()
    }

    /// `u(x, t)` truncated after mode `M`.
    pub fn eval(&self, x: f64, t: f64, m: usize) -> Result<f64, SeriesError> {
        self.check(t, m)?;
        let mut sum = 0.0;
        for n in 0..=m {
            let e = eigenpair(n, self.half_width);
            sum += self.decay(n, t)
                * (self.cos_coefficients[n] * e.cos_mode(x) + self.sin_coefficients[n] * e.sin_mode(x));
        }
        Ok(self.c + sum)
    }

    /// `u_x(x, t)`, differentiated term by term.
    pub fn eval_dx(&self, x: f64, t: f64, m: usize) -> Result<f64, SeriesError> {
        self.check(t, m)?;
        let mut sum = 0.0;
        for n in 0..=m {
            let e = eigenpair(n, self.half_width);
            let w = e.wavenumber();
            sum += self.decay(n, t)
                * w
                * (self.sin_coefficients[n] * e.cos_mode(x) - self.cos_coefficients[n] * e.sin_mode(x));
        }
        Ok(sum)
    }
}

/// Solves the problem to `N` modes.
pub fn solve_heat(p: &HeatProblem, order: usize, cfg: &QuadratureConfig) -> Result<HeatSolution, SeriesError> {
    p.check_compatible()?;
    // Shifting f by the constant c moves only γ; α and β are those of f.
    let coeffs = antiperiodic_coefficients(&p.initial, order, cfg)?;
    let residual_gamma = coeffs.gamma() - p.boundary_mean;
    debug_assert!(residual_gamma.abs() <= COMPATIBILITY_TOL);
    HeatSolution::from_parts(
        p.diffusivity,
        p.half_width(),
        p.boundary_mean,
        coeffs.alpha().to_vec(),
        coeffs.beta().to_vec(),
    )
}

/// Checks `u_t = k u_xx` with second-order central differences of step `h`
/// at every `(x, t)` of `xs × ts` (`t > h` so the time stencil stays in
/// `t ≥ 0`), using all modes of `s`.
pub fn verify_solution(s: &HeatSolution, xs: &[f64], ts: &[f64], h: f64) -> Result<ResidualReport, SeriesError> {
    if !(h > 0.0) {
        return Err(SeriesError::InvalidParameter(format!("step must be positive, got {h}")));
    }
    if let Some(&t) = ts.iter().find(|&&t| !(t > h)) {
        return Err(SeriesError::InvalidParameter(format!(
            "time {t} must exceed the step {h}"
        )));
    }
    let m = s.order;
    let k = s.k;
    let mut report = ResidualReport {
        max_residual: 0.0,
        max_direct_residual: 0.0,
        reference_scale: 0.0,
        step: h,
        points: xs.len() * ts.len(),
    };
    for &t in ts {
        for &x in xs {
            let mut modal = 0.0;
            let mut scale = 0.0;
            for n in 0..=m {
                let e = eigenpair(n, s.half_width);
                let w = e.wavenumber();
                let rate = e.lambda * k;
                let decay = (rate * t).exp();
                let amp = decay * (s.cos_coefficients[n] * e.cos_mode(x) + s.sin_coefficients[n] * e.sin_mode(x));
                // (T(t+h) - T(t-h)) / 2h and (X(x+h) - 2X(x) + X(x-h)) / h² on a single mode.
                let dt = (rate * h).sinh() / h;
                let half = (0.5 * w * h).sin();
                let dxx = -4.0 * half * half / (h * h);
                modal += amp * (dt - k * dxx);
                let size = decay * (s.cos_coefficients[n].abs() + s.sin_coefficients[n].abs());
                scale += size * (rate.abs().powi(3) / 6.0 + k * w.powi(4) / 12.0);
            }
            let u = |x, t| s.eval(x, t, m);
            let direct_t = (u(x, t + h)? - u(x, t - h)?) / (2.0 * h);
            let direct_xx = (u(x + h, t)? - 2.0 * u(x, t)? + u(x - h, t)?) / (h * h);
            report.max_residual = report.max_residual.max(modal.abs());
            report.max_direct_residual = report.max_direct_residual.max((direct_t - k * direct_xx).abs());
            report.reference_scale = report.reference_scale.max(h * h * scale);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::NamedFunction;

    fn alt(n: usize) -> f64 {
        if n.is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    fn scaled_square_problem() -> HeatProblem {
        HeatProblem::new(1.0, 1.0, FunctionSpec::named(NamedFunction::ScaledSquare, PI).unwrap()).unwrap()
    }

    #[test]
    fn eigenvalues() {
        assert_eq!(eigenpair(0, PI).lambda, -0.25);
        assert_eq!(eigenpair(1, PI).lambda, -2.25);
        assert!((eigenpair(0, 1.0).lambda + PI * PI / 4.0).abs() < 1e-15);
        let e = eigenpair(3, 2.0);
        assert_eq!(e.cos_mode(2.0), 0.0);
        assert_eq!(e.cos_mode(-2.0), 0.0);
        assert_eq!(e.sin_mode(-2.0), -e.sin_mode(2.0));
    }

    #[test]
    fn eigenfunctions_satisfy_the_ode() {
        // X'' = λX by central differences
        let h = 1e-4;
        for n in 0..4 {
            let e = eigenpair(n, 1.7);
            for &x in &[-1.2, 0.3, 1.6] {
                for f in [|e: &Eigenpair, x| e.cos_mode(x), |e: &Eigenpair, x| e.sin_mode(x)] {
                    let d2 = (f(&e, x + h) - 2.0 * f(&e, x) + f(&e, x - h)) / (h * h);
                    assert!((d2 - e.lambda * f(&e, x)).abs() < 1e-5 * (1.0 + e.lambda.abs()));
                }
            }
        }
    }

    #[test]
    fn scaled_square_coefficients() {
        let s = solve_heat(&scaled_square_problem(), 10, &QuadratureConfig::default()).unwrap();
        for n in 0..=10 {
            let k = 2.0 * n as f64 + 1.0;
            assert!(s.b()[n].abs() <= 1e-9);
            assert!((s.a()[n] + 32.0 * alt(n) / (PI.powi(3) * k.powi(3))).abs() <= 1e-8);
        }
        assert!((s.eval(0.0, 50.0, 10).unwrap() - 1.0).abs() <= 1e-5);
        assert!(s.eval_dx(0.0, 0.0, 10).unwrap().abs() <= 5e-3);
    }

    #[test]
    fn shifted_identity_reuses_identity_coefficients() {
        let f = FunctionSpec::polynomial(vec![1.0, 1.0], PI).unwrap();
        let s = solve_heat(
            &HeatProblem::new(0.5, 1.0, f).unwrap(),
            12,
            &QuadratureConfig::default(),
        )
        .unwrap();
        for n in 0..=12 {
            let k = 2.0 * n as f64 + 1.0;
            assert!(s.a()[n].abs() <= 1e-9);
            assert!((s.b()[n] - 8.0 * alt(n) / (PI * k * k)).abs() <= 1e-9);
        }
    }

    #[test]
    fn equilibrium() {
        let f = FunctionSpec::named(NamedFunction::Const(1.25), 2.0).unwrap();
        let s = solve_heat(
            &HeatProblem::new(3.0, 1.25, f).unwrap(),
            6,
            &QuadratureConfig::default(),
        )
        .unwrap();
        assert!(s.a().iter().chain(s.b()).all(|&v| v == 0.0));
        for &(x, t) in &[(0.0, 0.0), (-2.0, 1.0), (1.3, 7.0)] {
            assert_eq!(s.eval(x, t, 6).unwrap(), 1.25);
            assert_eq!(s.eval_dx(x, t, 6).unwrap(), 0.0);
        }
        let r = verify_solution(&s, &[-1.0, 0.0, 1.0], &[0.5, 1.0], 1e-3).unwrap();
        assert_eq!(r.max_residual, 0.0);
        assert!(r.max_direct_residual < 1e-9);
    }

    #[test]
    fn incompatible_data() {
        let f = FunctionSpec::named(NamedFunction::Identity, PI).unwrap();
        let p = HeatProblem::new(1.0, 1.0, f).unwrap();
        assert!(matches!(
            solve_heat(&p, 4, &QuadratureConfig::default()),
            Err(SeriesError::IncompatibleData { .. })
        ));
        assert!(HeatProblem::new(0.0, 1.0, FunctionSpec::named(NamedFunction::Identity, PI).unwrap()).is_err());
    }

    #[test]
    fn time_and_order_errors() {
        let s = HeatSolution::from_parts(1.0, 1.0, 0.0, vec![1.0, 0.5], vec![0.0, 0.25]).unwrap();
        assert!(matches!(s.eval(0.0, -1e-3, 1), Err(SeriesError::NegativeTime(_))));
        assert!(matches!(s.eval_dx(0.0, f64::NAN, 1), Err(SeriesError::NegativeTime(_))));
        assert!(matches!(
            s.eval(0.0, 1.0, 2),
            Err(SeriesError::OrderExceedsTruncation { .. })
        ));
        assert!(verify_solution(&s, &[0.0], &[1e-4], 1e-3).is_err());
    }

    #[test]
    fn initial_time_matches_antiperiodic_sum() {
        let f = FunctionSpec::polynomial(vec![1.0, 0.5, -0.3], 1.5).unwrap();
        let c = 0.5 * f.antiperiodic_defect();
        let cfg = QuadratureConfig::default();
        let s = solve_heat(&HeatProblem::new(2.0, c, f.clone()).unwrap(), 20, &cfg).unwrap();
        let a = antiperiodic_coefficients(&f, 20, &cfg).unwrap();
        for &x in &[-1.5, -0.4, 0.0, 0.9, 1.5] {
            assert_eq!(s.eval(x, 0.0, 20).unwrap(), a.partial_sum(x, 20).unwrap());
        }
    }

    #[test]
    fn json_shape() {
        let s = HeatSolution::from_parts(1.0, PI, 1.0, vec![0.5], vec![0.0]).unwrap();
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"k": 1.0, "L": PI, "c": 1.0, "N": 0, "A": [0.5], "B": [0.0]})
        );
    }
}
