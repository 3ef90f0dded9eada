//! Antiperiodic Fourier series.
//!
//! A function on `[-L, L]` is shifted by the mean of its end values and
//! expanded in the half-integer harmonics `cos((2n+1)πx/2L)` and
//! `sin((2n+1)πx/2L)`. Unlike the classical Fourier series, the expansion
//! reproduces `f(±L)` even when `f(-L) ≠ f(L)`, shows no Gibbs overshoot at
//! the interval ends, and diagonalises heat problems whose boundary data fix
//! `u(-L)+u(L)` and `u_x(-L)+u_x(L)`.
//!
//! ```
//! use antifourier::{antiperiodic_coefficients, FunctionSpec, NamedFunction, QuadratureConfig};
//! use std::f64::consts::PI;
//!
//! let f = FunctionSpec::named(NamedFunction::Identity, PI).unwrap();
//! let series = antiperiodic_coefficients(&f, 200, &QuadratureConfig::default()).unwrap();
//! assert!((series.partial_sum(PI, 200).unwrap() - PI).abs() < 1e-2);
//! ```

// `!(x > 0.0)` style guards are used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod antiperiodic;
pub mod catalog;
pub mod classical;
pub mod cli;
pub mod diagnostics;
pub mod error;
pub mod heat;
mod projection;
pub mod quadrature;
mod trig;

use serde::{Deserialize, Serialize};

pub use antiperiodic::{
    antiperiodic_coefficients, coefficients_via_periodic_split, half_basis, jordan_midpoint, shift_gamma,
    AntiperiodicCoefficients,
};
pub use catalog::{parse_function_spec, CatalogError, FunctionSpec, NamedFunction, Side};
pub use classical::{classical_coefficients, ClassicalCoefficients};
pub use diagnostics::{decay_exponent, error_profile, gibbs_overshoot, FourierSeries};
pub use error::{Family, SeriesError, SeriesKind};
pub use heat::{eigenpair, solve_heat, verify_solution, HeatProblem, HeatSolution};
pub use quadrature::{integrate, QuadratureConfig, QuadratureError, QuadratureMethod};

/// JSON document holding one coefficient set, tagged by `"kind"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SeriesDocument {
    Classical(ClassicalCoefficients),
    Antiperiodic(AntiperiodicCoefficients),
    Heat(HeatSolution),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documents_are_tagged() {
        let c = ClassicalCoefficients::from_parts(1.0, vec![2.0], vec![]).unwrap();
        let text = serde_json::to_string(&SeriesDocument::Classical(c.clone())).unwrap();
        assert_eq!(text, r#"{"kind":"classical","L":1.0,"N":0,"a":[2.0],"b":[]}"#);
        let a = AntiperiodicCoefficients::from_parts(1.0, 0.5, vec![0.1], vec![0.2]).unwrap();
        let text = serde_json::to_string(&SeriesDocument::Antiperiodic(a.clone())).unwrap();
        assert_eq!(
            text,
            r#"{"kind":"antiperiodic","L":1.0,"N":0,"gamma":0.5,"alpha":[0.1],"beta":[0.2]}"#
        );
        let back: SeriesDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back, SeriesDocument::Antiperiodic(a));
        let h = HeatSolution::from_parts(2.0, 1.0, 1.0, vec![0.3], vec![0.0]).unwrap();
        let text = serde_json::to_string(&SeriesDocument::Heat(h)).unwrap();
        assert_eq!(
            text,
            r#"{"kind":"heat","k":2.0,"L":1.0,"c":1.0,"N":0,"A":[0.3],"B":[0.0]}"#
        );
        assert!(
            serde_json::from_str::<SeriesDocument>(r#"{"kind":"classical","L":1.0,"N":2,"a":[2.0],"b":[]}"#).is_err()
        );
    }
}
