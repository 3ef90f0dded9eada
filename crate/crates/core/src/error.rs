use std::fmt;

use thiserror::Error;

use crate::quadrature::QuadratureError;

/// Which expansion a coefficient belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeriesKind {
    Classical,
    Antiperiodic,
}

impl SeriesKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SeriesKind::Classical => "classical",
            SeriesKind::Antiperiodic => "antiperiodic",
        }
    }
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Cosine (`a_n`, `α_n`) or sine (`b_n`, `β_n`) family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Cosine,
    Sine,
}

#[derive(Debug, Error)]
pub enum SeriesError {
    #[error("order {requested} exceeds the truncation order {available}")]
    OrderExceedsTruncation { requested: usize, available: usize },
    #[error("{series} {family:?} coefficient n = {n}: {source}")]
    Quadrature {
        series: SeriesKind,
        n: usize,
        family: Family,
        #[source]
        source: QuadratureError,
    },
    #[error("need at least 4 coefficients above 1e-13 to fit a decay rate, found {usable}")]
    InsufficientData { usable: usize },
    #[error("time must be non-negative, got {0}")]
    NegativeTime(f64),
    #[error("initial data incompatible with the boundary mean: f(-L) + f(L) = {sum}, expected {expected}")]
    IncompatibleData { sum: f64, expected: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid coefficients: {0}")]
    InvalidCoefficients(String),
    #[error(transparent)]
    Config(#[from] QuadratureError),
}
