//! Sine and cosine of `π·t`.
//!
//! The argument is reduced modulo 2 before multiplying by π, so integer and
//! half-integer arguments give exact zeros and exact `±1`, and `sin_pi(-t)`
//! is bitwise `-sin_pi(t)`. The endpoint identities of both series and of the
//! heat solution rely on this.

use std::f64::consts::PI;

/// `sin(π t)`.
pub fn sin_pi(t: f64) -> f64 {
    if !t.is_finite() {
        return f64::NAN;
    }
    if t < 0.0 {
        return -sin_pi(-t);
    }
    // r in [0, 2); every step below is exact by Sterbenz.
    let mut r = t % 2.0;
    let mut sign = 1.0;
    if r >= 1.0 {
        r -= 1.0;
        sign = -1.0;
    }
    // sin(π r) = sin(π (1 - r)) on [0, 1]
    if r > 0.5 {
        r = 1.0 - r;
    }
    let v = if r <= 0.25 {
        (PI * r).sin()
    } else {
        (PI * (0.5 - r)).cos()
    };
    sign * v
}

/// `cos(π t)`.
pub fn cos_pi(t: f64) -> f64 {
    if !t.is_finite() {
        return f64::NAN;
    }
    let mut r = t.abs() % 2.0;
    if r > 1.0 {
        r = 2.0 - r;
    }
    // r in [0, 1]; cos(π r) = -cos(π (1 - r))
    let mut sign = 1.0;
    if r > 0.5 {
        r = 1.0 - r;
        sign = -1.0;
    }
    let v = if r <= 0.25 {
        (PI * r).cos()
    } else {
        (PI * (0.5 - r)).sin()
    };
    sign * v
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn exact_at_integers_and_half_integers() {
        for k in -50..=50 {
            let t = k as f64;
            assert_eq!(sin_pi(t), 0.0);
            assert_eq!(cos_pi(t), if k % 2 == 0 { 1.0 } else { -1.0 });
            let h = t + 0.5;
            assert_eq!(cos_pi(h), 0.0);
            assert_eq!(sin_pi(h).abs(), 1.0);
        }
        assert_eq!(sin_pi(0.5), 1.0);
        assert_eq!(sin_pi(1.5), -1.0);
        assert_eq!(sin_pi(-0.5), -1.0);
    }

    #[test]
    fn non_finite_is_nan() {
        assert!(sin_pi(f64::INFINITY).is_nan());
        assert!(cos_pi(f64::NAN).is_nan());
    }

    proptest! {
        #[test]
        fn agrees_with_libm(t in -1.0e3f64..1.0e3) {
            prop_assert!((sin_pi(t) - (PI * t).sin()).abs() < 1e-12);
            prop_assert!((cos_pi(t) - (PI * t).cos()).abs() < 1e-12);
        }

        #[test]
        fn symmetry_is_bitwise(t in -1.0e3f64..1.0e3) {
            prop_assert_eq!(sin_pi(-t), -sin_pi(t));
            prop_assert_eq!(cos_pi(-t), cos_pi(t));
        }
    }
}
