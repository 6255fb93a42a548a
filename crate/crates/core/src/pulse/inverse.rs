//! Inverse hyperbolic functions through their logarithmic identities.
//!
//! These avoid relying on platform `asinh`/`acosh` implementations so the
//! transition functions evaluate identically everywhere.

use crate::scalar::{lit, Scalar};

/// `asinh(y) = ln(y + sqrt(y² + 1))`, odd.
pub fn asinh<F: Scalar>(y: F) -> F {
    let a = y.abs();
    let r = if a > F::one() / F::epsilon().sqrt() {
        // y² would lose the +1 (or overflow)
        a.ln() + F::LN_2()
    } else {
        (a + a * a / (F::one() + (a * a + F::one()).sqrt())).ln_1p()
    };
    if y.is_sign_negative() {
        -r
    } else {
        r
    }
}

/// `acsch(x) = asinh(1/x)`, defined for `x ≠ 0`; `acsch(±∞) = 0`.
pub fn acsch<F: Scalar>(x: F) -> F {
    asinh(x.recip())
}

/// `asech(x) = ln((1 + sqrt(1 − x²)) / x)` on `(0, 1]`.
pub fn asech<F: Scalar>(x: F) -> F {
    (F::one() + (F::one() - x * x).sqrt()).ln() - x.ln()
}

/// `acoth(y) = ½ ln((y + 1)/(y − 1))` for `|y| > 1`.
pub fn acoth<F: Scalar>(y: F) -> F {
    let half = lit::<F>(0.5);
    let a = y.abs();
    let r = half * (lit::<F>(2.0) / (a - F::one())).ln_1p();
    if y.is_sign_negative() {
        -r
    } else {
        r
    }
}

/// `acosh(c) = ln(c + sqrt(c² − 1))` for `c ≥ 1`.
pub fn acosh<F: Scalar>(c: F) -> F {
    if c > F::one() / F::epsilon().sqrt() {
        c.ln() + F::LN_2()
    } else {
        (c + (c * c - F::one()).sqrt()).ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_std_on_moderate_arguments() {
        for &x in &[1e-6, 0.1, 0.5, 1.0, 3.0, 250.0] {
            assert!((asinh(x) - f64::asinh(x)).abs() < 1e-15 * (1.0 + x.abs()));
            assert!((asinh(-x) + f64::asinh(x)).abs() < 1e-15 * (1.0 + x.abs()));
            assert!((acsch(x) - f64::asinh(1.0 / x)).abs() < 1e-14);
        }
        for &x in &[1e-9, 0.01, 0.3, 0.5, 0.99, 1.0] {
            let expect = f64::acosh(1.0 / x);
            assert!((asech(x) - expect).abs() < 1e-14 * expect.max(1.0), "{x}");
        }
        for &y in &[1.0001f64, 1.5, 2.0, 1e3] {
            let expect = 0.5 * ((y + 1.0) / (y - 1.0)).ln();
            assert!((acoth(y) - expect).abs() < 1e-14, "{y}");
            assert!((acoth(-y) + expect).abs() < 1e-14);
        }
        for &c in &[1.0, 1.1, 10.0, 1e9] {
            assert!((acosh(c) - f64::acosh(c)).abs() < 1e-14 * f64::acosh(c).max(1.0));
        }
    }

    #[test]
    fn limits_at_infinity() {
        assert_eq!(acsch(f64::INFINITY), 0.0);
        assert_eq!(acsch(f64::NEG_INFINITY), 0.0);
        assert_eq!(acoth(f64::INFINITY), 0.0);
        assert!(asech(0.0f64).is_infinite());
        assert!(asinh(1e300f64).is_finite());
    }
}
