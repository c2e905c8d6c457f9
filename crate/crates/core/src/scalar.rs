//! Exact rational scalars and quantum (Gaussian) integers.

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

/// Ground-field scalar: an exact rational with arbitrary-precision
/// numerator and denominator, always kept reduced.
pub type Scalar = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("q must be nonzero")]
    ZeroQ,
    #[error("cannot parse {0:?} as an exact rational")]
    Parse(String),
}

pub fn int(k: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(k))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// `base^k` for any integer exponent; negative exponents invert.
pub fn pow(base: &Scalar, k: i64) -> Scalar {
    if k == 0 {
        return Scalar::one();
    }
    let b = if k < 0 { base.recip() } else { base.clone() };
    let mut acc = Scalar::one();
    for _ in 0..k.unsigned_abs() {
        acc *= &b;
    }
    acc
}

/// The Gaussian integer `[k] = q^(k-1) + q^(k-3) + ... + q^(-k+1)`,
/// with `[0] = 0` and `[-k] = -[k]`.
pub fn gaussian_int(k: i64, q: &Scalar) -> Result<Scalar, ScalarError> {
    if q.is_zero() {
        return Err(ScalarError::ZeroQ);
    }
    if k == 0 {
        return Ok(Scalar::zero());
    }
    if k < 0 {
        return Ok(-gaussian_int(-k, q)?);
    }
    let mut acc = Scalar::zero();
    let mut term = pow(q, k - 1);
    let qinv2 = pow(q, -2);
    for _ in 0..k {
        acc += &term;
        term *= &qinv2;
    }
    Ok(acc)
}

/// Renders a scalar as `p` or `p/q`, the format used in all JSON output.
pub fn format_scalar(s: &Scalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

pub fn parse_scalar(text: &str) -> Result<Scalar, ScalarError> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let p: BigInt = num.parse().map_err(|_| ScalarError::Parse(text.into()))?;
    let q: BigInt = den.parse().map_err(|_| ScalarError::Parse(text.into()))?;
    if q.is_zero() {
        return Err(ScalarError::Parse(text.into()));
    }
    Ok(Scalar::new(p, q))
}

pub fn is_negative(s: &Scalar) -> bool {
    s.is_negative()
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_small_values() {
        // [1] = 1 at any q
        assert_eq!(gaussian_int(1, &ratio(7, 3)).unwrap(), int(1));
        // [2] at q = 1 is 2
        assert_eq!(gaussian_int(2, &int(1)).unwrap(), int(2));
        // [2] at q = 2 is 2 + 1/2
        assert_eq!(gaussian_int(2, &int(2)).unwrap(), ratio(5, 2));
        // [3] at q = 2 is 4 + 1 + 1/4
        assert_eq!(gaussian_int(3, &int(2)).unwrap(), ratio(21, 4));
        // [4] at q = 2 is 8 + 2 + 1/2 + 1/8
        assert_eq!(gaussian_int(4, &int(2)).unwrap(), ratio(85, 8));
    }

    #[test]
    fn gaussian_sign_and_zero() {
        assert_eq!(gaussian_int(0, &int(2)).unwrap(), int(0));
        assert_eq!(
            gaussian_int(-4, &int(2)).unwrap(),
            -gaussian_int(4, &int(2)).unwrap()
        );
        assert_eq!(gaussian_int(2, &int(0)), Err(ScalarError::ZeroQ));
    }

    #[test]
    fn scalar_round_trip() {
        for s in [int(0), int(-7), ratio(21, -4), ratio(85, 8)] {
            assert_eq!(parse_scalar(&format_scalar(&s)).unwrap(), s);
        }
        assert_eq!(format_scalar(&ratio(-21, 4)), "-21/4");
        assert_eq!(format_scalar(&int(5)), "5");
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(14, 7), BigInt::from(3432));
        assert_eq!(binomial(0, 0), BigInt::from(1));
    }
}
