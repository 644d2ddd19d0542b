//! Scalar fields used by every computation: exact rationals or `f64`.
//!
//! Exact mode is the default for construction and existence decisions. Float
//! mode compares against zero with a relative tolerance scaled by the data.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num::BigRational;

/// Relative zero tolerance applied in float mode.
pub const FLOAT_REL_TOL: f64 = 1e-10;

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    const EXACT: bool;

    fn from_rational(r: &Rational) -> Self;

    fn to_f64(&self) -> f64;

    /// Zero test. `scale` is the magnitude of the data the value was computed
    /// from; exact scalars ignore it.
    fn is_negligible(&self, scale: f64) -> bool;

    /// Lossless text form for exact scalars, shortest round-trip form for floats.
    fn to_text(&self) -> String;

    /// -1, 0 or 1; exact for rationals of any magnitude.
    fn sign(&self) -> i8;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            if self.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }

    fn is_negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }

    fn sign(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_negative() {
            -1
        } else {
            1
        }
    }

    fn to_text(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(r: &Rational) -> Self {
        Scalar::to_f64(r)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_negligible(&self, scale: f64) -> bool {
        self.abs() <= FLOAT_REL_TOL * scale.max(f64::MIN_POSITIVE)
    }

    fn sign(&self) -> i8 {
        if *self > 0.0 {
            1
        } else if *self < 0.0 {
            -1
        } else {
            0
        }
    }

    fn to_text(&self) -> String {
        format!("{self:?}")
    }
}

/// Parses `"3"`, `"-1/2"`, `"0.125"` or `"1.5e-3"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Invalid(format!("cannot parse coefficient {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], i64::from_str(&s[pos + 1..]).map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(BigInt::from_str(&all_digits).map_err(|_| bad())?);
    let shift = exponent - frac_part.len() as i64;
    if shift.unsigned_abs() > 4096 {
        return Err(bad());
    }
    let ten = Rational::from_integer(BigInt::from(10));
    let power = num::traits::pow(ten, shift.unsigned_abs() as usize);
    if shift >= 0 {
        value *= power;
    } else {
        value /= power;
    }
    Ok(if negative { -value } else { value })
}

/// Largest magnitude in a slice, used as the scale for float-mode zero tests.
pub fn max_magnitude<S: Scalar>(values: &[S]) -> f64 {
    values.iter().map(Scalar::abs_f64).fold(0.0, f64::max)
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rational_forms() {
        assert_eq!(parse_rational("-1/2").unwrap(), rational(-1, 2));
        assert_eq!(parse_rational("0.125").unwrap(), rational(1, 8));
        assert_eq!(parse_rational("1.5e-3").unwrap(), rational(3, 2000));
        assert_eq!(parse_rational("2E2").unwrap(), rational(200, 1));
        assert_eq!(parse_rational("+.5").unwrap(), rational(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn text_forms() {
        assert_eq!(rational(6, 4).to_text(), "3/2");
        assert_eq!(rational(-4, 2).to_text(), "-2");
        assert_eq!(0.5f64.to_text(), "0.5");
    }

    #[test]
    fn float_zero_test_is_relative() {
        assert!(1e-12f64.is_negligible(1.0));
        assert!(!1e-12f64.is_negligible(1e-6));
        assert!(!rational(1, 1_000_000_000).is_negligible(1e30));
    }
}
