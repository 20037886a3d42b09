//! Number backends: exact arbitrary-precision rationals and `f64`.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Exact rational number used for weights and the exact backend.
pub type Rational = BigRational;

/// Which scalar backend a computation runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Exact,
    Float,
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Backend::Exact),
            "float" => Ok(Backend::Float),
            other => Err(Error::Parse(format!("unknown backend `{other}`"))),
        }
    }
}

/// Field operations shared by both backends.
pub trait Scalar:
    num_traits::Num + Signed + Clone + PartialOrd + Debug + Display + Send + Sync + 'static
{
    /// True when arithmetic is exact and comparisons need no tolerance.
    const EXACT: bool;

    fn from_rational(r: &Rational) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&Rational::new(num.into(), den.into()))
    }

    fn from_usize(n: usize) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn to_f64(&self) -> f64;

    /// `self -= a * b`, the inner kernel of elimination.
    fn sub_mul_assign(&mut self, a: &Self, b: &Self);

    /// `self += a * b`.
    fn add_mul_assign(&mut self, a: &Self, b: &Self);

    /// Inverse of a symmetric positive definite matrix.
    fn invert_spd(m: &Matrix<Self>) -> Result<Matrix<Self>> {
        m.inverse()
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self -= a * b;
    }

    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self += a * b;
    }

    fn invert_spd(m: &Matrix<Self>) -> Result<Matrix<Self>> {
        crate::matrix::rational_inverse(m)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }

    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    fn invert_spd(m: &Matrix<Self>) -> Result<Matrix<Self>> {
        let chol = m.to_nalgebra().cholesky().ok_or(Error::Singular)?;
        Ok(Matrix::from_nalgebra(&chol.inverse()))
    }
}

/// Parses `"3"`, `"-3/4"`, `"0.125"` or `"1e-3"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(BigInt::from_str(&digits).map_err(|_| bad())?);
    let scale = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Ok(if negative { -value } else { value })
}

/// Converts a finite float to the rational its shortest decimal form denotes.
pub fn rational_from_f64(x: f64) -> Result<Rational> {
    if !x.is_finite() {
        return Err(Error::Parse(format!("non-finite number {x}")));
    }
    if x.fract() == 0.0 && x.abs() < 1e15 {
        return Ok(Rational::from_integer(BigInt::from_f64(x).unwrap_or_default()));
    }
    parse_rational(&format!("{x}"))
}

pub(crate) fn rational_one() -> Rational {
    Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/4").unwrap(), q(3, 4));
        assert_eq!(parse_rational(" -6/8 ").unwrap(), q(-3, 4));
        assert_eq!(parse_rational("0.125").unwrap(), q(1, 8));
        assert_eq!(parse_rational("2").unwrap(), q(2, 1));
        assert_eq!(parse_rational("1.5e2").unwrap(), q(150, 1));
        assert_eq!(parse_rational("25e-2").unwrap(), q(1, 4));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "1/0", "abc", "1.2.3", "--1", "e5"] {
            assert!(parse_rational(s).is_err(), "{s}");
        }
    }

    #[test]
    fn float_conversion_uses_shortest_decimal() {
        assert_eq!(rational_from_f64(0.1).unwrap(), q(1, 10));
        assert_eq!(rational_from_f64(3.0).unwrap(), q(3, 1));
        assert!(rational_from_f64(f64::NAN).is_err());
    }
}
