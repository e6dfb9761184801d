//! Coefficient rings for the kernel.
//!
//! Every identity in this crate is checked either exactly over arbitrary
//! precision rationals ([`Rat`]) or to a caller-supplied tolerance over
//! `f64`. The [`Scalar`] trait is the small common surface both rings
//! provide; all field, form, current and stress types are generic over it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Exact rational coefficients.
pub type Rat = BigRational;

pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + Debug
    + Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True when arithmetic is exact and zero residuals can be demanded.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn abs(&self) -> Self;
    fn to_f64(&self) -> f64;

    /// Parses an integer `p`, a ratio `p/q`, or a decimal literal `a.b`.
    /// Decimal input is converted exactly (`0.25` becomes `1/4`).
    fn parse(text: &str) -> Option<Self>;

    fn max_with(self, other: Self) -> Self {
        if self < other {
            other
        } else {
            self
        }
    }
}

impl Scalar for Rat {
    const EXACT: bool = true;

    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }

    fn one() -> Self {
        <BigRational as One>::one()
    }

    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn parse(text: &str) -> Option<Self> {
        parse_rational(text)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn parse(text: &str) -> Option<Self> {
        let text = text.trim();
        if let Some((num, den)) = text.split_once('/') {
            let num: f64 = num.trim().parse().ok()?;
            let den: f64 = den.trim().parse().ok()?;
            if den == 0.0 {
                return None;
            }
            return Some(num / den);
        }
        text.parse().ok()
    }
}

fn parse_rational(text: &str) -> Option<Rat> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if Zero::is_zero(&den) {
            return None;
        }
        return Some(BigRational::new(num, den));
    }
    if let Some((int_part, frac_part)) = text.split_once('.') {
        let negative = int_part.trim_start().starts_with('-');
        let int_part = if int_part == "-" || int_part.is_empty() {
            BigInt::from(0)
        } else {
            int_part.parse().ok()?
        };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let numer: BigInt = frac_part.parse().ok()?;
        let denom = BigInt::from(10).pow(frac_part.len() as u32);
        let frac = BigRational::new(numer, denom);
        let whole = BigRational::from_integer(int_part);
        return Some(if negative { whole - frac } else { whole + frac });
    }
    let int: BigInt = text.parse().ok()?;
    Some(BigRational::from_integer(int))
}

/// `(-1)^k` in the scalar ring.
pub fn sign_pow<S: Scalar>(k: usize) -> S {
    if k % 2 == 0 {
        S::one()
    } else {
        -S::one()
    }
}

/// Scalar from an `i8` sign in `{-1, 0, 1}`.
pub fn from_sign<S: Scalar>(sign: i8) -> S {
    match sign {
        0 => S::zero(),
        s if s > 0 => S::one(),
        _ => -S::one(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_ratios_and_decimals() {
        assert_eq!(Rat::parse("3").unwrap(), Rat::from_int(3));
        assert_eq!(Rat::parse("-3/4").unwrap(), Rat::from_ratio(-3, 4));
        assert_eq!(Rat::parse("0.5").unwrap(), Rat::from_ratio(1, 2));
        assert_eq!(Rat::parse("-1.25").unwrap(), Rat::from_ratio(-5, 4));
        assert_eq!(Rat::parse(".5").unwrap(), Rat::from_ratio(1, 2));
        assert!(Rat::parse("1/0").is_none());
        assert!(Rat::parse("abc").is_none());
    }

    #[test]
    fn float_parse_accepts_ratios() {
        assert_eq!(<f64 as Scalar>::parse("1/4").unwrap(), 0.25);
        assert_eq!(<f64 as Scalar>::parse("-2.5").unwrap(), -2.5);
    }

    #[test]
    fn sign_pow_alternates() {
        assert_eq!(sign_pow::<Rat>(0), Rat::from_int(1));
        assert_eq!(sign_pow::<Rat>(1), Rat::from_int(-1));
        assert_eq!(sign_pow::<Rat>(4), Rat::from_int(1));
    }
}
