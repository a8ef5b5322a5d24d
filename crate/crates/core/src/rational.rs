//! Exact fractions over `i64` with checked arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(Ratio<i64>);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::ZeroDenominator);
        }
        if numer == i64::MIN || denom == i64::MIN {
            return Err(Error::Overflow);
        }
        Ok(Rational(Ratio::new(numer, denom)))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(Ratio::from_integer(n))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.0.checked_add(&o.0).map(Rational).ok_or(Error::Overflow)
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.0.checked_sub(&o.0).map(Rational).ok_or(Error::Overflow)
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.0.checked_mul(&o.0).map(Rational).ok_or(Error::Overflow)
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        self.0.checked_div(&o.0).map(Rational).ok_or(Error::Overflow)
    }

    /// `self * k` for an integer `k`.
    pub fn scale(&self, k: i64) -> Result<Self> {
        self.checked_mul(&Rational::from_integer(k))
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Largest integer not above `self`.
    pub fn floor(&self) -> i64 {
        num_integer::Integer::div_floor(&self.numer(), &self.denom())
    }

    /// Compares `a/b` with `c/d` for positive `b`, `d` without building fractions.
    pub fn cmp_fractions(a: i64, b: i64, c: i64, d: i64) -> Ordering {
        debug_assert!(b > 0 && d > 0);
        ((a as i128) * (d as i128)).cmp(&((c as i128) * (b as i128)))
    }
}

macro_rules! op {
    ($tr:ident, $m:ident, $c:ident) => {
        impl std::ops::$tr for Rational {
            type Output = Rational;
            fn $m(self, o: Rational) -> Rational {
                self.$c(&o).expect("rational overflow")
            }
        }
    };
}
op!(Add, add, checked_add);
op!(Sub, sub, checked_sub);
op!(Mul, mul, checked_mul);
op!(Div, div, checked_div);

impl std::ops::Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl std::ops::AddAssign for Rational {
    fn add_assign(&mut self, o: Rational) {
        *self = *self + o;
    }
}

impl std::ops::SubAssign for Rational {
    fn sub_assign(&mut self, o: Rational) {
        *self = *self - o;
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(it: I) -> Rational {
        it.fold(Rational::zero(), |a, b| a + b)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

/// Always `p/q`, including integers (`5/1`).
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseRational(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            Some((a, b)) => {
                let a: i64 = a.trim().parse().map_err(|_| bad())?;
                let b: i64 = b.trim().parse().map_err(|_| bad())?;
                Rational::new(a, b)
            }
            None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalizes_sign_and_gcd() {
        let r = Rational::new(6, -4).unwrap();
        assert_eq!((r.numer(), r.denom()), (-3, 2));
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(Rational::from_integer(5).to_string(), "5/1");
    }

    #[test]
    fn zero_denominator_and_overflow_are_errors() {
        assert_eq!(Rational::new(1, 0), Err(Error::ZeroDenominator));
        let big = Rational::from_integer(i64::MAX);
        assert_eq!(big.checked_add(&Rational::one()), Err(Error::Overflow));
        assert_eq!(big.checked_mul(&Rational::from_integer(2)), Err(Error::Overflow));
    }

    #[test]
    fn parse_forms() {
        assert_eq!("9/2".parse::<Rational>().unwrap(), Rational::new(9, 2).unwrap());
        assert_eq!("4".parse::<Rational>().unwrap(), Rational::from_integer(4));
        assert!("x/2".parse::<Rational>().is_err());
        assert!("1/0".parse::<Rational>().is_err());
    }

    #[test]
    fn json_is_string() {
        let r = Rational::new(22, 5).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, "\"22/5\"");
        assert_eq!(serde_json::from_str::<Rational>(&s).unwrap(), r);
    }

    proptest! {
        #[test]
        fn reduced_and_ordered(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            let x = Rational::new(a, b).unwrap();
            let y = Rational::new(c, d).unwrap();
            prop_assert_eq!(num_integer::gcd(x.numer(), x.denom()), 1);
            prop_assert!(x.denom() >= 1);
            prop_assert_eq!(x.cmp(&y), Rational::cmp_fractions(a, b, c, d));
            prop_assert_eq!((x + y) - y, x);
            prop_assert_eq!(x.floor() as i128, num_integer::Integer::div_floor(&(a as i128), &(b as i128)));
        }
    }
}
