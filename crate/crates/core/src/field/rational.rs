use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Field;
use crate::error::ArithError;
use crate::linalg::Matrix;

/// An arbitrary-precision rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, ArithError> {
        let d: BigInt = denom.into();
        if d.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), d)))
    }

    pub fn from_big(r: BigRational) -> Self {
        Rational(r)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }
}

impl FromStr for Rational {
    type Err = ArithError;

    /// Accepts `n` or `p/q` with optional leading sign.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ArithError::DivisionByZero;
        match s.split_once('/') {
            Some((p, q)) => {
                let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
                let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
                Rational::new(p, q)
            }
            None => Ok(Rational::from(BigInt::from_str(s).map_err(|_| bad())?)),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }

    fn one() -> Self {
        Rational(BigRational::one())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }

    fn neg(&self) -> Self {
        Rational(-&self.0)
    }

    fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            Err(ArithError::DivisionByZero)
        } else {
            Ok(Rational(self.0.recip()))
        }
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn pivot_cost(&self) -> usize {
        (self.0.numer().bits() + self.0.denom().bits()) as usize
    }

    fn matrix_rank(m: &Matrix<Self>) -> usize {
        crate::linalg::rational_rank(m)
    }

    fn descriptor() -> String {
        "Q".to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d).unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(q(2, -4), q(-1, 2));
        assert_eq!(q(0, 7).denom(), &BigInt::from(1));
        assert_eq!(q(1, 2).add(&q(1, 3)), q(5, 6));
    }

    #[test]
    fn zero_division() {
        assert_eq!(Rational::new(1, 0), Err(ArithError::DivisionByZero));
        assert_eq!(Rational::zero().inv(), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn display_and_parse() {
        for r in [q(-7, 3), q(5, 1), q(0, 1)] {
            assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
        }
        assert_eq!(q(-7, 3).to_string(), "-7/3");
    }
}
