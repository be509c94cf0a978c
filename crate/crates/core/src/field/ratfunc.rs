use std::fmt;

use super::{Field, Polynomial, Rational};
use crate::error::ArithError;
use crate::linalg::Matrix;

/// Reduced quotient of univariate polynomials with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction<F: Field> {
    num: Polynomial<F>,
    den: Polynomial<F>,
}

impl<F: Field> RationalFunction<F> {
    pub fn new(num: Polynomial<F>, den: Polynomial<F>) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Polynomial<F>, den: Polynomial<F>) -> Self {
        if num.is_zero() {
            return Self::from_poly(Polynomial::zero());
        }
        if den.is_constant() {
            let inv = den.lc().inv().expect("nonzero denominator");
            return RationalFunction {
                num: num.scale(&inv),
                den: Polynomial::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        let inv = den.lc().inv().expect("nonzero denominator");
        RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn from_poly(p: Polynomial<F>) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    /// The indeterminate itself.
    pub fn var() -> Self {
        Self::from_poly(Polynomial::var())
    }

    pub fn num(&self) -> &Polynomial<F> {
        &self.num
    }

    pub fn den(&self) -> &Polynomial<F> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The constant value, if this function does not depend on the variable.
    pub fn as_constant(&self) -> Option<F> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    /// `ord_0(num) - ord_0(den)`.
    pub fn order_at_zero(&self) -> Result<i64, ArithError> {
        let n = self.num.order_at_zero().ok_or(ArithError::ZeroOrder)?;
        let d = self.den.order_at_zero().expect("nonzero denominator");
        Ok(n as i64 - d as i64)
    }

    /// Value at the variable `= 0`, which exists iff the order at zero is nonnegative.
    pub fn limit_at_zero(&self) -> Result<F, ArithError> {
        if self.num.is_zero() {
            return Ok(F::zero());
        }
        let order = self.order_at_zero()?;
        if order < 0 {
            return Err(ArithError::NoLimit { order });
        }
        if order > 0 {
            return Ok(F::zero());
        }
        let k = self.den.order_at_zero().expect("nonzero denominator");
        self.num.coeff(k).div(&self.den.coeff(k))
    }

    /// Exact evaluation at `x`.
    pub fn specialize(&self, x: &F) -> Result<F, ArithError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(ArithError::Pole);
        }
        self.num.eval(x).div(&d)
    }

    /// Formats with the given variable name in the scalar expression grammar.
    pub fn to_string_with(&self, var: &str) -> String {
        let n = self.num.to_string_with(var);
        if self.den.is_one() {
            return n;
        }
        let d = self.den.to_string_with(var);
        let n_compound = n[1..].contains(['+', '-']);
        let d_single = self.den.coeffs().iter().filter(|c| !c.is_zero()).count() == 1;
        let n = if n_compound { format!("({n})") } else { n };
        if d_single {
            format!("{n}/{d}")
        } else {
            format!("{n}/({d})")
        }
    }

    /// Every coefficient of numerator and denominator, for collecting pole sets.
    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Result<RationalFunction<G>, ArithError> {
        let num = Polynomial::new(self.num.coeffs().iter().map(&f).collect());
        let den = Polynomial::new(self.den.coeffs().iter().map(&f).collect());
        RationalFunction::new(num, den)
    }
}

impl<F: Field> fmt::Display for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with("t"))
    }
}

impl<F: Field> fmt::Debug for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<F: Field> Field for RationalFunction<F> {
    fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Self::reduce(self.num.add(&rhs.num), self.den.clone());
        }
        Self::reduce(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(self.num.mul(&rhs.num));
        }
        Self::reduce(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    fn from_rational(r: &Rational) -> Self {
        Self::constant(F::from_rational(r))
    }

    fn pivot_cost(&self) -> usize {
        self.num.degree().unwrap_or(0) + self.den.degree().unwrap_or(0)
    }

    fn matrix_rank(m: &Matrix<Self>) -> usize {
        crate::linalg::rational_function_rank(m)
    }

    fn descriptor() -> String {
        format!("{}(t)", F::descriptor())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type RF = RationalFunction<Rational>;

    fn p(c: &[i64]) -> Polynomial<Rational> {
        Polynomial::new(c.iter().map(|&x| Rational::from(x)).collect())
    }

    fn rf(n: &[i64], d: &[i64]) -> RF {
        RF::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn reduces_common_factors() {
        // (t^2 + t)/t = t + 1
        assert_eq!(rf(&[0, 1, 1], &[0, 1]), rf(&[1, 1], &[1]));
        // denominators are monic
        assert_eq!(rf(&[2], &[0, 4]).den(), &p(&[0, 1]));
    }

    #[test]
    fn order_at_zero_examples() {
        // t^3 / (t (1 + t)) -> 2
        assert_eq!(rf(&[0, 0, 0, 1], &[0, 1, 1]).order_at_zero(), Ok(2));
        assert_eq!(rf(&[1, 1], &[0, 0, 1]).order_at_zero(), Ok(-2));
        assert_eq!(RF::from_i64(5).order_at_zero(), Ok(0));
        assert_eq!(RF::zero().order_at_zero(), Err(ArithError::ZeroOrder));
    }

    #[test]
    fn limits() {
        // (t^3 + 2 t^2) / t^2 -> 2
        assert_eq!(rf(&[0, 0, 2, 1], &[0, 0, 1]).limit_at_zero(), Ok(Rational::from(2)));
        assert_eq!(rf(&[0, 7], &[1]).limit_at_zero(), Ok(Rational::zero()));
        assert_eq!(
            rf(&[1], &[0, 1]).limit_at_zero(),
            Err(ArithError::NoLimit { order: -1 })
        );
    }

    #[test]
    fn specialization() {
        let one_minus_a = rf(&[1, -1], &[1]);
        assert_eq!(one_minus_a.specialize(&Rational::from(-2)), Ok(Rational::from(3)));
        assert_eq!(rf(&[1], &[0, 1]).specialize(&Rational::zero()), Err(ArithError::Pole));
    }

    #[test]
    fn printing() {
        assert_eq!(rf(&[1], &[0, 0, 1]).to_string(), "1/t^2");
        assert_eq!(rf(&[1, 1], &[2, 1]).to_string(), "(t+1)/(t+2)");
        assert_eq!(rf(&[0, 0, 0, 0, 1], &[2]).to_string(), "1/2*t^4");
    }
}
