use std::fmt;

use super::{Field, Rational};
use crate::error::ArithError;

/// `a + b*w` in Q(w), where `w^2 = w - 1`.
///
/// `w` is a primitive sixth root of unity; its conjugate is `1 - w`, so the
/// two roots of `x^2 - x + 1` are `w` and `1 - w`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QuadExt {
    pub a: Rational,
    pub b: Rational,
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational) -> Self {
        QuadExt { a, b }
    }

    pub fn omega() -> Self {
        QuadExt::new(Rational::zero(), Rational::one())
    }

    /// The Galois conjugate `(a + b) - b*w`.
    pub fn conjugate(&self) -> Self {
        QuadExt::new(self.a.add(&self.b), self.b.neg())
    }

    /// `a^2 + ab + b^2`, the product of `self` with its conjugate.
    pub fn norm(&self) -> Rational {
        self.a
            .mul(&self.a)
            .add(&self.a.mul(&self.b))
            .add(&self.b.mul(&self.b))
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w_term = |b: &Rational| -> String {
            if b.is_one() {
                "w".to_string()
            } else if *b == Rational::from(-1) {
                "-w".to_string()
            } else {
                format!("{b}*w")
            }
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}", w_term(&self.b)),
            (false, false) => {
                let t = w_term(&self.b);
                if t.starts_with('-') {
                    write!(f, "{}{}", self.a, t)
                } else {
                    write!(f, "{}+{}", self.a, t)
                }
            }
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Field for QuadExt {
    fn zero() -> Self {
        QuadExt::default()
    }

    fn one() -> Self {
        QuadExt::new(Rational::one(), Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        QuadExt::new(self.a.add(&rhs.a), self.b.add(&rhs.b))
    }

    fn sub(&self, rhs: &Self) -> Self {
        QuadExt::new(self.a.sub(&rhs.a), self.b.sub(&rhs.b))
    }

    fn mul(&self, rhs: &Self) -> Self {
        // (a + bw)(c + dw) = (ac - bd) + (ad + bc + bd)w
        let bd = self.b.mul(&rhs.b);
        QuadExt::new(
            self.a.mul(&rhs.a).sub(&bd),
            self.a.mul(&rhs.b).add(&self.b.mul(&rhs.a)).add(&bd),
        )
    }

    fn neg(&self) -> Self {
        QuadExt::new(self.a.neg(), self.b.neg())
    }

    fn inv(&self) -> Result<Self, ArithError> {
        let n = self.norm().inv()?;
        let c = self.conjugate();
        Ok(QuadExt::new(c.a.mul(&n), c.b.mul(&n)))
    }

    fn from_rational(r: &Rational) -> Self {
        QuadExt::new(r.clone(), Rational::zero())
    }

    fn pivot_cost(&self) -> usize {
        self.a.pivot_cost() + self.b.pivot_cost()
    }

    fn descriptor() -> String {
        "Q(w)".to_string()
    }
}
