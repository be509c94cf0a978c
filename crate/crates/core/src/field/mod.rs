//! Exact scalar domains.
//!
//! Every computation in the crate is generic over [`Field`]. Four concrete
//! fields are used: [`Rational`], [`QuadExt`] (adjoining a primitive sixth
//! root of unity `w`), and univariate [`RationalFunction`]s over either of
//! those two.

mod expr;
mod poly;
mod quadext;
mod ratfunc;
mod rational;

use std::fmt;

pub use expr::{parse_expr, Expr};
pub use poly::Polynomial;
pub use quadext::QuadExt;
pub use ratfunc::RationalFunction;
pub use rational::Rational;

use crate::error::ArithError;
use crate::linalg::Matrix;

/// A commutative field with exact, canonical representatives.
///
/// Equality is structural, which is only sound because every implementation
/// keeps its values in reduced normal form.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, ArithError>;
    fn from_rational(r: &Rational) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, rhs: &Self) -> Result<Self, ArithError> {
        Ok(self.mul(&rhs.inv()?))
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from(n))
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Rough cost of using this entry as an elimination pivot; lower is cheaper.
    fn pivot_cost(&self) -> usize {
        0
    }

    /// Rank of a matrix over this field. Fields with a natural fraction-free
    /// representation override this.
    fn matrix_rank(m: &Matrix<Self>) -> usize {
        crate::linalg::gauss_rank(m)
    }

    /// Short name of the field, used in catalog and report output.
    fn descriptor() -> String;
}

/// A field whose elements can be evaluated from parsed scalar expressions.
///
/// `resolve` maps identifiers to field elements. `w` conventionally denotes the
/// root of `x^2 - x + 1` and is resolved by the quadratic-extension fields.
pub fn eval_expr<F: Field>(
    e: &Expr,
    resolve: &dyn Fn(&str) -> Option<F>,
) -> Result<F, crate::error::Error> {
    expr::eval(e, resolve)
}
