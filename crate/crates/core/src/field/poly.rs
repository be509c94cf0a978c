use std::fmt;

use super::Field;
use crate::error::ArithError;

/// Dense univariate polynomial, coefficients in ascending degree.
///
/// The leading coefficient is nonzero unless the polynomial is zero (empty).
/// The variable name is not stored; printing takes it as an argument.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> Polynomial<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn var() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn monomial(c: F, k: usize) -> Self {
        let mut coeffs = vec![F::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Index of the lowest nonzero coefficient (the multiplicity of the root 0).
    pub fn order_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new(
            (0..n)
                .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                    (Some(a), Some(b)) => a.add(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => F::zero(),
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            coeffs: self.coeffs.iter().map(F::neg).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.lc().inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    /// Euclidean division over the coefficient field.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), ArithError> {
        let dd = d.degree().ok_or(ArithError::DivisionByZero)?;
        let lc_inv = d.lc().inv()?;
        let mut r = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![F::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = r[k + dd].mul(&lc_inv);
            if c.is_zero() {
                continue;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                if !di.is_zero() {
                    r[k + i] = r[k + i].sub(&c.mul(di));
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    /// Division that is known to be exact; the remainder is checked in debug builds.
    pub fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d).expect("exact division by zero");
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Pseudo-remainder `prem(a, b) = lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        let (Some(da), Some(db)) = (self.degree(), b.degree()) else {
            return self.clone();
        };
        if da < db {
            return self.clone();
        }
        let lcb = b.lc();
        let mut r = self.clone();
        let mut steps = da - db + 1;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let c = r.lc();
            r = r.scale(&lcb).sub(&b.scale(&c).shift(dr - db));
            steps -= 1;
        }
        r.scale(&lcb.pow(steps as u32))
    }

    /// Monic greatest common divisor via the subresultant remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.clone(), other.clone())
        } else {
            (other.clone(), self.clone())
        };
        if b.is_zero() {
            return a.monic();
        }
        let mut g = F::one();
        let mut h = F::one();
        loop {
            let delta = a.degree().unwrap() - b.degree().unwrap();
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                return b.monic();
            }
            if r.is_constant() {
                return Self::one();
            }
            let denom = g.mul(&h.pow(delta as u32));
            let denom_inv = denom.inv().expect("subresultant scale is nonzero");
            a = b;
            b = r.scale(&denom_inv);
            g = a.lc();
            // h <- g^delta / h^(delta - 1)
            h = if delta == 0 {
                h.clone()
            } else {
                g.pow(delta as u32)
                    .div(&h.pow(delta as u32 - 1))
                    .expect("subresultant scale is nonzero")
            };
        }
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc.mul(x).add(c))
    }

    /// Formats with the given variable name in the scalar expression grammar.
    pub fn to_string_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let compound = cs[1..].contains(['+', '-']);
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let term = if k == 0 {
                if compound && !out.is_empty() {
                    format!("({cs})")
                } else {
                    cs
                }
            } else if c.is_one() {
                mono
            } else if cs == "-1" {
                format!("-{mono}")
            } else if compound {
                format!("({cs})*{mono}")
            } else {
                format!("{cs}*{mono}")
            };
            if !out.is_empty() && !term.starts_with('-') {
                out.push('+');
            }
            out.push_str(&term);
        }
        out
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with("t"))
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
