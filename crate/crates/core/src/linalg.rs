//! Dense exact linear algebra over any [`Field`].
//!
//! Rank over `Q` and over rational-function fields goes through fraction-free
//! (Bareiss) elimination on a denominator-cleared copy; everything else uses
//! classical Gauss-Jordan elimination.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Polynomial, Rational, RationalFunction};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn diagonal(entries: Vec<F>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data,
        })
    }

    /// Matrix whose columns are the given vectors (all of length `len`).
    pub fn from_columns(len: usize, cols: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(len, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn add_to(&mut self, r: usize, c: usize, v: &F) {
        let e = &mut self.data[r * self.cols + c];
        *e = e.add(v);
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<G: Field, E>(&self, f: impl Fn(&F) -> std::result::Result<G, E>) -> std::result::Result<Matrix<G>, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<std::result::Result<_, _>>()?,
        })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, &a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect())
    }

    pub fn swap_columns(&self, a: usize, b: usize) -> Self {
        let mut m = self.clone();
        for r in 0..self.rows {
            let (x, y) = (self.get(r, a).clone(), self.get(r, b).clone());
            m.set(r, a, y);
            m.set(r, b, x);
        }
        m
    }

    pub fn rank(&self) -> usize {
        F::matrix_rank(self)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut rows = self.to_rows();
        let pivots = rref_in_place(&mut rows, self.cols);
        let r = Matrix {
            rows: self.rows,
            cols: self.cols,
            data: rows.into_iter().flatten().collect(),
        };
        (r, pivots)
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![F::zero(); self.cols];
                v[free] = F::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = r.get(i, free).neg();
                }
                v
            })
            .collect()
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[F]) -> Result<Option<Vec<F>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: b.len(),
            });
        }
        let mut rows: Vec<Vec<F>> = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.push(b[r].clone());
                row
            })
            .collect();
        let pivots = rref_in_place(&mut rows, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = rows[i][self.cols].clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        let mut rows: Vec<Vec<F>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| if c == r { F::one() } else { F::zero() }));
                row
            })
            .collect();
        let pivots = rref_in_place(&mut rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(Matrix {
            rows: n,
            cols: n,
            data: rows.into_iter().flat_map(|r| r.into_iter().skip(n)).collect(),
        })
    }

    pub fn determinant(&self) -> Result<F> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return Ok(F::zero());
            };
            if p != c {
                a.swap(p, c);
                det = det.neg();
            }
            det = det.mul(&a[c][c]);
            let inv = a[c][c].inv()?;
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = a[r][c].mul(&inv);
                for k in c..n {
                    let v = a[c][k].mul(&f);
                    a[r][k] = a[r][k].sub(&v);
                }
            }
        }
        Ok(det)
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Pivot row in column `c` among `rows[start..]`: cheapest nonzero entry, ties to the lowest row.
fn choose_pivot<F: Field>(rows: &[Vec<F>], start: usize, c: usize) -> Option<usize> {
    let mut best: Option<(usize, usize)> = None;
    for (r, row) in rows.iter().enumerate().skip(start) {
        if row[c].is_zero() {
            continue;
        }
        let cost = row[c].pivot_cost();
        if best.is_none_or(|(_, bc)| cost < bc) {
            best = Some((r, cost));
            if cost == 0 {
                break;
            }
        }
    }
    best.map(|(r, _)| r)
}

/// Gauss-Jordan elimination to reduced row echelon form. Returns pivot columns.
fn rref_in_place<F: Field>(rows: &mut [Vec<F>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut k = 0;
    for c in 0..cols {
        if k == rows.len() {
            break;
        }
        let Some(p) = choose_pivot(rows, k, c) else {
            continue;
        };
        rows.swap(p, k);
        let inv = rows[k][c].inv().expect("pivot is nonzero");
        for x in rows[k].iter_mut().skip(c) {
            *x = x.mul(&inv);
        }
        let support: Vec<usize> = (c..cols).filter(|&j| !rows[k][j].is_zero()).collect();
        let pivot_row = rows[k].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == k || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &support {
                row[j] = row[j].sub(&f.mul(&pivot_row[j]));
            }
        }
        pivots.push(c);
        k += 1;
    }
    pivots
}

/// Rank by forward Gaussian elimination with sparse row updates.
pub fn gauss_rank<F: Field>(m: &Matrix<F>) -> usize {
    let mut rows = m.to_rows();
    let cols = m.cols();
    let mut k = 0;
    for c in 0..cols {
        if k == rows.len() {
            break;
        }
        let Some(p) = choose_pivot(&rows, k, c) else {
            continue;
        };
        rows.swap(p, k);
        let inv = rows[k][c].inv().expect("pivot is nonzero");
        let support: Vec<usize> = (c + 1..cols).filter(|&j| !rows[k][j].is_zero()).collect();
        let (head, tail) = rows.split_at_mut(k + 1);
        let pivot_row = &head[k];
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].mul(&inv);
            for &j in &support {
                row[j] = row[j].sub(&f.mul(&pivot_row[j]));
            }
            row[c] = F::zero();
        }
        k += 1;
    }
    k
}

/// Exact integral domain operations needed by fraction-free elimination.
pub trait Domain: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    /// Division known to be exact.
    fn exact_div(&self, rhs: &Self) -> Self;
    fn cost(&self) -> usize;
}

impl Domain for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % rhs)));
        self / rhs
    }
    fn cost(&self) -> usize {
        self.bits() as usize
    }
}

impl<F: Field> Domain for Polynomial<F> {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn one() -> Self {
        Polynomial::one()
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Polynomial::mul(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Polynomial::sub(self, rhs)
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        Polynomial::exact_div(self, rhs)
    }
    fn cost(&self) -> usize {
        self.degree().unwrap_or(0) * 64 + self.coeffs().iter().map(F::pivot_cost).sum::<usize>()
    }
}

/// Rank by fraction-free (Bareiss) elimination over an integral domain.
///
/// Every intermediate entry is a minor of the input, so the two-step
/// division is exact.
pub fn bareiss_rank<D: Domain>(mut rows: Vec<Vec<D>>, cols: usize) -> usize {
    let mut prev = D::one();
    let mut k = 0;
    for c in 0..cols {
        if k == rows.len() {
            break;
        }
        let mut best: Option<(usize, usize)> = None;
        for (r, row) in rows.iter().enumerate().skip(k) {
            if !row[c].is_zero() {
                let cost = row[c].cost();
                if best.is_none_or(|(_, bc)| cost < bc) {
                    best = Some((r, cost));
                }
            }
        }
        let Some((p, _)) = best else {
            continue;
        };
        rows.swap(p, k);
        let (head, tail) = rows.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let pivot = pivot_row[c].clone();
        for row in tail.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let a = pivot.mul(&row[j]);
                let v = if lead.is_zero() || pivot_row[j].is_zero() {
                    a
                } else {
                    a.sub(&lead.mul(&pivot_row[j]))
                };
                row[j] = if v.is_zero() { v } else { v.exact_div(&prev) };
            }
            row[c] = D::zero();
        }
        prev = pivot;
        k += 1;
    }
    k
}

/// Rank over `Q`: clear row denominators, then fraction-free elimination over `Z`.
pub fn rational_rank(m: &Matrix<Rational>) -> usize {
    let rows: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|r| {
            let row = m.row(r);
            let lcm = row
                .iter()
                .filter(|x| !x.is_zero())
                .fold(<BigInt as One>::one(), |acc, x| acc.lcm(x.denom()));
            let mut ints: Vec<BigInt> = row
                .iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect();
            let g = ints.iter().fold(<BigInt as Zero>::zero(), |acc, x| acc.gcd(x));
            if !Zero::is_zero(&g) && !One::is_one(&g) {
                for x in ints.iter_mut() {
                    *x = &*x / &g;
                }
            }
            ints
        })
        .collect();
    bareiss_rank(rows, m.cols())
}

/// Rank over `Q` by plain Gaussian elimination on fractions; the independent
/// route used to cross-check [`rational_rank`].
pub fn rational_rank_gauss(m: &Matrix<Rational>) -> usize {
    gauss_rank(m)
}

/// Rank over `F(t)`: clear row denominators, then fraction-free elimination over `F[t]`.
pub fn rational_function_rank<F: Field>(m: &Matrix<RationalFunction<F>>) -> usize {
    let rows: Vec<Vec<Polynomial<F>>> = (0..m.rows())
        .map(|r| {
            let row = m.row(r);
            let mut lcm = Polynomial::one();
            for x in row.iter().filter(|x| !x.is_zero()) {
                let g = lcm.gcd(x.den());
                lcm = lcm.mul(&x.den().exact_div(&g));
            }
            row.iter()
                .map(|x| x.num().mul(&lcm.exact_div(x.den())))
                .collect()
        })
        .collect();
    bareiss_rank(rows, m.cols())
}

/// Rank of a matrix over `F(a)` at a specialization point; `None` if an entry has a pole there.
pub fn specialized_rank<F: Field>(m: &Matrix<RationalFunction<F>>, at: &F) -> Option<usize> {
    let s = m.try_map(|x| x.specialize(at)).ok()?;
    Some(s.rank())
}
