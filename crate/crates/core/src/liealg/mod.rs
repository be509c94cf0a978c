//! Lie algebras given by structure constants.

mod subspace;
mod trace;

pub use subspace::{unit_vector, Subspace};
pub use trace::{c_invariant, TraceInvariant};

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

/// Free-form annotations carried alongside an algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Metadata {
    /// The stored basis satisfies `[x_i, x_j] = 0` whenever `i + j > n` (1-based).
    pub type_one: bool,
    pub notes: Vec<String>,
}

/// A Lie algebra law on `F^n` in the standard basis `x_1, ..., x_n`.
///
/// Constants are stored densely, `c[(i * n + j) * n + k]` being the coefficient
/// of `x_k` in `[x_i, x_j]` (0-based). Antisymmetry holds by construction;
/// the Jacobi identity is checked, never assumed.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra<F: Field> {
    dim: usize,
    consts: Vec<F>,
    pub label: String,
    pub params: Vec<String>,
    pub meta: Metadata,
}

/// A failed Jacobi polynomial, indices 1-based as `(i, j, k, s)` with `i < j < k`.
pub type JacobiViolation = (usize, usize, usize, usize);

impl<F: Field> LieAlgebra<F> {
    /// The abelian algebra of dimension `n`.
    pub fn abelian(n: usize) -> Self {
        LieAlgebra {
            dim: n,
            consts: vec![F::zero(); n * n * n],
            label: format!("C^{n}"),
            params: Vec::new(),
            meta: Metadata {
                type_one: true,
                notes: Vec::new(),
            },
        }
    }

    /// Builds an algebra from brackets `[x_i, x_j] = sum c_k x_k` with 1-based indices.
    pub fn from_brackets(
        n: usize,
        label: impl Into<String>,
        brackets: &[(usize, usize, Vec<(usize, F)>)],
    ) -> Result<Self> {
        let mut l = Self::abelian(n);
        l.label = label.into();
        for (i, j, terms) in brackets {
            let mut v = vec![F::zero(); n];
            for (k, c) in terms {
                if *k == 0 || *k > n {
                    return Err(Error::DimensionMismatch { expected: n, got: *k });
                }
                v[k - 1] = v[k - 1].add(c);
            }
            if *i == 0 || *j == 0 || *i > n || *j > n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: (*i).max(*j),
                });
            }
            l.set_bracket(i - 1, j - 1, &v);
        }
        l.meta.type_one = l.is_type_one();
        Ok(l)
    }

    /// Builds an algebra from a full constant table (0-based, length `n^3`),
    /// which must already be antisymmetric.
    pub fn from_table(n: usize, label: impl Into<String>, consts: Vec<F>) -> Result<Self> {
        if consts.len() != n * n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n * n,
                got: consts.len(),
            });
        }
        let mut l = LieAlgebra {
            dim: n,
            consts,
            label: label.into(),
            params: Vec::new(),
            meta: Metadata::default(),
        };
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let a = l.constant(i, j, k);
                    let b = l.constant(j, i, k);
                    if !a.add(b).is_zero() {
                        return Err(Error::Consistency(format!(
                            "structure constants are not antisymmetric at ({}, {}, {})",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        l.meta.type_one = l.is_type_one();
        Ok(l)
    }

    /// Sets `[x_i, x_j] = v` and `[x_j, x_i] = -v` (0-based).
    pub fn set_bracket(&mut self, i: usize, j: usize, v: &[F]) {
        let n = self.dim;
        for k in 0..n {
            if i == j {
                continue;
            }
            self.consts[(i * n + j) * n + k] = v[k].clone();
            self.consts[(j * n + i) * n + k] = v[k].neg();
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coefficient of `x_k` in `[x_i, x_j]`, 0-based.
    #[inline]
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &F {
        &self.consts[(i * self.dim + j) * self.dim + k]
    }

    /// `[x_i, x_j]` as a coordinate slice, 0-based.
    #[inline]
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[F] {
        let n = self.dim;
        &self.consts[(i * n + j) * n..(i * n + j + 1) * n]
    }

    pub fn constants(&self) -> &[F] {
        &self.consts
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn is_abelian(&self) -> bool {
        self.consts.iter().all(F::is_zero)
    }

    /// Literal check of `[x_i, x_j] = 0` for `i + j > n` (1-based indices).
    pub fn is_type_one(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| {
            (0..n)
                .filter(|j| i + j + 2 > n)
                .all(|j| self.basis_bracket(i, j).iter().all(F::is_zero))
        })
    }

    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G) -> LieAlgebra<G> {
        LieAlgebra {
            dim: self.dim,
            consts: self.consts.iter().map(f).collect(),
            label: self.label.clone(),
            params: self.params.clone(),
            meta: self.meta.clone(),
        }
    }

    pub fn try_map_field<G: Field, E>(
        &self,
        f: impl Fn(&F) -> std::result::Result<G, E>,
    ) -> std::result::Result<LieAlgebra<G>, E> {
        Ok(LieAlgebra {
            dim: self.dim,
            consts: self.consts.iter().map(f).collect::<std::result::Result<_, _>>()?,
            label: self.label.clone(),
            params: self.params.clone(),
            meta: self.meta.clone(),
        })
    }

    pub fn bracket(&self, x: &[F], y: &[F]) -> Result<Vec<F>> {
        let n = self.dim;
        for v in [x, y] {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
        }
        Ok(self.bracket_unchecked(x, y))
    }

    fn bracket_unchecked(&self, x: &[F], y: &[F]) -> Vec<F> {
        let n = self.dim;
        let mut out = vec![F::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let s = xi.mul(yj);
                for (o, c) in out.iter_mut().zip(self.basis_bracket(i, j)) {
                    if !c.is_zero() {
                        *o = o.add(&s.mul(c));
                    }
                }
            }
        }
        out
    }

    /// Evaluates every Jacobi polynomial
    /// `sum_r c_ij^r c_kr^s + c_jk^r c_ir^s + c_ki^r c_jr^s` for `i < j < k`.
    pub fn jacobi_check(&self) -> Vec<JacobiViolation> {
        let n = self.dim;
        let mut bad = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for s in 0..n {
                        let mut acc = F::zero();
                        for r in 0..n {
                            for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                                let x = self.constant(a, b, r);
                                if x.is_zero() {
                                    continue;
                                }
                                let y = self.constant(c, r, s);
                                if !y.is_zero() {
                                    acc = acc.add(&x.mul(y));
                                }
                            }
                        }
                        if !acc.is_zero() {
                            bad.push((i + 1, j + 1, k + 1, s + 1));
                        }
                    }
                }
            }
        }
        bad
    }

    pub fn is_lie(&self) -> bool {
        self.jacobi_check().is_empty()
    }

    /// `[A, B]` for subspaces `A`, `B`.
    pub fn bracket_spaces(&self, a: &Subspace<F>, b: &Subspace<F>) -> Subspace<F> {
        let mut vs = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                vs.push(self.bracket_unchecked(x, y));
            }
        }
        Subspace::span(self.dim, vs)
    }

    pub fn whole(&self) -> Subspace<F> {
        Subspace::full(self.dim)
    }

    pub fn derived_algebra(&self) -> Subspace<F> {
        let g = self.whole();
        self.bracket_spaces(&g, &g)
    }

    /// `g^1 = g`, `g^{k+1} = [g, g^k]`, listed until the series stabilizes.
    pub fn lower_central_series(&self) -> Vec<Subspace<F>> {
        let g = self.whole();
        let mut out = vec![g.clone()];
        loop {
            let next = self.bracket_spaces(&g, out.last().unwrap());
            if &next == out.last().unwrap() {
                break;
            }
            let done = next.is_zero();
            out.push(next);
            if done {
                break;
            }
        }
        out
    }

    /// `g^(1) = g`, `g^(k+1) = [g^(k), g^(k)]`, listed until the series stabilizes.
    pub fn derived_series(&self) -> Vec<Subspace<F>> {
        let mut out = vec![self.whole()];
        loop {
            let last = out.last().unwrap();
            let next = self.bracket_spaces(last, last);
            if &next == last {
                break;
            }
            let done = next.is_zero();
            out.push(next);
            if done {
                break;
            }
        }
        out
    }

    /// Number of nonzero terms of the lower central series, if it reaches zero.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let s = self.lower_central_series();
        s.last()
            .unwrap()
            .is_zero()
            .then(|| s.iter().filter(|t| !t.is_zero()).count())
    }

    /// Number of nonzero terms of the derived series, if it reaches zero.
    pub fn solvability_class(&self) -> Option<usize> {
        let s = self.derived_series();
        s.last()
            .unwrap()
            .is_zero()
            .then(|| s.iter().filter(|t| !t.is_zero()).count())
    }

    /// `{x : [x, g] ⊆ base}`.
    fn centralizer_mod(&self, base: &Subspace<F>) -> Subspace<F> {
        let n = self.dim;
        let ann = base.annihilator();
        let mut rows = Vec::new();
        for i in 0..n {
            for q in &ann {
                // functional q applied to [x, x_i] as a linear form in x
                let row: Vec<F> = (0..n)
                    .map(|j| {
                        self.basis_bracket(j, i)
                            .iter()
                            .zip(q)
                            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                            .fold(F::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
                    })
                    .collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            return self.whole();
        }
        let m = Matrix::from_rows(rows).expect("uniform rows");
        Subspace::span(n, m.kernel_basis())
    }

    pub fn center(&self) -> Subspace<F> {
        self.centralizer_mod(&Subspace::zero(self.dim))
    }

    /// `Z^0 = 0 ⊆ Z^1 = Z(g) ⊆ ...`, with `Z^{j+1}/Z^j` the center of `g/Z^j`,
    /// listed until the series stabilizes.
    pub fn upper_central_series(&self) -> Vec<Subspace<F>> {
        let mut out = vec![Subspace::zero(self.dim)];
        loop {
            let next = self.centralizer_mod(out.last().unwrap());
            if &next == out.last().unwrap() {
                break;
            }
            out.push(next);
        }
        out
    }

    /// True if `[g, I] ⊆ I`.
    pub fn is_ideal(&self, ideal: &Subspace<F>) -> bool {
        let n = self.dim;
        (0..n).all(|i| {
            let e = unit_vector(n, i);
            ideal
                .basis()
                .iter()
                .all(|v| ideal.contains(&self.bracket_unchecked(&e, v)))
        })
    }

    /// The quotient `g / I` in the basis of unit vectors complementary to `I`'s pivots.
    pub fn quotient(&self, ideal: &Subspace<F>) -> Result<Self> {
        if ideal.ambient() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: ideal.ambient(),
            });
        }
        if !self.is_ideal(ideal) {
            return Err(Error::NotAnIdeal);
        }
        let comp = ideal.complement_indices();
        let m = comp.len();
        let mut q = Self::abelian(m);
        q.label = format!("{}/I", self.label);
        for a in 0..m {
            for b in a + 1..m {
                let w = ideal.reduce(self.basis_bracket(comp[a], comp[b]));
                let coords: Vec<F> = comp.iter().map(|&c| w[c].clone()).collect();
                q.set_bracket(a, b, &coords);
            }
        }
        q.meta.type_one = q.is_type_one();
        Ok(q)
    }

    pub fn central_quotient(&self) -> Self {
        self.quotient(&self.center())
            .expect("the center is an ideal")
            .with_label(format!("{}/Z", self.label))
    }

    /// `self ⊕ other`, with `other`'s basis appended after `self`'s.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        let mut s = Self::abelian(n + m);
        s.label = format!("{}+{}", self.label, other.label);
        for i in 0..n {
            for j in i + 1..n {
                let mut v = self.basis_bracket(i, j).to_vec();
                v.extend(std::iter::repeat_n(F::zero(), m));
                s.set_bracket(i, j, &v);
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                let mut v = vec![F::zero(); n];
                v.extend(other.basis_bracket(i, j).iter().cloned());
                s.set_bracket(n + i, n + j, &v);
            }
        }
        s.meta.type_one = s.is_type_one();
        s
    }

    /// `self ⊕ C^d` with the new generators central.
    pub fn direct_sum_abelian(&self, d: usize) -> Self {
        if d == 0 {
            return self.clone();
        }
        self.direct_sum(&Self::abelian(d))
            .with_label(format!("{}+C^{d}", self.label))
    }

    /// Matrix of `y ↦ [x, y]`.
    pub fn adjoint_matrix(&self, x: &[F]) -> Result<Matrix<F>> {
        let n = self.dim;
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: x.len(),
            });
        }
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            let col = self.bracket_unchecked(x, &unit_vector(n, j));
            for (k, v) in col.into_iter().enumerate() {
                m.set(k, j, v);
            }
        }
        Ok(m)
    }
}

impl<F: Field> fmt::Debug for LieAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra({}, dim {}) {{", self.label, self.dim)?;
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = self.basis_bracket(i, j);
                if v.iter().all(F::is_zero) {
                    continue;
                }
                let terms: Vec<String> = v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| format!("{c}*x{}", k + 1))
                    .collect();
                write!(f, " [x{},x{}]={};", i + 1, j + 1, terms.join("+"))?;
            }
        }
        write!(f, " }}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn filiform(n: usize, extra: &[(usize, usize, usize, i64)]) -> LieAlgebra<Rational> {
        let mut br: Vec<(usize, usize, Vec<(usize, Rational)>)> =
            (2..n).map(|i| (1, i, vec![(i + 1, q(1))])).collect();
        for &(i, j, k, c) in extra {
            br.push((i, j, vec![(k, q(c))]));
        }
        LieAlgebra::from_brackets(n, "test", &br).unwrap()
    }

    fn heisenberg() -> LieAlgebra<Rational> {
        LieAlgebra::from_brackets(3, "n_3", &[(1, 2, vec![(3, q(1))])]).unwrap()
    }

    fn dims(s: &[Subspace<Rational>]) -> Vec<usize> {
        s.iter().map(Subspace::dim).collect()
    }

    #[test]
    fn bracket_examples() {
        let n3 = heisenberg();
        let e1 = unit_vector::<Rational>(3, 0);
        let e2 = unit_vector::<Rational>(3, 1);
        assert_eq!(n3.bracket(&e1, &e2).unwrap(), unit_vector(3, 2));
        let x = vec![q(3), q(-1), q(2)];
        assert!(n3.bracket(&x, &x).unwrap().iter().all(Field::is_zero));
        assert!(n3.bracket(&x, &[q(1)]).is_err());
    }

    #[test]
    fn series_of_standard_filiform() {
        let ga = filiform(7, &[]);
        assert_eq!(dims(&ga.lower_central_series()), vec![7, 5, 4, 3, 2, 1, 0]);
        assert_eq!(ga.nilpotency_class(), Some(6));
        let ab = LieAlgebra::<Rational>::abelian(5);
        assert_eq!(dims(&ab.lower_central_series()), vec![5, 0]);
        assert_eq!(ab.nilpotency_class(), Some(1));
        assert_eq!(ab.solvability_class(), Some(1));
        let ucs = ab.upper_central_series();
        assert_eq!(dims(&ucs), vec![0, 5]);
    }

    #[test]
    fn non_nilpotent_series_stabilize() {
        // r_2: [e1, e2] = e2
        let r2 = LieAlgebra::from_brackets(2, "r_2", &[(1, 2, vec![(2, q(1))])]).unwrap();
        assert_eq!(dims(&r2.lower_central_series()), vec![2, 1]);
        assert_eq!(r2.nilpotency_class(), None);
        assert_eq!(r2.solvability_class(), Some(2));
        assert!(r2.center().is_zero());
    }

    #[test]
    fn mutated_jacobi_fails() {
        let ok = filiform(7, &[(2, 3, 6, 1), (2, 4, 7, 1), (2, 5, 7, 1), (3, 4, 7, -1)]);
        assert!(ok.is_lie());
        let bad = filiform(7, &[(2, 3, 6, 1), (2, 4, 7, 1), (2, 5, 7, 1), (3, 4, 7, 1)]);
        assert!(!bad.jacobi_check().is_empty());
    }

    #[test]
    fn quotient_and_sums() {
        let ga = filiform(7, &[]);
        let z = ga.center();
        assert_eq!(z.dim(), 1);
        let q6 = ga.quotient(&z).unwrap();
        assert_eq!(q6.dim(), 6);
        assert!(q6.is_lie());
        assert_eq!(q6.nilpotency_class(), Some(5));
        let zero = ga.quotient(&ga.whole()).unwrap();
        assert_eq!(zero.dim(), 0);
        // span{x_1} is not an ideal
        let line = Subspace::span(7, vec![unit_vector(7, 0)]);
        assert_eq!(ga.quotient(&line), Err(Error::NotAnIdeal));

        let n3c2 = heisenberg().direct_sum_abelian(2);
        assert_eq!(n3c2.dim(), 5);
        assert_eq!(n3c2.center().dim(), 3);
        assert_eq!(heisenberg().direct_sum_abelian(0), heisenberg());
    }

    #[test]
    fn adjoint_traces() {
        // r_{3,a}: [e1,e2]=e2, [e1,e3]=a e3; tr ad e1 = 1 + a
        let a = Rational::new(2, 7).unwrap();
        let r = LieAlgebra::from_brackets(
            3,
            "r_3,a",
            &[(1, 2, vec![(2, q(1))]), (1, 3, vec![(3, a.clone())])],
        )
        .unwrap();
        let ad = r.adjoint_matrix(&unit_vector(3, 0)).unwrap();
        let tr = (0..3).fold(Rational::zero(), |acc, i| acc.add(ad.get(i, i)));
        assert_eq!(tr, q(1).add(&a));
        let ad2 = filiform(5, &[]).adjoint_matrix(&[q(1), q(2), q(3), q(4), q(5)]).unwrap();
        let tr2 = (0..5).fold(Rational::zero(), |acc, i| acc.add(ad2.get(i, i)));
        assert!(tr2.is_zero());
    }
}
