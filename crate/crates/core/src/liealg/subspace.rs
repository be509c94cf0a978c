use crate::field::Field;
use crate::linalg::Matrix;

/// A linear subspace of `F^n`, stored as the nonzero rows of its reduced
/// row echelon form. The representation is canonical, so equality of
/// subspaces is equality of values.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace<F: Field> {
    ambient: usize,
    basis: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(
            ambient,
            (0..ambient).map(|i| unit_vector(ambient, i)).collect(),
        )
    }

    /// Span of arbitrary (possibly dependent) vectors of length `ambient`.
    pub fn span(ambient: usize, vectors: Vec<Vec<F>>) -> Self {
        let vectors: Vec<Vec<F>> = vectors
            .into_iter()
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let m = Matrix::from_rows(vectors).expect("vectors share the ambient dimension");
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates outside the pivot columns; the matching unit vectors span a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }

    /// Reduces `v` modulo the subspace so that it vanishes on every pivot column.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, b) in r.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x = x.sub(&f.mul(b));
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(F::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Self::span(self.ambient, vs)
    }

    /// Rows of linear functionals whose common kernel is this subspace.
    pub fn annihilator(&self) -> Vec<Vec<F>> {
        if self.basis.is_empty() {
            return (0..self.ambient).map(|i| unit_vector(self.ambient, i)).collect();
        }
        let m = Matrix::from_rows(self.basis.clone()).expect("uniform rows");
        m.kernel_basis()
    }
}

pub fn unit_vector<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn canonical_equality() {
        let a = Subspace::span(3, vec![v(&[1, 1, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(3, vec![v(&[2, 0, 0]), v(&[1, -1, 0]), v(&[3, 3, 0])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert_eq!(a.complement_indices(), vec![2]);
    }

    #[test]
    fn membership_and_annihilator() {
        let a = Subspace::span(3, vec![v(&[1, 1, 1])]);
        assert!(a.contains(&v(&[2, 2, 2])));
        assert!(!a.contains(&v(&[1, 0, 0])));
        let ann = a.annihilator();
        assert_eq!(ann.len(), 2);
        for f in ann {
            let s = f.iter().fold(Rational::zero(), |acc, x| acc.add(x));
            assert!(s.is_zero());
        }
    }
}
