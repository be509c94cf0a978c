//! Chevalley–Eilenberg cochains with trivial and adjoint coefficients.

use rayon::prelude::*;

use crate::field::Field;
use crate::liealg::LieAlgebra;
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Module {
    Trivial,
    Adjoint,
}

impl Module {
    fn target_dim(self, n: usize) -> usize {
        match self {
            Module::Trivial => 1,
            Module::Adjoint => n,
        }
    }
}

/// Basis of `C^j(g, M)`: lexicographically ordered `j`-subsets of the basis
/// of `g`, each crossed with the basis of the coefficient module. The flat
/// index of `(subset, k)` is `subset_index * target_dim + k`.
#[derive(Clone, Debug)]
pub struct CochainSpace {
    n: usize,
    degree: usize,
    module: Module,
    subsets: Vec<u32>,
    index: Vec<usize>,
}

fn lex_subsets(n: usize, j: usize) -> Vec<u32> {
    fn rec(start: usize, n: usize, left: usize, acc: u32, out: &mut Vec<u32>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for e in start..=n - left {
            rec(e + 1, n, left - 1, acc | (1 << e), out);
        }
    }
    let mut out = Vec::new();
    if j <= n {
        rec(0, n, j, 0, &mut out);
    }
    out
}

impl CochainSpace {
    pub fn new(n: usize, degree: usize, module: Module) -> Self {
        assert!(n < 32, "cochain subsets are stored as 32-bit masks");
        let subsets = lex_subsets(n, degree);
        let mut index = vec![usize::MAX; 1 << n];
        for (i, &s) in subsets.iter().enumerate() {
            index[s as usize] = i;
        }
        CochainSpace {
            n,
            degree,
            module,
            subsets,
            index,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn module(&self) -> Module {
        self.module
    }

    pub fn target_dim(&self) -> usize {
        self.module.target_dim(self.n)
    }

    pub fn dim(&self) -> usize {
        self.subsets.len() * self.target_dim()
    }

    /// Flat index of `(subset, k)`, the subset given as sorted 0-based indices.
    pub fn index_of(&self, subset: &[usize], k: usize) -> Option<usize> {
        if k >= self.target_dim() || subset.len() != self.degree {
            return None;
        }
        let mut mask = 0u32;
        for w in subset.windows(2) {
            if w[0] >= w[1] {
                return None;
            }
        }
        for &e in subset {
            if e >= self.n {
                return None;
            }
            mask |= 1 << e;
        }
        Some(self.mask_index(mask) * self.target_dim() + k)
    }

    /// Inverse of [`CochainSpace::index_of`].
    pub fn coords(&self, idx: usize) -> Option<(Vec<usize>, usize)> {
        if idx >= self.dim() {
            return None;
        }
        let t = self.target_dim();
        let mask = self.subsets[idx / t];
        Some(((0..self.n).filter(|e| mask >> e & 1 == 1).collect(), idx % t))
    }

    #[inline]
    fn mask_index(&self, mask: u32) -> usize {
        self.index[mask as usize]
    }
}

fn elements(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |e| mask >> e & 1 == 1)
}

#[inline]
fn sign<F: Field>(c: &F, negative: bool) -> F {
    if negative {
        c.neg()
    } else {
        c.clone()
    }
}

/// Matrix of `d: C^j -> C^{j+1}` in the bases of [`CochainSpace`].
///
/// `(dφ)(x_0, ..., x_j) = Σ_p (-1)^p x_p·φ(..., x̂_p, ...)
///                      + Σ_{p<q} (-1)^{p+q} φ([x_p, x_q], ..., x̂_p, ..., x̂_q, ...)`,
/// the first sum being absent for trivial coefficients. For `j ≥ n` the
/// target is zero and the matrix has no rows.
pub fn coboundary_matrix<F: Field>(l: &LieAlgebra<F>, j: usize, module: Module) -> Matrix<F> {
    let n = l.dim();
    let src = CochainSpace::new(n, j, module);
    let dst = CochainSpace::new(n, j + 1, module);
    let td = src.target_dim();
    let mut m = Matrix::zeros(dst.dim(), src.dim());
    if j >= n {
        return m;
    }
    for (ti, &t) in dst.subsets.iter().enumerate() {
        let ts: Vec<usize> = elements(t).collect();
        for p in 0..ts.len() {
            for q in p + 1..ts.len() {
                let rest = t & !(1 << ts[p]) & !(1 << ts[q]);
                for (r, c) in l.basis_bracket(ts[p], ts[q]).iter().enumerate() {
                    if c.is_zero() || rest >> r & 1 == 1 {
                        continue;
                    }
                    let s = rest | (1 << r);
                    let pos = (s & ((1u32 << r) - 1)).count_ones() as usize;
                    let v = sign(c, (p + q + pos) % 2 == 1);
                    let si = src.mask_index(s);
                    for k in 0..td {
                        m.add_to(ti * td + k, si * td + k, &v);
                    }
                }
            }
        }
        if module == Module::Adjoint {
            for (p, &tp) in ts.iter().enumerate() {
                let si = src.mask_index(t & !(1 << tp));
                for k in 0..n {
                    for (r, c) in l.basis_bracket(tp, k).iter().enumerate() {
                        if !c.is_zero() {
                            m.add_to(ti * td + r, si * td + k, &sign(c, p % 2 == 1));
                        }
                    }
                }
            }
        }
    }
    m
}

/// Dimensions of cocycles, coboundaries and cohomology in every degree `0..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyProfile {
    pub module: Module,
    pub cochain_dims: Vec<usize>,
    pub z: Vec<usize>,
    pub bnd: Vec<usize>,
    pub h: Vec<usize>,
}

impl CohomologyProfile {
    pub fn euler_characteristic(&self) -> i64 {
        self.h
            .iter()
            .enumerate()
            .map(|(j, &h)| if j % 2 == 0 { h as i64 } else { -(h as i64) })
            .sum()
    }
}

/// Ranks of `d^0, ..., d^{n-1}`; `d^n` is zero.
pub fn coboundary_ranks<F: Field>(l: &LieAlgebra<F>, module: Module) -> Vec<usize> {
    let n = l.dim();
    let mut order: Vec<usize> = (0..n).collect();
    // largest matrices first so the pool stays busy
    order.sort_by_key(|&j| std::cmp::Reverse(binom(n, j) * binom(n, j + 1)));
    let mut ranks: Vec<(usize, usize)> = order
        .into_par_iter()
        .map(|j| (j, coboundary_matrix(l, j, module).rank()))
        .collect();
    ranks.sort();
    ranks.into_iter().map(|(_, r)| r).collect()
}

pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn cohomology_profile<F: Field>(l: &LieAlgebra<F>, module: Module) -> CohomologyProfile {
    profile_from_ranks(l.dim(), module, &coboundary_ranks(l, module))
}

/// Assembles a profile from the ranks of `d^0, ..., d^{n-1}`.
pub fn profile_from_ranks(n: usize, module: Module, ranks: &[usize]) -> CohomologyProfile {
    let td = module.target_dim(n);
    let cochain_dims: Vec<usize> = (0..=n).map(|j| binom(n, j) * td).collect();
    let rank = |j: usize| ranks.get(j).copied().unwrap_or(0);
    let z: Vec<usize> = (0..=n).map(|j| cochain_dims[j] - rank(j)).collect();
    let bnd: Vec<usize> = (0..=n).map(|j| if j == 0 { 0 } else { rank(j - 1) }).collect();
    let h = z.iter().zip(&bnd).map(|(z, b)| z - b).collect();
    CohomologyProfile {
        module,
        cochain_dims,
        z,
        bnd,
        h,
    }
}

/// `dim Z^j(g, g)`.
pub fn adjoint_cocycle_dim<F: Field>(l: &LieAlgebra<F>, j: usize) -> usize {
    let d = coboundary_matrix(l, j, Module::Adjoint);
    d.cols() - d.rank()
}

pub fn derivation_dim<F: Field>(l: &LieAlgebra<F>) -> usize {
    adjoint_cocycle_dim(l, 1)
}

pub fn orbit_dim<F: Field>(l: &LieAlgebra<F>) -> usize {
    l.dim() * l.dim() - derivation_dim(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn filiform_a(n: usize) -> LieAlgebra<Rational> {
        let br: Vec<_> = (2..n).map(|i| (1, i, vec![(i + 1, q(1))])).collect();
        LieAlgebra::from_brackets(n, "A", &br).unwrap()
    }

    #[test]
    fn index_round_trip() {
        let c = CochainSpace::new(5, 2, Module::Adjoint);
        assert_eq!(c.dim(), 50);
        for i in 0..c.dim() {
            let (s, k) = c.coords(i).unwrap();
            assert_eq!(c.index_of(&s, k), Some(i));
        }
        assert_eq!(c.coords(0), Some((vec![0, 1], 0)));
        assert_eq!(c.coords(5), Some((vec![0, 2], 0)));
        assert_eq!(c.index_of(&[1, 0], 0), None);
    }

    #[test]
    fn abelian_betti_numbers() {
        let ab = LieAlgebra::<Rational>::abelian(5);
        let p = cohomology_profile(&ab, Module::Trivial);
        assert_eq!(p.h, vec![1, 5, 10, 10, 5, 1]);
        assert_eq!(derivation_dim(&ab), 25);
        assert_eq!(orbit_dim(&ab), 0);
    }

    #[test]
    fn d_squared_vanishes() {
        let mut l = filiform_a(6);
        l.set_bracket(1, 2, &[q(0), q(0), q(0), q(0), q(1), q(0)]);
        l.set_bracket(1, 3, &[q(0), q(0), q(0), q(0), q(0), q(1)]);
        assert!(l.is_lie());
        for module in [Module::Trivial, Module::Adjoint] {
            for j in 0..6 {
                let a = coboundary_matrix(&l, j, module);
                let b = coboundary_matrix(&l, j + 1, module);
                assert!(b.mul(&a).unwrap().is_zero(), "j = {j}, {module:?}");
            }
        }
    }

    #[test]
    fn heisenberg_profile() {
        let n3 = LieAlgebra::from_brackets(3, "n_3", &[(1, 2, vec![(3, q(1))])]).unwrap();
        let t = cohomology_profile(&n3, Module::Trivial);
        assert_eq!(t.h, vec![1, 2, 2, 1]);
        let a = cohomology_profile(&n3, Module::Adjoint);
        assert_eq!(a.h, vec![1, 4, 5, 2]);
        assert_eq!(a.euler_characteristic(), 0);
        assert_eq!(derivation_dim(&n3), 6);
    }

    #[test]
    fn filiform_seven_orbit() {
        let ga = filiform_a(7);
        assert_eq!(orbit_dim(&ga), 36);
        let p = cohomology_profile(&ga, Module::Adjoint);
        assert_eq!(p.h[0], 1);
        assert_eq!(p.euler_characteristic(), 0);
    }
}
