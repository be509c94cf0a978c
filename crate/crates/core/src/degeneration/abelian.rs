//! Abelian subalgebras. Having one of dimension `k` is a closed condition on
//! laws, so the maximal such `k` can only grow along a degeneration.

use super::groebner::{is_inconsistent, MPoly};
use super::ideal::{bracket, PolyVec};
use crate::field::{Field, Rational};
use crate::liealg::LieAlgebra;

/// Largest set of pairwise commuting basis vectors; a lower bound for the
/// maximal dimension of an abelian subalgebra.
pub fn abelian_lower_bound<F: Field>(l: &LieAlgebra<F>) -> usize {
    let n = l.dim();
    let commute = |i: usize, j: usize| l.basis_bracket(i, j).iter().all(Field::is_zero);
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if members.iter().enumerate().all(|(a, &i)| members[a + 1..].iter().all(|&j| commute(i, j))) {
            best = size;
        }
    }
    best
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n))
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// Whether an abelian subalgebra of dimension `k` exists over `C`. Each chart
/// of the Grassmannian is the row space of a matrix that is the identity on
/// the pivot columns; the commutation equations are decided by Groebner bases.
pub fn has_abelian_subalgebra(l: &LieAlgebra<Rational>, k: usize) -> bool {
    let n = l.dim();
    if k <= 1 {
        return k <= n;
    }
    if k > n {
        return false;
    }
    subsets(n, k).into_iter().any(|pivots| {
        let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
        let nv = k * free.len();
        let rows: Vec<PolyVec> = pivots
            .iter()
            .enumerate()
            .map(|(r, &p)| {
                let mut v = vec![MPoly::zero(nv); n];
                v[p] = MPoly::constant(nv, Rational::one());
                for (c, &j) in free.iter().enumerate() {
                    v[j] = MPoly::var(nv, r * free.len() + c);
                }
                v
            })
            .collect();
        let mut eqs = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                eqs.extend(bracket(l, &rows[a], &rows[b], nv).into_iter().filter(|p| !p.is_zero()));
            }
        }
        !is_inconsistent(&eqs)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(n: usize, br: &[(usize, usize, usize)]) -> LieAlgebra<Rational> {
        let mut l = LieAlgebra::abelian(n);
        for &(i, j, k) in br {
            let mut v = vec![Rational::zero(); n];
            v[k - 1] = Rational::one();
            l.set_bracket(i - 1, j - 1, &v);
        }
        l
    }

    #[test]
    fn heisenberg_five() {
        let l = alg(5, &[(1, 3, 5), (2, 4, 5)]);
        assert_eq!(abelian_lower_bound(&l), 3);
        assert!(has_abelian_subalgebra(&l, 3));
        assert!(!has_abelian_subalgebra(&l, 4));
    }

    #[test]
    fn standard_filiform() {
        let l = alg(5, &[(1, 2, 3), (1, 3, 4), (1, 4, 5)]);
        assert_eq!(abelian_lower_bound(&l), 4);
        assert!(has_abelian_subalgebra(&l, 4));
        assert!(!has_abelian_subalgebra(&l, 5));
    }

    #[test]
    fn sl2_has_only_lines() {
        let mut l = LieAlgebra::abelian(3);
        let v = |a: i64, b: i64, c: i64| [a, b, c].map(Rational::from_i64);
        l.set_bracket(0, 1, &v(0, 2, 0));
        l.set_bracket(0, 2, &v(0, 0, -2));
        l.set_bracket(1, 2, &v(1, 0, 0));
        assert_eq!(abelian_lower_bound(&l), 1);
        assert!(!has_abelian_subalgebra(&l, 2));
    }
}
