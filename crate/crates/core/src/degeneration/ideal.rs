use super::groebner::{is_inconsistent, MPoly};
use crate::field::{Field, Rational};
use crate::liealg::{unit_vector, LieAlgebra, Subspace};

/// Existence of a codimension-one ideal `I ⊇ [g,g]` with `[I,[I,I]] = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealProperty {
    Witness(Subspace<Rational>),
    /// Solutions exist over `C` but none was found at small rational points.
    ExistsOverC,
    NoneExists,
}

impl IdealProperty {
    pub fn exists(&self) -> bool {
        !matches!(self, IdealProperty::NoneExists)
    }
}

pub(super) type PolyVec = Vec<MPoly>;

pub(super) fn bracket(l: &LieAlgebra<Rational>, u: &PolyVec, v: &PolyVec, nv: usize) -> PolyVec {
    let n = l.dim();
    let mut out = vec![MPoly::zero(nv); n];
    for i in 0..n {
        if u[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if i == j || v[j].is_zero() {
                continue;
            }
            let uv = u[i].mul(&v[j]);
            for (k, c) in l.basis_bracket(i, j).iter().enumerate() {
                if !c.is_zero() {
                    out[k] = out[k].add(&uv.scale(c));
                }
            }
        }
    }
    out
}

const GRID: [(i64, i64); 9] = [(0, 1), (1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2), (3, 1), (-3, 1)];

/// Decides the property by running over the affine charts of the projective
/// space of hyperplanes containing `[g,g]`.
pub fn ideal_property_r(l: &LieAlgebra<Rational>) -> IdealProperty {
    let n = l.dim();
    let d = l.derived_algebra();
    if d.dim() == n {
        return IdealProperty::NoneExists;
    }
    let comp = d.complement_indices();
    let m = comp.len();
    let mut exists = false;
    for k in 0..m {
        let nv = m - 1 - k;
        let var_of = |j: usize| (j > k).then(|| j - k - 1);
        let lift = |v: &[Rational]| -> PolyVec { v.iter().map(|c| MPoly::constant(nv, c.clone())).collect() };
        let mut basis: Vec<PolyVec> = d.basis().iter().map(|b| lift(b)).collect();
        for j in (0..m).filter(|&j| j != k) {
            let mut v = lift(&unit_vector::<Rational>(n, comp[j]));
            if let Some(x) = var_of(j) {
                v[comp[k]] = MPoly::var(nv, x).scale(&Rational::from(-1));
            }
            basis.push(v);
        }
        let mut eqs = Vec::new();
        for a in 0..basis.len() {
            for b in a + 1..basis.len() {
                let ab = bracket(l, &basis[a], &basis[b], nv);
                if ab.iter().all(MPoly::is_zero) {
                    continue;
                }
                for u in &basis {
                    eqs.extend(bracket(l, u, &ab, nv).into_iter().filter(|p| !p.is_zero()));
                }
            }
        }
        if is_inconsistent(&eqs) {
            continue;
        }
        exists = true;
        if let Some(pt) = grid_point(&eqs, nv) {
            let vecs = basis
                .iter()
                .map(|v| v.iter().map(|p| p.eval(&pt)).collect())
                .collect();
            return IdealProperty::Witness(Subspace::span(n, vecs));
        }
    }
    if exists {
        IdealProperty::ExistsOverC
    } else {
        IdealProperty::NoneExists
    }
}

fn grid_point(eqs: &[MPoly], nv: usize) -> Option<Vec<Rational>> {
    let vals: Vec<Rational> = GRID.iter().map(|&(p, q)| Rational::new(p, q).unwrap()).collect();
    let total = vals.len().checked_pow(nv as u32)?;
    if total > 100_000 {
        return None;
    }
    (0..total).find_map(|mut idx| {
        let pt: Vec<Rational> = (0..nv)
            .map(|_| {
                let v = vals[idx % vals.len()].clone();
                idx /= vals.len();
                v
            })
            .collect();
        eqs.iter().all(|p| p.eval(&pt).is_zero()).then_some(pt)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(n: usize, br: &[(usize, usize, usize)]) -> LieAlgebra<Rational> {
        let v: Vec<_> = br.iter().map(|&(i, j, k)| (i, j, vec![(k, Rational::from(1))])).collect();
        LieAlgebra::from_brackets(n, "x", &v).unwrap()
    }

    #[test]
    fn abelian_has_witness() {
        let c3 = LieAlgebra::<Rational>::abelian(3);
        match ideal_property_r(&c3) {
            IdealProperty::Witness(s) => assert_eq!(s.dim(), 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn filiform_four() {
        // n_4: [x1,x2]=x3, [x1,x3]=x4; I = span(x2,x3,x4) is abelian
        assert!(ideal_property_r(&alg(4, &[(1, 2, 3), (1, 3, 4)])).exists());
        // [x1,x2]=x3, [x1,x3]=x4, [x2,x3]=x5 with I = span(x2,..,x5)
        let l = alg(5, &[(1, 2, 3), (1, 3, 4), (2, 3, 5)]);
        match ideal_property_r(&l) {
            IdealProperty::Witness(s) => assert_eq!(s.pivots(), &[1, 2, 3, 4]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn perfect_algebra() {
        let q = Rational::from;
        let sl2 = LieAlgebra::from_brackets(
            3,
            "sl_2",
            &[(1, 2, vec![(3, q(1))]), (1, 3, vec![(1, q(-2))]), (2, 3, vec![(2, q(2))])],
        )
        .unwrap();
        assert_eq!(ideal_property_r(&sl2), IdealProperty::NoneExists);
    }
}
