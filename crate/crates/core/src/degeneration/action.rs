use crate::error::{ArithError, Error, Result};
use crate::field::{Field, RationalFunction};
use crate::liealg::LieAlgebra;
use crate::linalg::Matrix;

/// `(g·μ)(x, y) = g(μ(g⁻¹x, g⁻¹y))`, given `g` and its inverse.
pub fn apply_base_change_with_inverse<F: Field>(
    l: &LieAlgebra<F>,
    g: &Matrix<F>,
    g_inv: &Matrix<F>,
) -> Result<LieAlgebra<F>> {
    let n = l.dim();
    for m in [g, g_inv] {
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: m.rows(),
            });
        }
    }
    // columns of g⁻¹ as sparse lists
    let cols: Vec<Vec<(usize, F)>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&a| !g_inv.get(a, i).is_zero())
                .map(|a| (a, g_inv.get(a, i).clone()))
                .collect()
        })
        .collect();
    let mut out = LieAlgebra::abelian(n);
    out.label = l.label.clone();
    out.params = l.params.clone();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = vec![F::zero(); n];
            for (a, ca) in &cols[i] {
                for (b, cb) in &cols[j] {
                    if a == b {
                        continue;
                    }
                    let s = ca.mul(cb);
                    for (r, c) in l.basis_bracket(*a, *b).iter().enumerate() {
                        if !c.is_zero() {
                            v[r] = v[r].add(&s.mul(c));
                        }
                    }
                }
            }
            let w = g.mul_vec(&v)?;
            out.set_bracket(i, j, &w);
        }
    }
    out.meta.type_one = out.is_type_one();
    Ok(out)
}

/// `(g·μ)(x, y) = g(μ(g⁻¹x, g⁻¹y))`.
pub fn apply_base_change<F: Field>(l: &LieAlgebra<F>, g: &Matrix<F>) -> Result<LieAlgebra<F>> {
    let g_inv = g.inverse()?;
    apply_base_change_with_inverse(l, g, &g_inv)
}

/// Embeds constant structure constants into `F(t)`.
pub fn lift<F: Field>(l: &LieAlgebra<F>) -> LieAlgebra<RationalFunction<F>> {
    l.map_field(|c| RationalFunction::constant(c.clone()))
}

/// `lim_{t→0} g_t·λ`, with `g_inv = g_t⁻¹`.
///
/// Fails with [`Error::NoLimit`] listing every `(i, j, k)` (1-based, `i < j`)
/// whose constant has a pole at `t = 0`.
pub fn psg_limit_with_inverse<F: Field>(
    l: &LieAlgebra<F>,
    g: &Matrix<RationalFunction<F>>,
    g_inv: &Matrix<RationalFunction<F>>,
) -> Result<LieAlgebra<F>> {
    let moved = apply_base_change_with_inverse(&lift(l), g, g_inv)?;
    let n = l.dim();
    let mut out = LieAlgebra::abelian(n);
    out.label = format!("lim {}", l.label);
    let mut poles = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = vec![F::zero(); n];
            for (k, c) in moved.basis_bracket(i, j).iter().enumerate() {
                match c.limit_at_zero() {
                    Ok(x) => v[k] = x,
                    Err(ArithError::NoLimit { .. }) => poles.push((i + 1, j + 1, k + 1)),
                    Err(e) => return Err(e.into()),
                }
            }
            out.set_bracket(i, j, &v);
        }
    }
    if !poles.is_empty() {
        return Err(Error::NoLimit(poles));
    }
    debug_assert!(out.is_lie());
    out.meta.type_one = out.is_type_one();
    Ok(out)
}

pub fn psg_limit<F: Field>(l: &LieAlgebra<F>, g: &Matrix<RationalFunction<F>>) -> Result<LieAlgebra<F>> {
    let g_inv = g.inverse()?;
    psg_limit_with_inverse(l, g, &g_inv)
}

/// `diag(t^{w_1}, ..., t^{w_n})`.
pub fn weight_matrix<F: Field>(weights: &[i64]) -> Matrix<RationalFunction<F>> {
    let t = RationalFunction::<F>::var();
    Matrix::diagonal(
        weights
            .iter()
            .map(|&w| {
                if w >= 0 {
                    t.pow(w as u32)
                } else {
                    t.pow((-w) as u32).inv().expect("t is nonzero")
                }
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn filiform(extra: &[(usize, usize, usize, i64)]) -> LieAlgebra<Rational> {
        let mut br: Vec<(usize, usize, Vec<(usize, Rational)>)> =
            (2..7).map(|i| (1, i, vec![(i + 1, q(1))])).collect();
        for &(i, j, k, c) in extra {
            br.push((i, j, vec![(k, q(c))]));
        }
        LieAlgebra::from_brackets(7, "test", &br).unwrap()
    }

    fn g_f() -> LieAlgebra<Rational> {
        filiform(&[(2, 3, 6, 1), (2, 4, 7, 1), (2, 5, 7, 1), (3, 4, 7, -1)])
    }

    #[test]
    fn identity_is_trivial() {
        let l = g_f();
        let moved = apply_base_change(&l, &Matrix::identity(7)).unwrap();
        assert_eq!(moved.constants(), l.constants());
    }

    #[test]
    fn scalar_contraction() {
        let l = g_f();
        let g = weight_matrix::<Rational>(&[-1; 7]);
        let moved = apply_base_change(&lift(&l), &g).unwrap();
        let t = RationalFunction::<Rational>::var();
        for (a, b) in moved.constants().iter().zip(l.constants()) {
            assert_eq!(*a, t.mul(&RationalFunction::constant(b.clone())));
        }
        assert!(psg_limit(&l, &g).unwrap().is_abelian());
    }

    #[test]
    fn diagonal_limit_to_g_c() {
        // the matrix is g⁻¹, so g has the opposite weights
        let g = weight_matrix::<Rational>(&[1, 2, 3, 4, 5, 6, 7]);
        let lim = psg_limit(&g_f(), &g).unwrap();
        assert_eq!(lim.constants(), filiform(&[(2, 5, 7, 1), (3, 4, 7, -1)]).constants());
    }

    #[test]
    fn pole_is_reported() {
        let g = weight_matrix::<Rational>(&[-1, -2, -3, -4, -5, -6, -7]);
        match psg_limit(&g_f(), &g) {
            Err(Error::NoLimit(p)) => assert!(p.contains(&(2, 3, 6))),
            other => panic!("{other:?}"),
        }
    }
}
