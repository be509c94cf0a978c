use proptest::prelude::*;

use lievar::catalog::{parse_entry, AlgebraRef, AnyAlgebra, Catalog};
use lievar::cohomology::{coboundary_matrix, Module};
use lievar::degeneration::{apply_base_change, psg_limit, InvariantFingerprint};
use lievar::field::{parse_expr, Field};
use lievar::liealg::LieAlgebra;
use lievar::{Matrix, Rational, RationalFunction};

fn rational_algebras(max_dim: usize) -> Vec<LieAlgebra<Rational>> {
    let cat = Catalog::embedded().unwrap();
    cat.entries()
        .iter()
        .filter(|e| e.params.is_empty() && e.dim <= max_dim)
        .filter_map(|e| match cat.get_concrete(&AlgebraRef::new(e.name.clone())) {
            Ok(AnyAlgebra::Rational(l)) => Some(l),
            _ => None,
        })
        .collect()
}

fn matrix(n: usize, entries: &[i64]) -> Matrix<Rational> {
    Matrix::from_rows(
        (0..n)
            .map(|i| (0..n).map(|j| Rational::from_i64(entries[i * n + j])).collect())
            .collect(),
    )
    .unwrap()
}

fn invertible(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
    proptest::collection::vec(-3i64..=3, n * n)
        .prop_map(move |v| matrix(n, &v))
        .prop_filter("invertible", |m| !m.determinant().unwrap().is_zero())
}

fn algebra_and_two_matrices(max_dim: usize) -> impl Strategy<Value = (LieAlgebra<Rational>, Matrix<Rational>, Matrix<Rational>)> {
    let algs = rational_algebras(max_dim);
    (0..algs.len()).prop_flat_map(move |i| {
        let l = algs[i].clone();
        let n = l.dim();
        (Just(l), invertible(n), invertible(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn action_is_a_group_action((l, g, h) in algebra_and_two_matrices(7)) {
        let lhs = apply_base_change(&apply_base_change(&l, &h).unwrap(), &g).unwrap();
        let rhs = apply_base_change(&l, &g.mul(&h).unwrap()).unwrap();
        prop_assert_eq!(lhs.constants(), rhs.constants());
        prop_assert!(lhs.is_lie());
    }

    #[test]
    fn fingerprint_is_base_change_invariant((l, g, _h) in algebra_and_two_matrices(5)) {
        let moved = apply_base_change(&l, &g).unwrap();
        prop_assert_eq!(InvariantFingerprint::compute(&moved), InvariantFingerprint::compute(&l));
    }

    #[test]
    fn coboundary_squares_to_zero((l, g, _h) in algebra_and_two_matrices(5)) {
        let l = apply_base_change(&l, &g).unwrap();
        for module in [Module::Trivial, Module::Adjoint] {
            for j in 0..l.dim() {
                let dd = coboundary_matrix(&l, j + 1, module).mul(&coboundary_matrix(&l, j, module)).unwrap();
                prop_assert!(dd.is_zero(), "d{}d{} != 0 for {}", j + 1, j, l.label);
            }
        }
    }

    #[test]
    fn one_parameter_limits_are_lie_algebras(
        idx in 0usize..64,
        weights in proptest::collection::vec(-2i32..=3, 7),
    ) {
        let algs = rational_algebras(7);
        let l = &algs[idx % algs.len()];
        let n = l.dim();
        let t = RationalFunction::<Rational>::var();
        let g = Matrix::diagonal(
            weights[..n]
                .iter()
                .map(|&m| if m >= 0 { t.pow(m as u32) } else { t.pow((-m) as u32).inv().unwrap() })
                .collect(),
        );
        if let Ok(limit) = psg_limit(l, &g) {
            prop_assert!(limit.is_lie(), "{}", l.label);
        }
    }

    #[test]
    fn expressions_round_trip(
        a in -20i64..20, b in 1i64..9, e in -4i32..6, c in -5i64..5,
    ) {
        let text = format!("{a}/{b}*t^{e} + ({c})*w - t");
        let x = parse_expr(&text).unwrap();
        let again = parse_expr(&x.to_string()).unwrap();
        prop_assert_eq!(again, x);
    }

    #[test]
    fn diagonal_certificates_round_trip(exps in proptest::collection::vec(-3i32..=5, 3)) {
        use lievar::degeneration::parse_certificate;
        let rows: Vec<String> = (0..3)
            .map(|i| (0..3).map(|j| if i == j { format!("t^{}", exps[i]) } else { "0".into() }).collect::<Vec<_>>().join(" "))
            .collect();
        let text = format!("id: x\nsource: n_3\ntarget: n_3\nmatrix: g\n{}\n", rows.join("\n"));
        let c = parse_certificate(&text).unwrap();
        prop_assert_eq!(parse_certificate(&c.to_string()).unwrap(), c);
    }
}

#[test]
fn catalog_entries_round_trip() {
    let cat = Catalog::embedded().unwrap();
    for e in cat.entries() {
        let text = e.serialize();
        let again = parse_entry(&text).unwrap();
        assert_eq!(&again, e, "{}", e.name);
        assert_eq!(again.serialize(), text);
    }
}

#[test]
fn shipped_certificates_are_never_obstructed() {
    use lievar::degeneration::{obstruction_battery, verify_all, Verdict};
    let cat = Catalog::embedded().unwrap();
    let certs = cat.certificates();
    for (c, v) in certs.iter().zip(verify_all(certs, &cat)) {
        assert_eq!(v.unwrap(), Verdict::Ok, "{}", c.id);
        let a = cat.get_concrete(&c.source).unwrap().fingerprint();
        let b = cat.get_concrete(&c.target).unwrap().fingerprint();
        let r = obstruction_battery(&a, &b).unwrap();
        assert!(!r.is_obstructed(), "{}: {}", c.id, r);
    }
}
