use lievar::catalog::Catalog;
use lievar::degeneration::{parse_certificate, verify_all, Verdict};
use lievar::Error;

fn catalog() -> Catalog {
    Catalog::embedded().expect("embedded catalog loads")
}

#[test]
fn shipped_corpus_verifies() {
    let cat = catalog();
    let certs = cat.certificates();
    assert!(certs.len() >= 17);
    let mut failures = Vec::new();
    for (c, v) in certs.iter().zip(verify_all(certs, &cat)) {
        match v {
            Ok(Verdict::Ok) => {}
            other => failures.push(format!("{}: {other:?}", c.id)),
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn shipped_files_round_trip() {
    for c in catalog().certificates() {
        let again = parse_certificate(&c.to_string()).unwrap();
        assert_eq!(&again, c);
    }
}

#[test]
fn contraction_to_wrong_target_reports_mismatch() {
    let cat = catalog();
    let text = "source: g_F\ntarget: g_E\nmatrix: g_inverse\n\
        t^-1 0 0 0 0 0 0\n0 t^-2 0 0 0 0 0\n0 0 t^-3 0 0 0 0\n0 0 0 t^-4 0 0 0\n\
        0 0 0 0 t^-5 0 0\n0 0 0 0 0 t^-6 0\n0 0 0 0 0 0 t^-7\n";
    let v = parse_certificate(text).unwrap().verify(&cat).unwrap();
    assert!(matches!(v, Verdict::Mismatch { .. }), "{v:?}");
}

#[test]
fn pole_is_reported() {
    let cat = catalog();
    let text = "source: n_3\ntarget: C^3\nmatrix: g\nt 0 0\n0 1 0\n0 0 1\n";
    match parse_certificate(text).unwrap().verify(&cat) {
        Err(Error::NoLimit(list)) => assert!(list.contains(&(1, 2, 3))),
        other => panic!("{other:?}"),
    }
}

#[test]
fn unknown_label() {
    let cat = catalog();
    let text = "source: nosuch\ntarget: C^3\nmatrix: g\n1 0 0\n0 1 0\n0 0 1\n";
    assert!(matches!(
        parse_certificate(text).unwrap().verify(&cat),
        Err(Error::UnknownLabel(_))
    ));
}
