use lievar::catalog::{Catalog, ExpectedRow};

fn check(set: &str) {
    let cat = Catalog::embedded().unwrap();
    let expected = cat.expected(set).unwrap();
    let members = &cat.set(set).unwrap().members;
    assert_eq!(members.len(), expected.len(), "{set}");
    let mut bad = Vec::new();
    for (r, want) in members.iter().zip(expected) {
        let fp = cat.fingerprint(r).unwrap();
        let got = ExpectedRow::from_fingerprint(r.to_string(), &fp.fingerprint);
        if &got != want {
            bad.push(format!("expected {want}\ncomputed {got}"));
        }
    }
    assert!(bad.is_empty(), "{set}:\n{}", bad.join("\n"));
}

#[test]
fn nilpotent_low_dimension() {
    for set in ["N3", "N4", "N5", "N6-filiform"] {
        check(set);
    }
}

#[test]
fn all_low_dimension() {
    for set in ["L2", "L3", "L4"] {
        check(set);
    }
}

#[test]
fn dimension_seven() {
    check("dim7-class56");
}
