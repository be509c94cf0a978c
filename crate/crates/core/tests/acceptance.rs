//! One pass/fail line per acceptance criterion. All comparisons are exact
//! (integer or rational equality, zero tolerance).

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lievar::catalog::{AlgebraRef, AnyAlgebra, Catalog, ExpectedRow};
use lievar::cohomology::{coboundary_matrix, Module};
use lievar::degeneration::{
    apply_base_change, ideal_property_r, obstruction_battery, parse_certificate, psg_limit, verify_all, CertStore,
    Comparator, Comparison, InvariantFingerprint, Verdict,
};
use lievar::field::{Field, RationalFunction};
use lievar::hasse;
use lievar::liealg::{c_invariant, LieAlgebra, TraceInvariant};
use lievar::{Error, Matrix, Rational};

type Outcome = (bool, String);

fn r(s: &str) -> AlgebraRef {
    AlgebraRef::parse(s).unwrap()
}

fn rational(cat: &Catalog, s: &str) -> LieAlgebra<Rational> {
    cat.get_concrete(&r(s)).unwrap().as_rational().unwrap().clone()
}

/// Every catalog entry, families bound at a fixed generic point.
fn all_algebras(cat: &Catalog) -> Vec<AnyAlgebra> {
    cat.entries()
        .iter()
        .map(|e| {
            let mut a = AlgebraRef::new(e.name.clone());
            for (p, v) in e.params.iter().zip(["3", "5"]) {
                a = a.with(&p.name, lievar::field::parse_expr(v).unwrap());
            }
            cat.get_concrete(&a).unwrap()
        })
        .collect()
}

fn criterion_1(cat: &Catalog) -> Outcome {
    let expected = cat.expected("dim7-class56").unwrap();
    let mut bad = Vec::new();
    for want in expected {
        let fp = cat.fingerprint(&r(&want.reference)).unwrap();
        let got = ExpectedRow::from_fingerprint(want.reference.clone(), &fp.fingerprint);
        if &got != want || !fp.stable {
            bad.push(format!("{got} (expected {want})"));
        }
    }
    (bad.is_empty() && expected.len() == 36, format!("{} rows, mismatches: {bad:?}", expected.len()))
}

fn criterion_2(cat: &Catalog) -> Outcome {
    let cases = [("g_8", 3, 113), ("g_F", 3, 114), ("g_3", 3, 114), ("g_4", 3, 115), ("g_H", 2, 49), ("g_C", 2, 48)];
    let mut bad = Vec::new();
    for (label, j, want) in cases {
        let got = cat.get_concrete(&r(label)).unwrap().fingerprint().z[j];
        if got != want {
            bad.push(format!("z{j}({label}) = {got}, expected {want}"));
        }
    }
    (bad.is_empty(), format!("6 cocycle dimensions, mismatches: {bad:?}"))
}

const PRINTED: [&str; 17] = [
    "gF_to_gE", "gF_to_gC", "gF_to_gD", "gF_to_g13", "gE_to_gD", "gE_to_gB", "gE_to_gA", "gE_to_g19", "gE_to_g20",
    "gE_to_g21", "gE_to_g28", "gE_to_g29", "gE_to_g30", "gE_to_g31", "gC_to_g22", "gC_to_g25", "g10_to_g24",
];

fn criterion_3(cat: &Catalog) -> Outcome {
    let certs: Vec<_> = PRINTED
        .iter()
        .map(|id| cat.certificates().iter().find(|c| c.id == *id).cloned())
        .collect();
    if let Some(i) = certs.iter().position(Option::is_none) {
        return (false, format!("missing certificate {}", PRINTED[i]));
    }
    let certs: Vec<_> = certs.into_iter().flatten().collect();
    let verdicts = verify_all(&certs, cat);
    let bad: Vec<String> = certs
        .iter()
        .zip(&verdicts)
        .filter(|(_, v)| !matches!(v, Ok(Verdict::Ok)))
        .map(|(c, v)| format!("{}: {v:?}", c.id))
        .collect();
    // the diagonal as printed for g_E -> g_31 has no limit; the shipped file corrects it
    let printed_31 = "id: printed_gE_to_g31\nsource: g_E\ntarget: g_31\nmatrix: g_inverse\n\
        t 0 0 0 0 0 0\n0 t^4 0 0 0 0 0\n0 0 t^5 0 0 0 0\n0 0 0 1 0 0 0\n\
        0 0 0 0 t^2 0 0\n0 0 0 0 0 t^3 0\n0 0 0 0 0 0 t^4\n";
    let pole = matches!(parse_certificate(printed_31).unwrap().verify(cat), Err(Error::NoLimit(_)));
    (
        bad.is_empty() && pole,
        format!(
            "{} printed matrices OK (post-isos for g29, g21, g19, g20, g30; g31 with corrected diagonal diag(t,t^4,1,t,t^2,t^3,t^4), printed diagonal has a pole: {pole}); failures: {bad:?}",
            certs.len() - bad.len()
        ),
    )
}

fn criterion_4(cat: &Catalog, cmp: &Comparator) -> Outcome {
    let text = include_str!("data/dim7_cells.tsv");
    let mut bad = Vec::new();
    let (mut cells, mut ticks, mut ticks_certified) = (0, 0, 0);
    for line in text.lines().filter(|l| !l.starts_with('#')) {
        let f: Vec<&str> = line.split('\t').collect();
        let (src, dst, cell) = (f[0], f[1], f[2]);
        cells += 1;
        let status = cmp.compare(&r(src), &r(dst)).unwrap();
        match cell {
            "ok" => {
                ticks += 1;
                match status {
                    Comparison::Degenerates { .. } => ticks_certified += 1,
                    Comparison::Unknown => {}
                    other => bad.push(format!("{src}->{dst} expected a degeneration, got {other}")),
                }
            }
            "B" | "z" => {
                if matches!(status, Comparison::Degenerates { .. }) {
                    bad.push(format!("{src}->{dst} ({cell}) reported {status}"));
                }
            }
            "I" => {
                let (a, b) = (ideal_property_r(&rational(cat, src)), ideal_property_r(&rational(cat, dst)));
                if !(a.exists() && !b.exists()) || !matches!(status, Comparison::Obstructed { .. }) {
                    bad.push(format!("{src}->{dst} (I): {a:?} / {b:?}, {status}"));
                }
            }
            id => {
                let fa = cmp.fingerprint(&r(src)).unwrap();
                let fb = cmp.fingerprint(&r(dst)).unwrap();
                let report = obstruction_battery(&fa, &fb).unwrap();
                let hit = report.get(id).is_some_and(|c| c.violated.is_some());
                if !hit || !matches!(status, Comparison::Obstructed { .. }) {
                    bad.push(format!("{src}->{dst} ({id}) not violated: {:?}", report.get(id)));
                }
            }
        }
    }
    (
        bad.is_empty(),
        format!(
            "{cells} cells; {ticks} checkmarks of which {ticks_certified} certified by shipped chains, {} tracked as UNKNOWN (expected DEGENERATES); failures: {bad:?}",
            ticks - ticks_certified
        ),
    )
}

fn structural<F: Field>(l: &LieAlgebra<F>) -> Result<(), String> {
    let n = l.dim();
    for module in [Module::Trivial, Module::Adjoint] {
        for j in 0..n {
            let dd = coboundary_matrix(l, j + 1, module).mul(&coboundary_matrix(l, j, module)).unwrap();
            if !dd.is_zero() {
                return Err(format!("d{}d{} != 0 ({module:?})", j + 1, j));
            }
        }
    }
    let fp = InvariantFingerprint::compute(l);
    let alt = |v: &[usize]| v.iter().enumerate().map(|(j, &x)| if j % 2 == 0 { x as i64 } else { -(x as i64) }).sum::<i64>();
    let checks = [
        (alt(&fp.h) == 0, "sum (-1)^j h_j = 0"),
        (alt(&fp.b) == 0, "sum (-1)^j b_j = 0"),
        (fp.h[0] == fp.center_dim, "h0 = dim Z"),
        (fp.b[1] == n - fp.derived_dim, "b1 = n - dim[g,g]"),
        (fp.orbit_dim == n * n - fp.z[1], "dim O = n^2 - dim Z^1"),
        (fp.h[1] + n == fp.derivation_dim + fp.center_dim, "h1 = dim Der - (n - dim Z)"),
    ];
    match checks.iter().find(|(ok, _)| !ok) {
        Some((_, what)) => Err(what.to_string()),
        None => Ok(()),
    }
}

fn criterion_5(cat: &Catalog) -> Outcome {
    let algs = all_algebras(cat);
    let bad: Vec<String> = algs
        .iter()
        .filter_map(|a| {
            let res = match a {
                AnyAlgebra::Rational(l) => structural(l),
                AnyAlgebra::Quad(l) => structural(l),
            };
            res.err().map(|e| format!("{}: {e}", a.label()))
        })
        .collect();
    (bad.is_empty(), format!("{} algebras, failures: {bad:?}", algs.len()))
}

fn criterion_6(cat: &Catalog) -> Outcome {
    let algs: Vec<LieAlgebra<Rational>> = all_algebras(cat)
        .into_iter()
        .filter_map(|a| a.as_rational().cloned())
        .filter(|l| !l.is_abelian())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut bad = Vec::new();
    let mut picked = Vec::new();
    for _ in 0..10 {
        let l = &algs[rng.gen_range(0..algs.len())];
        picked.push(l.label.clone());
        let t_inv = RationalFunction::<Rational>::var().inv().unwrap();
        let g = Matrix::diagonal(vec![t_inv; l.dim()]);
        match psg_limit(l, &g) {
            Ok(lim) if lim.is_abelian() => {}
            other => bad.push(format!("{}: {other:?}", l.label)),
        }
    }
    (bad.is_empty(), format!("limits of t^-1 I on {picked:?}; failures: {bad:?}"))
}

fn closure(edges: &[(&str, &str)]) -> BTreeSet<(String, String)> {
    let mut out: BTreeSet<(String, String)> = edges.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    loop {
        let add: Vec<_> = out
            .iter()
            .flat_map(|(a, b)| out.iter().filter(move |(c, _)| c == b).map(move |(_, d)| (a.clone(), d.clone())))
            .filter(|p| !out.contains(p))
            .collect();
        if add.is_empty() {
            return out;
        }
        out.extend(add);
    }
}

/// Reachability of the set's diagram equals the printed one; every other pair is obstructed.
fn diagram_matches(cat: &Catalog, cmp: &Comparator, set: &str, printed: &[(&str, &str)]) -> (bool, String) {
    let g = hasse::build(cat.set(set).unwrap(), cmp).unwrap();
    let want = closure(printed);
    let got = g.reachable_pairs();
    let undecided: Vec<String> = g
        .pairs
        .iter()
        .filter(|p| !matches!(p.status, Comparison::Degenerates { .. } | Comparison::Obstructed { .. }))
        .map(|p| format!("{}->{}", g.nodes[p.src].key, g.nodes[p.dst].key))
        .collect();
    let mut reasons = std::collections::BTreeMap::new();
    for p in &g.pairs {
        if let Comparison::Obstructed { reason, .. } = &p.status {
            *reasons.entry(reason.split(' ').next().unwrap_or("").to_string()).or_insert(0) += 1;
        }
    }
    let ok = got == want && undecided.is_empty();
    (
        ok,
        format!(
            "{set}: {} nodes, {} reachable pairs (printed diagram {}), {} undecided {undecided:?}, obstructions by criterion {reasons:?}",
            g.nodes.len(),
            got.len(),
            want.len(),
            undecided.len()
        ),
    )
}

const N5: [(&str, &str); 13] = [
    ("g_5,6", "g_5,3"), ("g_5,6", "g_5,4"), ("g_5,6", "g_5,5"), ("g_5,3", "n_4+C"), ("g_5,3", "g_5,1"),
    ("g_5,4", "n_4+C"), ("g_5,5", "n_4+C"), ("g_5,5", "g_5,2"), ("g_5,1", "n_3+C^2"), ("n_4+C", "g_5,2"),
    ("n_4+C", "n_3+C^2"), ("g_5,2", "n_3+C^2"), ("n_3+C^2", "C^5"),
];
const N6: [(&str, &str); 5] = [
    ("g_6,E", "g_6,C"), ("g_6,E", "g_6,D"), ("g_6,C", "g_6,B"), ("g_6,D", "g_6,B"), ("g_6,B", "g_6,A"),
];

fn criterion_7(cat: &Catalog, cmp: &Comparator) -> Outcome {
    let (a, ma) = diagram_matches(cat, cmp, "N5", &N5);
    let (b, mb) = diagram_matches(cat, cmp, "N6-filiform", &N6);
    (a && b, format!("{ma}; {mb}"))
}

const L3: [(&str, &str); 7] = [
    ("sl_2", "r_3,-1"), ("r_3", "r_3,1"), ("r_3", "n_3"), ("r_2+C", "n_3"), ("r_3,alpha(a=1/2)", "n_3"),
    ("r_3,-1", "n_3"), ("n_3", "C^3"),
];
const L4_ESSENTIAL: [(&str, &str); 15] = [
    ("g4_4(a=3,b=5)", "n_4"), ("n_4", "n_3+C"), ("n_3+C", "C^4"), ("g4_4(a=3,b=1)", "g4_2(a=3)"),
    ("g4_2(a=3)", "n_3+C"), ("g4_4(a=0,b=0)", "r_2+C^2"), ("r_2+C^2", "n_3+C"), ("g4_2(a=1)", "g4_1"),
    ("g4_1", "C^4"), ("g4_5(a=1)", "g4_3"), ("g4_3", "g4_2(a=2)"), ("g4_5(a=3)", "g4_4(a=3,b=4)"),
    ("sl_2+C", "g4_5(a=-1)"), ("r_2+r_2", "g4_4(a=3,b=0)"), ("r_2+r_2", "g4_5(a=0)"),
];

fn criterion_8(cat: &Catalog, cmp: &Comparator) -> Outcome {
    let mut l3 = L3.to_vec();
    l3.push(("r_3,1", "C^3"));
    let (a, ma) = diagram_matches(cat, cmp, "L3", &l3);
    let g = hasse::build(cat.set("L4").unwrap(), cmp).unwrap();
    let red = hasse::transitive_reduction(&g).unwrap();
    let want: BTreeSet<(String, String)> = L4_ESSENTIAL.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    let got = red.edge_keys();
    let b = got == want;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut c_bad = Vec::new();
    for _ in 0..10 {
        let alpha = loop {
            let v = Rational::new(rng.gen_range(-40..=40), rng.gen_range(1..=9)).unwrap();
            if ![-1i64, 0, 1].iter().any(|&x| v == Rational::from_i64(x)) {
                break v;
            }
        };
        let l = rational(cat, &format!("r_3,alpha+C(a={alpha})"));
        for i in 1..=3u32 {
            for j in 1..=3u32 {
                let one = Rational::one();
                let want = one.add(&alpha.pow(i).add(&alpha.pow(j)).div(&one.add(&alpha.pow(i + j))).unwrap());
                match c_invariant(&l, i, j, 12, 99) {
                    Ok(TraceInvariant::Value(v)) if v == want => {}
                    other => c_bad.push(format!("c{i}{j}(a={alpha}) = {other:?}, expected {want}")),
                }
            }
        }
    }
    (
        a && b && c_bad.is_empty(),
        format!(
            "{ma}; L4 reduction has {} edges, equal to the 15 essential arrows: {b} (extra {:?}, missing {:?}); c_ij closed form at 10 random a: {c_bad:?}",
            got.len(),
            got.difference(&want).collect::<Vec<_>>(),
            want.difference(&got).collect::<Vec<_>>()
        ),
    )
}

fn criterion_9(cat: &Catalog) -> Outcome {
    let algs: Vec<LieAlgebra<Rational>> = all_algebras(cat).into_iter().filter_map(|a| a.as_rational().cloned()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut bad = Vec::new();
    let invertible = |n: usize, rng: &mut ChaCha8Rng| loop {
        let rows: Vec<Vec<Rational>> = (0..n).map(|_| (0..n).map(|_| Rational::from_i64(rng.gen_range(-2..=2))).collect()).collect();
        let m = Matrix::from_rows(rows).unwrap();
        if !m.determinant().unwrap().is_zero() {
            return m;
        }
    };
    for trial in 0..100 {
        let l = &algs[rng.gen_range(0..algs.len())];
        let g = invertible(l.dim(), &mut rng);
        let h = invertible(l.dim(), &mut rng);
        let lhs = apply_base_change(&apply_base_change(l, &h).unwrap(), &g).unwrap();
        let rhs = apply_base_change(l, &g.mul(&h).unwrap()).unwrap();
        if lhs.constants() != rhs.constants() {
            bad.push(format!("trial {trial}: action on {}", l.label));
        }
        if InvariantFingerprint::compute(&apply_base_change(l, &g).unwrap()) != InvariantFingerprint::compute(l) {
            bad.push(format!("trial {trial}: fingerprint of {}", l.label));
        }
    }
    (bad.is_empty(), format!("100 trials (seed 9), failures: {bad:?}"))
}

#[test]
fn acceptance() {
    let cat = Catalog::embedded().unwrap();
    let store = CertStore::verified(&cat).unwrap();
    let cmp = Comparator::new(&cat, &store);
    let results = [
        criterion_1(&cat),
        criterion_2(&cat),
        criterion_3(&cat),
        criterion_4(&cat, &cmp),
        criterion_5(&cat),
        criterion_6(&cat),
        criterion_7(&cat, &cmp),
        criterion_8(&cat, &cmp),
        criterion_9(&cat),
    ];
    for (i, (ok, msg)) in results.iter().enumerate() {
        println!("criterion {}: {} - {msg}", i + 1, if *ok { "PASS" } else { "FAIL" });
    }
    let failed: Vec<usize> = (0..results.len()).filter(|&i| !results[i].0).map(|i| i + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
