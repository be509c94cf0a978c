use std::collections::BTreeSet;

use lievar::catalog::Catalog;
use lievar::degeneration::{CertStore, Comparator, Comparison};
use lievar::hasse::{build, emit_dot, transitive_reduction, DegenerationGraph};

fn graph(set: &str) -> DegenerationGraph {
    let cat = Catalog::embedded().unwrap();
    let store = CertStore::verified(&cat).unwrap();
    let cmp = Comparator::new(&cat, &store);
    build(cat.set(set).unwrap(), &cmp).unwrap()
}

fn pairs(list: &[(&str, &str)]) -> BTreeSet<(String, String)> {
    list.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

#[test]
fn n4_is_a_chain() {
    let g = graph("N4");
    let red = transitive_reduction(&g).unwrap();
    assert_eq!(red.edge_keys(), pairs(&[("n_4", "n_3+C"), ("n_3+C", "C^4")]));
    assert_eq!(g.reachable_pairs().len(), 3);
}

#[test]
fn n6_reduced_diagram() {
    let g = graph("N6-filiform");
    let red = transitive_reduction(&g).unwrap();
    assert_eq!(
        red.edge_keys(),
        pairs(&[
            ("g_6,E", "g_6,C"),
            ("g_6,E", "g_6,D"),
            ("g_6,C", "g_6,B"),
            ("g_6,D", "g_6,B"),
            ("g_6,B", "g_6,A"),
        ])
    );
    assert!(g.pairs.iter().all(|p| !matches!(p.status, Comparison::Unknown)));
    let ranks: Vec<usize> = g.nodes.iter().map(|n| n.orbit_dim).collect();
    assert!(ranks.windows(2).all(|w| w[0] >= w[1]));
}

#[test]
fn l2_and_dot_layout() {
    let g = graph("L2");
    assert_eq!(g.edge_keys(), pairs(&[("r_2", "C^2")]));
    let dot = emit_dot(&g, false);
    assert!(dot.contains("rank=same"));
    assert!(dot.contains("dim O = 2"));
}

#[test]
fn dim7_graph_is_consistent() {
    let g = graph("dim7-class56");
    assert_eq!(g.nodes.len(), 35);
    let red = transitive_reduction(&g).unwrap();
    for (a, b) in red.edge_keys() {
        assert!(g.reachable_pairs().contains(&(a, b)));
    }
    assert!(g.edge_keys().contains(&("g_F".to_string(), "g_29".to_string())));
}
