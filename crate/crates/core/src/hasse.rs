//! Degeneration diagrams over a named algebra set.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::catalog::AlgebraSet;
use crate::degeneration::{Comparator, Comparison};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    /// Canonical reference, e.g. `g4_4(a=3,b=5)`.
    pub key: String,
    pub orbit_dim: usize,
}

/// Decided and undecided relations between two nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pair {
    pub src: usize,
    pub dst: usize,
    pub status: Comparison,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub certificates: Vec<String>,
}

/// Nodes sorted by orbit dimension (descending) then key. `edges` are
/// verified degenerations; `pairs` records every ordered pair's status.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegenerationGraph {
    pub name: String,
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    pub pairs: Vec<Pair>,
}

impl DegenerationGraph {
    pub fn node(&self, key: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.key == key)
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            adj[e.src].push(e.dst);
        }
        adj
    }

    /// `reach[a][b]` iff a non-empty edge path leads from `a` to `b`.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.nodes.len();
        let adj = self.adjacency();
        let mut reach = vec![vec![false; n]; n];
        for s in 0..n {
            let mut stack = adj[s].clone();
            while let Some(u) = stack.pop() {
                if !reach[s][u] {
                    reach[s][u] = true;
                    stack.extend(&adj[u]);
                }
            }
        }
        reach
    }

    /// Non-trivial reachable pairs by key.
    pub fn reachable_pairs(&self) -> BTreeSet<(String, String)> {
        let reach = self.reachability();
        let mut out = BTreeSet::new();
        for (a, row) in reach.iter().enumerate() {
            for (b, &r) in row.iter().enumerate() {
                if r {
                    out.insert((self.nodes[a].key.clone(), self.nodes[b].key.clone()));
                }
            }
        }
        out
    }

    pub fn edge_keys(&self) -> BTreeSet<(String, String)> {
        self.edges
            .iter()
            .map(|e| (self.nodes[e.src].key.clone(), self.nodes[e.dst].key.clone()))
            .collect()
    }

    fn check_acyclic(&self) -> Result<()> {
        let reach = self.reachability();
        for (i, row) in reach.iter().enumerate() {
            if row[i] {
                return Err(Error::Consistency(format!("cycle through {}", self.nodes[i].key)));
            }
        }
        Ok(())
    }
}

/// Compares every ordered pair of the set's diagram nodes. Verified chains
/// become edges; equal fingerprints or non-decreasing orbit dimension along
/// an edge is a consistency error.
pub fn build(set: &AlgebraSet, cmp: &Comparator) -> Result<DegenerationGraph> {
    let mut keyed = Vec::new();
    for r in set.graph_nodes() {
        let key = cmp.key(r)?;
        let fp = cmp.fingerprint(r)?;
        if keyed.iter().any(|(k, _): &(String, _)| *k == key) {
            continue;
        }
        keyed.push((key, fp));
    }
    keyed.sort_by(|a, b| b.1.orbit_dim.cmp(&a.1.orbit_dim).then_with(|| a.0.cmp(&b.0)));
    let nodes: Vec<Node> = keyed
        .iter()
        .map(|(k, fp)| Node {
            key: k.clone(),
            orbit_dim: fp.orbit_dim,
        })
        .collect();
    let todo: Vec<(usize, usize)> = (0..nodes.len())
        .flat_map(|a| (0..nodes.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && keyed[a].1.n == keyed[b].1.n)
        .collect();
    let statuses: Vec<Result<Comparison>> = todo
        .par_iter()
        .map(|&(a, b)| cmp.compare_keys(&nodes[a].key, &nodes[b].key))
        .collect();
    let mut g = DegenerationGraph {
        name: set.name.clone(),
        nodes,
        ..Default::default()
    };
    for (&(a, b), status) in todo.iter().zip(statuses) {
        let status = status?;
        if let Comparison::Degenerates { certificates } = &status {
            if keyed[a].1 == keyed[b].1 || g.nodes[a].orbit_dim <= g.nodes[b].orbit_dim {
                return Err(Error::Consistency(format!(
                    "{} -> {} does not lower the orbit dimension ({} vs {})",
                    g.nodes[a].key, g.nodes[b].key, g.nodes[a].orbit_dim, g.nodes[b].orbit_dim
                )));
            }
            g.edges.push(Edge {
                src: a,
                dst: b,
                certificates: certificates.clone(),
            });
        }
        g.pairs.push(Pair { src: a, dst: b, status });
    }
    g.check_acyclic()?;
    Ok(g)
}

/// Drops every edge implied by a longer path.
pub fn transitive_reduction(g: &DegenerationGraph) -> Result<DegenerationGraph> {
    g.check_acyclic()?;
    let reach = g.reachability();
    let n = g.nodes.len();
    let mut out = g.clone();
    out.edges.retain(|e| !(0..n).any(|c| c != e.src && c != e.dst && reach[e.src][c] && reach[c][e.dst]));
    // parallel certificates for the same pair collapse to one edge
    out.edges.dedup_by(|x, y| x.src == y.src && x.dst == y.dst);
    Ok(out)
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\"").replace('\n', "\\n"))
}

/// Graphviz text. One rank per orbit dimension; edge labels list the
/// certificates of the chain; `show_unknown` draws undecided pairs dashed.
pub fn emit_dot(g: &DegenerationGraph, show_unknown: bool) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph {} {{", quote(&g.name));
    s.push_str("  rankdir=TB;\n");
    s.push_str("  labelloc=b;\n");
    s.push_str(
        "  label=\"solid: verified degenerations (certificate ids); dashed: undecided pairs.\\n\
         The order drawn is a lower bound on the true degeneration order.\";\n",
    );
    s.push_str("  node [shape=box];\n");
    for (i, n) in g.nodes.iter().enumerate() {
        let _ = writeln!(s, "  n{i} [label={}];", quote(&format!("{}\ndim O = {}", n.key, n.orbit_dim)));
    }
    let mut dims: Vec<usize> = g.nodes.iter().map(|n| n.orbit_dim).collect();
    dims.dedup();
    for d in dims {
        let ids: Vec<String> = (0..g.nodes.len())
            .filter(|&i| g.nodes[i].orbit_dim == d)
            .map(|i| format!("n{i};"))
            .collect();
        let _ = writeln!(s, "  {{ rank=same; {} }}", ids.join(" "));
    }
    for e in &g.edges {
        let _ = writeln!(s, "  n{} -> n{} [label={}];", e.src, e.dst, quote(&e.certificates.join(",")));
    }
    if show_unknown {
        for p in &g.pairs {
            if p.status == Comparison::Unknown && g.nodes[p.src].orbit_dim > g.nodes[p.dst].orbit_dim {
                let _ = writeln!(s, "  n{} -> n{} [style=dashed, color=gray];", p.src, p.dst);
            }
        }
    }
    s.push_str("}\n");
    s
}

/// `src dst status evidence` for every compared pair.
pub fn to_tsv(g: &DegenerationGraph) -> String {
    let mut s = String::from("# src\tdst\tstatus\tevidence\n");
    for p in &g.pairs {
        let (status, evidence) = match &p.status {
            Comparison::Degenerates { certificates } => ("DEGENERATES", certificates.join(",")),
            Comparison::Obstructed { reason, via } => (
                "OBSTRUCTED",
                match via {
                    None => reason.clone(),
                    Some((a, b)) => format!("{reason} via {a} -> {b}"),
                },
            ),
            Comparison::Unknown => ("UNKNOWN", "-".to_string()),
        };
        let _ = writeln!(
            s,
            "{}\t{}\t{status}\t{evidence}",
            g.nodes[p.src].key, g.nodes[p.dst].key
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> DegenerationGraph {
        DegenerationGraph {
            name: "t".into(),
            nodes: (0..n)
                .map(|i| Node {
                    key: format!("v{i}"),
                    orbit_dim: 10 - i,
                })
                .collect(),
            edges: edges
                .iter()
                .map(|&(src, dst)| Edge {
                    src,
                    dst,
                    certificates: vec![format!("c{src}{dst}")],
                })
                .collect(),
            pairs: Vec::new(),
        }
    }

    #[test]
    fn triangle_drops_shortcut() {
        let g = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let r = transitive_reduction(&g).unwrap();
        assert_eq!(r.edges.len(), 2);
        assert_eq!(r.reachable_pairs(), g.reachable_pairs());
    }

    #[test]
    fn cycle_is_rejected() {
        let g = graph(2, &[(0, 1), (1, 0)]);
        assert!(matches!(transitive_reduction(&g), Err(Error::Consistency(_))));
    }

    #[test]
    fn dot_is_minimal_for_one_node() {
        let g = graph(1, &[]);
        let dot = emit_dot(&g, true);
        assert!(dot.starts_with("digraph \"t\" {"));
        assert!(dot.contains("n0 [label=\"v0\\ndim O = 10\"];"));
        assert!(!dot.contains("->"));
        assert_eq!(to_tsv(&g), "# src\tdst\tstatus\tevidence\n");
    }

    #[test]
    fn empty_graph() {
        let g = graph(0, &[]);
        assert!(transitive_reduction(&g).unwrap().edges.is_empty());
        assert!(emit_dot(&g, false).ends_with("}\n"));
    }
}
