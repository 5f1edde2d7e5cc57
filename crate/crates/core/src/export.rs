//! Graphviz DOT renderings. Join-irreducibles are shown by their 1-based
//! ordinal labels.

use std::fmt::Write as _;

use crate::bitset::ElementSet;
use crate::canonical::{CoverLabels, OrdinalLabels, SimplicialComplex};
use crate::core_label::CoreLabelOrder;
use crate::lattice::Lattice;
use crate::poset::Poset;

fn brace(labels: &[usize]) -> String {
    let inner: Vec<String> = labels.iter().map(usize::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

/// Hasse diagram of a poset with unlabeled edges.
pub fn poset_dot(p: &Poset) -> String {
    let mut s = String::from("digraph hasse {\n  rankdir=BT;\n");
    for x in 0..p.len() {
        let _ = writeln!(s, "  n{x} [label=\"{x}\"];");
    }
    for (a, b) in p.covers() {
        let _ = writeln!(s, "  n{a} -> n{b};");
    }
    s.push_str("}\n");
    s
}

/// Hasse diagram with each cover annotated by its perspectivity label, when
/// labels are given.
pub fn hasse_dot(l: &Lattice, labels: Option<&CoverLabels>) -> String {
    let ord = OrdinalLabels::new(l);
    let mut s = String::from("digraph hasse {\n  rankdir=BT;\n");
    for x in 0..l.len() {
        let _ = writeln!(s, "  n{x} [label=\"{x}\"];");
    }
    for (a, b) in l.covers() {
        match labels.and_then(|t| t.label(a, b)) {
            Some(j) => {
                let _ = writeln!(s, "  n{a} -> n{b} [label=\"{}\"];", ord.of(j));
            }
            None => {
                let _ = writeln!(s, "  n{a} -> n{b};");
            }
        }
    }
    s.push_str("}\n");
    s
}

/// The core label order with nodes labeled by their Ψ-sets.
pub fn clo_dot(l: &Lattice, clo: &CoreLabelOrder) -> String {
    let ord = OrdinalLabels::new(l);
    let mut s = String::from("digraph clo {\n  rankdir=BT;\n");
    for (i, psi) in clo.psi.iter().enumerate() {
        let _ = writeln!(
            s,
            "  n{i} [label=\"{}\", tooltip=\"element {}\"];",
            brace(&ord.set(psi)),
            clo.elements[i]
        );
    }
    for (a, b) in clo.poset.covers() {
        let _ = writeln!(s, "  n{a} -> n{b};");
    }
    s.push_str("}\n");
    s
}

/// The 1-skeleton of a complex plus one node per higher face, joined to its
/// vertices.
pub fn complex_dot(l: &Lattice, c: &SimplicialComplex) -> String {
    let ord = OrdinalLabels::new(l);
    let mut s = String::from("graph complex {\n");
    let mut vertices: Vec<usize> = c.faces().filter(|f| f.len() == 1).map(|f| ord.of(f[0])).collect();
    vertices.sort_unstable();
    for v in &vertices {
        let _ = writeln!(s, "  v{v} [label=\"{v}\"];");
    }
    let mut edges: Vec<(usize, usize)> = c
        .faces()
        .filter(|f| f.len() == 2)
        .map(|f| {
            let (a, b) = (ord.of(f[0]), ord.of(f[1]));
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    for (a, b) in edges {
        let _ = writeln!(s, "  v{a} -- v{b};");
    }
    let mut higher: Vec<Vec<usize>> = c
        .faces()
        .filter(|f| f.len() > 2)
        .map(|f| ord.set(&ElementSet::from_indices(l.len(), f.iter().copied())))
        .collect();
    higher.sort();
    for (i, f) in higher.iter().enumerate() {
        let _ = writeln!(s, "  f{i} [shape=box, style=filled, label=\"{}\"];", brace(f));
        for v in f {
            let _ = writeln!(s, "  f{i} -- v{v} [style=dotted];");
        }
    }
    s.push_str("}\n");
    s
}
