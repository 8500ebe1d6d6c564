//! DOT (Graphviz) rendering of order diagrams; output-only.
//!
//! Every emitter draws the *Hasse* reduction — covers only, transitive
//! and reflexive edges dropped — with edges pointing upward
//! (`rankdir=BT`), and iterates carriers in ascending order so the
//! output is byte-deterministic.

use crate::mask::{self, Mask};
use crate::order::Poset;
use crate::topology::Space;

fn quoted(label: &str) -> String {
    format!("\"{}\"", label.replace('"', "\\\""))
}

/// Covers of an arbitrary reflexive relation given as a predicate:
/// `(i, j)` with `i < j` strictly and nothing strictly between.
fn hasse_edges(n: usize, leq: &dyn Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    let strict = |i: usize, j: usize| i != j && leq(i, j) && !leq(j, i);
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if strict(i, j) && !(0..n).any(|m| strict(i, m) && strict(m, j)) {
                out.push((i, j));
            }
        }
    }
    out
}

fn digraph(name: &str, labels: &[String], edges: &[(usize, usize)]) -> String {
    let mut s = format!("digraph {name} {{\n  rankdir=BT;\n  node [shape=box];\n");
    for l in labels {
        s.push_str(&format!("  {};\n", quoted(l)));
    }
    for &(i, j) in edges {
        s.push_str(&format!("  {} -> {};\n", quoted(&labels[i]), quoted(&labels[j])));
    }
    s.push_str("}\n");
    s
}

/// Hasse diagram of a poset (also used for c-poset carriers).
pub fn poset_dot(p: &Poset) -> String {
    let labels: Vec<String> = p.names().iter().map(u64::to_string).collect();
    let edges = hasse_edges(p.n(), &|i, j| p.leq_idx(i, j));
    digraph("order", &labels, &edges)
}

/// Hasse diagram of the specialization order of a space
/// (`y ≤ x ⟺ y ∈ cl{x}`).
pub fn specialization_dot(s: &Space) -> String {
    poset_with_name(&s.specialization(), "specialization")
}

fn poset_with_name(p: &Poset, name: &str) -> String {
    let labels: Vec<String> = p.names().iter().map(u64::to_string).collect();
    let edges = hasse_edges(p.n(), &|i, j| p.leq_idx(i, j));
    digraph(name, &labels, &edges)
}

/// Hasse diagram of the distinct base sets under inclusion, labeled as
/// point-name sets.
pub fn base_inclusion_dot(s: &Space) -> String {
    let fam: Vec<Mask> = s.base_family();
    let labels: Vec<String> = fam
        .iter()
        .map(|&m| mask::format_with_names(m, s.point_names()))
        .collect();
    let edges = hasse_edges(fam.len(), &|i, j| mask::is_subset(fam[i], fam[j]));
    digraph("base_inclusion", &labels, &edges)
}

/// The full space export: the specialization order and the
/// base-inclusion diagram, concatenated as two digraphs.
pub fn space_dot(s: &Space) -> String {
    let mut out = specialization_dot(s);
    out.push('\n');
    out.push_str(&base_inclusion_dot(s));
    out
}
