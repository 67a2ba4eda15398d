//! Graphviz export.

use crate::cardinal::Multiplicity;
use crate::graph::Graph;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The graph with one arrow per bundle, labelled by its id and multiplicity
/// (`∞` for ω).
pub fn graph_dot(g: &Graph) -> String {
    let mut out = String::from("digraph graph_e {\n");
    for v in g.vertices() {
        out.push_str(&format!("  {};\n", quote(g.vertex_name(v))));
    }
    for b in g.bundles() {
        let label = match b.multiplicity {
            Multiplicity::Omega => format!("{} ∞", b.id),
            Multiplicity::Finite(n) if n.get() == 1 => b.id.clone(),
            Multiplicity::Finite(n) => format!("{} ×{n}", b.id),
        };
        out.push_str(&format!(
            "  {} -> {} [label={}];\n",
            quote(g.vertex_name(b.source)),
            quote(g.vertex_name(b.target)),
            quote(&label),
        ));
    }
    out.push_str("}\n");
    out
}
