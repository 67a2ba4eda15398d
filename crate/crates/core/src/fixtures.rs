//! The small reference graphs used across tests and documentation.

use crate::cardinal::Multiplicity;
use crate::graph::Graph;

const ONE: Multiplicity = Multiplicity::ONE;

/// `u` with a loop `e` and an edge `f` to the sink `v`.
pub fn graph_a() -> Graph {
    Graph::from_lists(&["u", "v"], &[("e", "u", "u", ONE), ("f", "u", "v", ONE)]).expect("fixture")
}

/// `u` emitting ω edges `f` to the sink `v`.
pub fn graph_b() -> Graph {
    Graph::from_lists(&["u", "v"], &[("f", "u", "v", Multiplicity::Omega)]).expect("fixture")
}

/// `p` emitting ω edges `a` to the sink `u` and one edge `b` to the sink `w`.
pub fn graph_c() -> Graph {
    Graph::from_lists(
        &["p", "u", "w"],
        &[("a", "p", "u", Multiplicity::Omega), ("b", "p", "w", ONE)],
    )
    .expect("fixture")
}

/// Graph C with the ω bundle replaced by three parallel edges.
pub fn graph_c_finite() -> Graph {
    Graph::from_lists(
        &["p", "u", "w"],
        &[
            ("a", "p", "u", Multiplicity::finite(3).expect("nonzero")),
            ("b", "p", "w", ONE),
        ],
    )
    .expect("fixture")
}

/// A single isolated vertex.
pub fn graph_d() -> Graph {
    Graph::from_lists(&["v"], &[]).expect("fixture")
}

/// Two isolated vertices.
pub fn graph_e2() -> Graph {
    Graph::from_lists(&["v", "w"], &[]).expect("fixture")
}

/// All named fixtures.
pub fn corpus() -> Vec<(&'static str, Graph)> {
    vec![
        ("A", graph_a()),
        ("B", graph_b()),
        ("C", graph_c()),
        ("D", graph_d()),
        ("E2", graph_e2()),
    ]
}
