//! Fixtures shared by the benchmarks in `benches/`.

use edgereg::{edge_ideal, Graph, MonomialIdeal};

/// Two triangles joined by a path with two edges.
pub fn bow() -> Graph {
    Graph::joined_cycles(1, 1, 2).expect("small graph")
}

/// A triangle and a pentagon joined by a path with three edges.
pub fn wide_bicyclic() -> Graph {
    Graph::joined_cycles(1, 2, 3).expect("small graph")
}

pub fn power(g: &Graph, s: u32) -> MonomialIdeal {
    edge_ideal(g).power(s)
}
