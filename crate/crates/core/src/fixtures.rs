//! Small named graphs used throughout tests, docs and the shipped corpus.

use crate::graph::Graph;
use crate::rational::{int, Rational};

/// Triangle on `1, 2, 3` with unit weights.
pub fn k3() -> Graph {
    Graph::from_edges(
        &["1", "2", "3"],
        &[
            ("e12", "1", "2", int(1)),
            ("e13", "1", "3", int(1)),
            ("e23", "2", "3", int(1)),
        ],
    )
    .expect("valid fixture")
}

/// Two unit triangles `{1,2,3}` and `{4,5,6}` joined by the bridge `e34`.
pub fn bowtie() -> Graph {
    Graph::from_edges(
        &["1", "2", "3", "4", "5", "6"],
        &[
            ("e12", "1", "2", int(1)),
            ("e13", "1", "3", int(1)),
            ("e23", "2", "3", int(1)),
            ("e34", "3", "4", int(1)),
            ("e45", "4", "5", int(1)),
            ("e46", "4", "6", int(1)),
            ("e56", "5", "6", int(1)),
        ],
    )
    .expect("valid fixture")
}

/// One edge `uv` of the given weight.
pub fn single_edge(weight: Rational) -> Graph {
    Graph::from_edges(&["u", "v"], &[("uv", "u", "v", weight)]).expect("valid fixture")
}

/// Path `a-b-c-d` with unit weights.
pub fn path3() -> Graph {
    Graph::from_edges(
        &["a", "b", "c", "d"],
        &[
            ("ab", "a", "b", int(1)),
            ("bc", "b", "c", int(1)),
            ("cd", "c", "d", int(1)),
        ],
    )
    .expect("valid fixture")
}

/// Two parallel unit edges between `u` and `v`.
pub fn digon() -> Graph {
    Graph::from_edges(
        &["u", "v"],
        &[("p", "u", "v", int(1)), ("q", "u", "v", int(1))],
    )
    .expect("valid fixture")
}
