//! Small hand-built instances shared by unit tests, integration tests and
//! benches.

use std::sync::Arc;

use crate::bipartite::{bipartition, BipartiteGraph};
use crate::graph::Graph;
use crate::matrix::EdgeMatrix;

/// A (3,4)-bipartite graph on `a1..a4` and `b1..b5` with 12 edges.
pub const EXAMPLE_EDGE_LIST: &str = "\
# (3,4)-bipartite example
a1 b1
a1 b2
a1 b3
a2 b2
a2 b3
a2 b5
a3 b2
a3 b3
a3 b4
a4 b3
a4 b4
a4 b5
";

pub fn example_graph() -> BipartiteGraph {
    let g = Graph::parse_edge_list(EXAMPLE_EDGE_LIST).expect("fixture parses");
    bipartition(&g).expect("fixture is bipartite")
}

fn example_matrix(dump: &str) -> EdgeMatrix {
    EdgeMatrix::from_dump(Arc::new(example_graph()), dump).expect("fixture matrix is valid")
}

/// Matrix of the example graph with one Type 1, two Type 2 and one Type 3
/// vertex.
pub fn example_matrix_1_2() -> EdgeMatrix {
    example_matrix(
        "b1: a1|-|-|-
         b2: a1|a2|-|a3
         b3: a1|a2|a3|a4
         b4: -|a4|-|a3
         b5: a2|-|a4|-",
    )
}

/// Same graph, three Type 1 vertices and one Type 2 vertex. Differs from
/// [`example_matrix_1_2`] in rows `b3` and `b5`.
pub fn example_matrix_3_1() -> EdgeMatrix {
    example_matrix(
        "b1: a1|-|-|-
         b2: a1|a2|-|a3
         b3: a1|a2|a4|a3
         b4: -|a4|-|a3
         b5: -|a2|a4|-",
    )
}

/// Same graph with every A-vertex of Type 1, `a_i` in column `i`.
pub fn example_matrix_4_0() -> EdgeMatrix {
    example_matrix(
        "b1: a1|-|-|-
         b2: a1|a2|a3|-
         b3: a1|a2|a3|a4
         b4: -|-|a3|a4
         b5: -|a2|-|a4",
    )
}

/// Two Type 3 vertices `a0`, `a1` sharing `b2`, where the column of `a0b2`
/// equals the column of `a1b3`. Five columns; switching the two cells of
/// row `b2` turns `a1` into a Type 2 vertex.
pub fn type3_clash_matrix() -> EdgeMatrix {
    let g = Graph::parse_edge_list("a0 b0\na0 b1\na0 b2\na1 b3\na1 b4\na1 b2").unwrap();
    let bg = Arc::new(bipartition(&g).unwrap().swapped());
    EdgeMatrix::from_dump(
        bg,
        "b0: a0|-|-|-|-
         b1: -|a0|-|-|-
         b2: -|-|a0|-|a1
         b3: -|-|a1|-|-
         b4: -|-|-|a1|-",
    )
    .unwrap()
}

/// [`type3_clash_matrix`] after the switch in row `b2`.
pub fn type3_clash_matrix_fixed() -> EdgeMatrix {
    let m = type3_clash_matrix();
    EdgeMatrix::from_dump(
        m.graph().clone(),
        "b0: a0|-|-|-|-
         b1: -|a0|-|-|-
         b2: -|-|a1|-|a0
         b3: -|-|a1|-|-
         b4: -|-|-|a1|-",
    )
    .unwrap()
}
