use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{EdgeId, Graph, GraphError, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BipartiteError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("side assignment has {got} entries for {expected} vertices")]
    SideCount { expected: usize, got: usize },
    #[error("edge {0} has both endpoints on the same side")]
    SameSide(EdgeId),
    #[error("delta_a exceeds 3 (delta_a = {0})")]
    DeltaAExceeds3(usize),
}

/// A graph together with a bipartition `(A, B)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    graph: Graph,
    sides: Vec<Side>,
    part_a: Vec<VertexId>,
    part_b: Vec<VertexId>,
}

impl BipartiteGraph {
    pub fn from_sides(graph: Graph, sides: Vec<Side>) -> Result<Self, BipartiteError> {
        if sides.len() != graph.vertex_count() {
            return Err(BipartiteError::SideCount {
                expected: graph.vertex_count(),
                got: sides.len(),
            });
        }
        for e in graph.edge_ids() {
            let (u, v) = graph.endpoints(e);
            if sides[u] == sides[v] {
                return Err(BipartiteError::SameSide(e));
            }
        }
        let part_a = graph.vertices().filter(|&v| sides[v] == Side::A).collect();
        let part_b = graph.vertices().filter(|&v| sides[v] == Side::B).collect();
        Ok(Self { graph, sides, part_a, part_b })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn side(&self, v: VertexId) -> Side {
        self.sides[v]
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    /// Part-A vertices in ascending id order.
    pub fn part_a(&self) -> &[VertexId] {
        &self.part_a
    }

    /// Part-B vertices in ascending id order.
    pub fn part_b(&self) -> &[VertexId] {
        &self.part_b
    }

    pub fn delta_a(&self) -> usize {
        self.part_a.iter().map(|&v| self.graph.degree(v)).max().unwrap_or(0)
    }

    pub fn delta_b(&self) -> usize {
        self.part_b.iter().map(|&v| self.graph.degree(v)).max().unwrap_or(0)
    }

    /// Endpoint of `e` lying in part A.
    pub fn a_end(&self, e: EdgeId) -> VertexId {
        let (u, v) = self.graph.endpoints(e);
        if self.sides[u] == Side::A {
            u
        } else {
            v
        }
    }

    /// Endpoint of `e` lying in part B.
    pub fn b_end(&self, e: EdgeId) -> VertexId {
        let (u, v) = self.graph.endpoints(e);
        if self.sides[u] == Side::B {
            u
        } else {
            v
        }
    }

    /// Same graph with the roles of A and B exchanged.
    pub fn swapped(&self) -> Self {
        let sides = self.sides.iter().map(|s| s.flip()).collect();
        Self::from_sides(self.graph.clone(), sides).expect("flipping keeps a bipartition")
    }

    /// Pads every part-A vertex of degree below 3 with fresh pendant
    /// B-vertices. New vertices and edges are appended, so ids of the
    /// original graph are unchanged.
    pub fn normalize_to_degree3(&self) -> Result<(BipartiteGraph, PaddingRecord), BipartiteError> {
        let delta_a = self.delta_a();
        if delta_a > 3 {
            return Err(BipartiteError::DeltaAExceeds3(delta_a));
        }
        let mut graph = self.graph.clone();
        let mut sides = self.sides.clone();
        let mut record = PaddingRecord {
            original_vertices: self.graph.vertex_count(),
            original_edges: self.graph.edge_count(),
            added_b_vertices: Vec::new(),
            added_edges: Vec::new(),
        };
        for &a in &self.part_a {
            for k in self.graph.degree(a)..3 {
                let label = format!("{}#pad{}", self.graph.label(a), k);
                let b = graph.add_vertex(label);
                sides.push(Side::B);
                let e = graph.add_edge(a, b)?;
                record.added_b_vertices.push(b);
                record.added_edges.push(e);
            }
        }
        Ok((Self::from_sides(graph, sides)?, record))
    }

    /// Inverse of [`normalize_to_degree3`](Self::normalize_to_degree3).
    pub fn strip_padding(&self, record: &PaddingRecord) -> BipartiteGraph {
        let mut graph = Graph::new();
        for v in 0..record.original_vertices {
            graph.add_vertex(self.graph.label(v));
        }
        for e in 0..record.original_edges {
            let (u, v) = self.graph.endpoints(e);
            graph.add_edge(u, v).expect("original edges are simple");
        }
        let sides = self.sides[..record.original_vertices].to_vec();
        Self::from_sides(graph, sides).expect("restriction keeps a bipartition")
    }
}

/// What [`BipartiteGraph::normalize_to_degree3`] added.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PaddingRecord {
    pub original_vertices: usize,
    pub original_edges: usize,
    pub added_b_vertices: Vec<VertexId>,
    pub added_edges: Vec<EdgeId>,
}

impl PaddingRecord {
    pub fn is_empty(&self) -> bool {
        self.added_edges.is_empty()
    }

    pub fn is_padding_edge(&self, e: EdgeId) -> bool {
        e >= self.original_edges
    }
}

/// Two-colors `g`, choosing in each component the side of smaller maximum
/// degree as part A (ties: the side holding the component's smallest id).
pub fn bipartition(g: &Graph) -> Result<BipartiteGraph, GraphError> {
    if g.vertex_count() == 0 {
        return Err(GraphError::Empty);
    }
    let n = g.vertex_count();
    let mut color: Vec<Option<bool>> = vec![None; n];
    let mut parent: Vec<Option<VertexId>> = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut sides = vec![Side::A; n];

    for root in g.vertices() {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(false);
        let mut comp = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].unwrap();
            for w in g.neighbors(u) {
                match color[w] {
                    None => {
                        color[w] = Some(!cu);
                        parent[w] = Some(u);
                        depth[w] = depth[u] + 1;
                        comp.push(w);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => {
                        let cycle = odd_cycle(u, w, &parent, &depth);
                        return Err(GraphError::OddCycle {
                            cycle: cycle.iter().map(|&v| g.label(v).to_string()).collect(),
                        });
                    }
                    Some(_) => {}
                }
            }
        }
        // `root` is the smallest id of its component and has color `false`.
        let max_deg = |c: bool| {
            comp.iter()
                .filter(|&&v| color[v] == Some(c))
                .map(|&v| g.degree(v))
                .max()
                .unwrap_or(0)
        };
        let a_color = max_deg(true) < max_deg(false);
        for &v in &comp {
            sides[v] = if color[v] == Some(a_color) { Side::A } else { Side::B };
        }
    }
    Ok(BipartiteGraph::from_sides(g.clone(), sides).expect("two-coloring is a bipartition"))
}

/// Closes the BFS-tree paths from `u` and `w` into an odd cycle.
fn odd_cycle(
    u: VertexId,
    w: VertexId,
    parent: &[Option<VertexId>],
    depth: &[usize],
) -> Vec<VertexId> {
    let (mut x, mut y) = (u, w);
    let mut left = vec![x];
    let mut right = vec![y];
    while depth[x] > depth[y] {
        x = parent[x].unwrap();
        left.push(x);
    }
    while depth[y] > depth[x] {
        y = parent[y].unwrap();
        right.push(y);
    }
    while x != y {
        x = parent[x].unwrap();
        y = parent[y].unwrap();
        left.push(x);
        right.push(y);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}
