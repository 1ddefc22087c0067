//! Simple undirected graphs with dense vertex and edge ids.
//!
//! Vertex ids are assigned in order of first appearance and edge ids in
//! insertion order. Every later stage breaks ties by smallest id, so the
//! whole pipeline is deterministic for a fixed input.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: self-loop on vertex {label}")]
    SelfLoop { line: usize, label: String },
    #[error("not simple: duplicate edge {u} {v}")]
    DuplicateEdge { u: String, v: String },
    #[error("self-loop on vertex {0}")]
    Loop(VertexId),
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("unknown vertex id {0}")]
    UnknownVertex(VertexId),
    #[error("odd cycle found: {}", format_cycle(.cycle))]
    OddCycle { cycle: Vec<String> },
    #[error("graph has no vertices")]
    Empty,
}

fn format_cycle(cycle: &[String]) -> String {
    cycle.join(" ")
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    edges: Vec<(VertexId, VertexId)>,
    adjacency: Vec<Vec<EdgeId>>,
    edge_index: HashMap<(VertexId, VertexId), EdgeId>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on `n` isolated vertices labelled `0..n`.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Self::new();
        for v in 0..n {
            g.add_vertex(v.to_string());
        }
        g
    }

    pub fn add_vertex(&mut self, label: impl Into<String>) -> VertexId {
        self.labels.push(label.into());
        self.adjacency.push(Vec::new());
        self.labels.len() - 1
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId, GraphError> {
        let n = self.vertex_count();
        if u >= n {
            return Err(GraphError::UnknownVertex(u));
        }
        if v >= n {
            return Err(GraphError::UnknownVertex(v));
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        let key = (u.min(v), u.max(v));
        if self.edge_index.contains_key(&key) {
            return Err(GraphError::DuplicateEdge {
                u: self.labels[u].clone(),
                v: self.labels[v].clone(),
            });
        }
        let e = self.edges.len();
        self.edges.push((u, v));
        self.adjacency[u].push(e);
        self.adjacency[v].push(e);
        self.edge_index.insert(key, e);
        Ok(e)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.vertex_count()
    }

    pub fn edge_ids(&self) -> std::ops::Range<EdgeId> {
        0..self.edge_count()
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn other_endpoint(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (x, y) = self.edges[e];
        if x == v {
            y
        } else {
            x
        }
    }

    /// Incident edges of `v`, in ascending edge-id order.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.adjacency[v]
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adjacency[v].iter().map(move |&e| self.other_endpoint(e, v))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn find_edge(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.edge_index.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn check_edge(&self, e: EdgeId) -> Result<(), GraphError> {
        if e < self.edge_count() {
            Ok(())
        } else {
            Err(GraphError::UnknownEdge(e))
        }
    }

    /// Whether `e1` and `e2` are adjacent or joined by a third edge, i.e. at
    /// distance at most two in the line graph.
    pub fn visible(&self, e1: EdgeId, e2: EdgeId) -> Result<bool, GraphError> {
        self.check_edge(e1)?;
        self.check_edge(e2)?;
        if e1 == e2 {
            return Ok(false);
        }
        let (a, b) = self.edges[e1];
        let (c, d) = self.edges[e2];
        if a == c || a == d || b == c || b == d {
            return Ok(true);
        }
        Ok([(a, c), (a, d), (b, c), (b, d)]
            .iter()
            .any(|&(x, y)| self.find_edge(x, y).is_some()))
    }

    /// Calls `f` on every edge visible from `e` (possibly more than once).
    pub fn for_each_visible(&self, e: EdgeId, mut f: impl FnMut(EdgeId)) {
        let (u, v) = self.edges[e];
        for end in [u, v] {
            for &near in &self.adjacency[end] {
                if near != e {
                    f(near);
                }
                let w = self.other_endpoint(near, end);
                for &far in &self.adjacency[w] {
                    if far != e {
                        f(far);
                    }
                }
            }
        }
    }

    /// Sorted, deduplicated list of edges visible from `e`.
    pub fn visible_edges(&self, e: EdgeId) -> Vec<EdgeId> {
        let mut out = Vec::new();
        self.for_each_visible(e, |f| out.push(f));
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Parses the edge-list format: one `u v` pair per line, `#` comments,
    /// blank lines ignored. Labels are arbitrary whitespace-free tokens.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut g = Graph::new();
        let mut ids: HashMap<String, VertexId> = HashMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != 2 {
                return Err(GraphError::Parse {
                    line: line_no,
                    message: format!("expected two vertex labels, found {}", tokens.len()),
                });
            }
            if tokens[0] == tokens[1] {
                return Err(GraphError::SelfLoop {
                    line: line_no,
                    label: tokens[0].to_string(),
                });
            }
            let mut id = |label: &str, g: &mut Graph| {
                *ids.entry(label.to_string())
                    .or_insert_with(|| g.add_vertex(label))
            };
            let u = id(tokens[0], &mut g);
            let v = id(tokens[1], &mut g);
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Edge-list serialization, edges sorted by `(min id, max id)`.
    pub fn to_edge_list(&self) -> String {
        let mut pairs: Vec<(VertexId, VertexId)> = self
            .edges
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        pairs.sort_unstable();
        let mut out = String::new();
        for (u, v) in pairs {
            let _ = writeln!(out, "{} {}", self.labels[u], self.labels[v]);
        }
        out
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.vertex_count()];
        let mut comps = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() > 0 && self.components().len() == 1
    }
}
