//! The `n_B × Δ` edge matrix and the Type 1/2/3 classification it induces.
//!
//! Row `b` holds every edge incident to the B-vertex `b`, one per cell; the
//! column of an edge is the index of its cell. Columns are 0-based here and
//! rendered 1-based at the text boundaries.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::bipartite::{BipartiteGraph, Side};
use crate::graph::{EdgeId, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("vertex {0} is not a row of the matrix")]
    UnknownRow(VertexId),
    #[error("column {column} out of range (matrix has {columns} columns)")]
    ColumnOutOfRange { column: usize, columns: usize },
    #[error("{columns} columns cannot hold a row of degree {degree}")]
    TooFewColumns { columns: usize, degree: usize },
    #[error("row of vertex {row}: {message}")]
    BadRow { row: VertexId, message: String },
    #[error("A-vertex degree ≠ 3 (vertex {vertex} has degree {degree})")]
    DegreeNotThree { vertex: VertexId, degree: usize },
    #[error("dump line {line}: {message}")]
    Dump { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeMatrix {
    graph: Arc<BipartiteGraph>,
    columns: usize,
    row_of: Vec<Option<usize>>,
    cells: Vec<Option<EdgeId>>,
    column_of: Vec<usize>,
}

impl EdgeMatrix {
    /// Each row lists its edges in ascending edge-id order from column 0;
    /// the matrix has `Δ(B)` columns.
    pub fn build_initial(graph: Arc<BipartiteGraph>) -> Self {
        let columns = graph.delta_b();
        let rows = graph
            .part_b()
            .iter()
            .map(|&b| {
                let mut row: Vec<Option<EdgeId>> =
                    graph.graph().incident(b).iter().copied().map(Some).collect();
                row.resize(columns, None);
                row
            })
            .collect();
        Self::from_rows(graph, columns, rows).expect("initial layout is valid")
    }

    /// Builds a matrix from explicit rows given in part-B order. `columns`
    /// may exceed `Δ(B)`.
    pub fn from_rows(
        graph: Arc<BipartiteGraph>,
        columns: usize,
        rows: Vec<Vec<Option<EdgeId>>>,
    ) -> Result<Self, MatrixError> {
        let g = graph.graph();
        if rows.len() != graph.part_b().len() {
            return Err(MatrixError::BadRow {
                row: usize::MAX,
                message: format!("expected {} rows, got {}", graph.part_b().len(), rows.len()),
            });
        }
        if graph.delta_b() > columns {
            return Err(MatrixError::TooFewColumns { columns, degree: graph.delta_b() });
        }
        let mut row_of = vec![None; g.vertex_count()];
        let mut cells = Vec::with_capacity(rows.len() * columns);
        let mut column_of = vec![usize::MAX; g.edge_count()];
        for (r, (&b, row)) in graph.part_b().iter().zip(rows).enumerate() {
            row_of[b] = Some(r);
            if row.len() != columns {
                return Err(MatrixError::BadRow {
                    row: b,
                    message: format!("has {} cells, expected {columns}", row.len()),
                });
            }
            let mut present: Vec<EdgeId> = row.iter().flatten().copied().collect();
            present.sort_unstable();
            if present != g.incident(b) {
                return Err(MatrixError::BadRow {
                    row: b,
                    message: "must contain exactly its incident edges, once each".into(),
                });
            }
            for (c, cell) in row.iter().enumerate() {
                if let Some(e) = *cell {
                    column_of[e] = c;
                }
            }
            cells.extend(row);
        }
        Ok(Self { graph, columns, row_of, cells, column_of })
    }

    pub fn graph(&self) -> &Arc<BipartiteGraph> {
        &self.graph
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn column(&self, e: EdgeId) -> usize {
        self.column_of[e]
    }

    pub fn row(&self, b: VertexId) -> Result<&[Option<EdgeId>], MatrixError> {
        let r = self.row_index(b)?;
        Ok(&self.cells[r * self.columns..(r + 1) * self.columns])
    }

    pub fn cell(&self, b: VertexId, column: usize) -> Option<EdgeId> {
        let r = self.row_of.get(b).copied().flatten()?;
        if column >= self.columns {
            return None;
        }
        self.cells[r * self.columns + column]
    }

    fn row_index(&self, b: VertexId) -> Result<usize, MatrixError> {
        self.row_of.get(b).copied().flatten().ok_or(MatrixError::UnknownRow(b))
    }

    /// Exchanges cells `(b, c1)` and `(b, c2)`, returning the new matrix.
    pub fn switch(&self, b: VertexId, c1: usize, c2: usize) -> Result<Self, MatrixError> {
        let mut m = self.clone();
        m.switch_in_place(b, c1, c2)?;
        Ok(m)
    }

    pub fn switch_in_place(&mut self, b: VertexId, c1: usize, c2: usize) -> Result<(), MatrixError> {
        let r = self.row_index(b)?;
        for c in [c1, c2] {
            if c >= self.columns {
                return Err(MatrixError::ColumnOutOfRange { column: c, columns: self.columns });
            }
        }
        let (i, j) = (r * self.columns + c1, r * self.columns + c2);
        self.cells.swap(i, j);
        if let Some(e) = self.cells[i] {
            self.column_of[e] = c1;
        }
        if let Some(e) = self.cells[j] {
            self.column_of[e] = c2;
        }
        Ok(())
    }

    /// One line per B-vertex: `label: cell|cell|...`, where a cell shows the
    /// label of the edge's A-endpoint and `-` marks an empty cell.
    pub fn dump(&self) -> String {
        let g = self.graph.graph();
        let mut out = String::new();
        for &b in self.graph.part_b() {
            let row = self.row(b).unwrap();
            let cells: Vec<&str> = row
                .iter()
                .map(|cell| match cell {
                    Some(e) => g.label(g.other_endpoint(*e, b)),
                    None => "-",
                })
                .collect();
            let _ = writeln!(out, "{}: {}", g.label(b), cells.join("|"));
        }
        out
    }

    /// Inverse of [`dump`](Self::dump). Rows may appear in any order; the
    /// column count is taken from the first row.
    pub fn from_dump(graph: Arc<BipartiteGraph>, text: &str) -> Result<Self, MatrixError> {
        let g = graph.graph();
        let mut rows: Vec<Option<Vec<Option<EdgeId>>>> = vec![None; graph.part_b().len()];
        let mut columns = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| MatrixError::Dump { line: idx + 1, message };
            let (label, body) = line.split_once(':').ok_or_else(|| err("missing ':'".into()))?;
            let b = g
                .vertex_by_label(label.trim())
                .filter(|&b| graph.side(b) == Side::B)
                .ok_or_else(|| err(format!("unknown B-vertex {}", label.trim())))?;
            let mut row = Vec::new();
            for token in body.split('|').map(str::trim) {
                if token == "-" {
                    row.push(None);
                    continue;
                }
                let e = g
                    .vertex_by_label(token)
                    .and_then(|a| g.find_edge(a, b))
                    .ok_or_else(|| err(format!("no edge {} {token}", label.trim())))?;
                row.push(Some(e));
            }
            if *columns.get_or_insert(row.len()) != row.len() {
                return Err(err("rows have different lengths".into()));
            }
            let r = graph.part_b().iter().position(|&v| v == b).unwrap();
            rows[r] = Some(row);
        }
        let columns = columns.unwrap_or(graph.delta_b());
        let rows = rows
            .into_iter()
            .zip(graph.part_b())
            .map(|(row, &b)| {
                row.ok_or(MatrixError::BadRow { row: b, message: "missing from dump".into() })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(graph, columns, rows)
    }

    pub fn classify(&self) -> Result<Classification, MatrixError> {
        classify(self)
    }

    pub fn score(&self) -> Result<MatrixScore, MatrixError> {
        Ok(self.classify()?.score())
    }
}

/// Type of a part-A vertex with respect to a matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexType {
    /// All three edges share `column`.
    Type1 { column: usize },
    /// Exactly two edges (the paired ones) share a column.
    Type2 {
        paired: [EdgeId; 2],
        lonely: EdgeId,
        paired_column: usize,
        lonely_column: usize,
    },
    /// Three distinct columns.
    Type3,
}

impl VertexType {
    pub fn number(&self) -> u8 {
        match self {
            VertexType::Type1 { .. } => 1,
            VertexType::Type2 { .. } => 2,
            VertexType::Type3 => 3,
        }
    }
}

/// Lexicographic `(t1, t2)`; field order gives the derived `Ord`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct MatrixScore {
    pub t1: usize,
    pub t2: usize,
}

impl std::fmt::Display for MatrixScore {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.t1, self.t2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    types: Vec<Option<VertexType>>,
}

impl Classification {
    pub fn get(&self, a: VertexId) -> Option<VertexType> {
        self.types.get(a).copied().flatten()
    }

    pub fn score(&self) -> MatrixScore {
        let mut s = MatrixScore::default();
        for t in self.types.iter().flatten() {
            match t {
                VertexType::Type1 { .. } => s.t1 += 1,
                VertexType::Type2 { .. } => s.t2 += 1,
                VertexType::Type3 => {}
            }
        }
        s
    }

    /// Part-A vertices of the given type number, ascending.
    pub fn vertices_of_type(&self, number: u8) -> impl Iterator<Item = VertexId> + '_ {
        self.types
            .iter()
            .enumerate()
            .filter(move |(_, t)| t.map(|t| t.number()) == Some(number))
            .map(|(v, _)| v)
    }

    /// The lonely edge of `a` if `a` is Type 2.
    pub fn lonely_of(&self, a: VertexId) -> Option<EdgeId> {
        match self.get(a) {
            Some(VertexType::Type2 { lonely, .. }) => Some(lonely),
            _ => None,
        }
    }

    pub fn is_lonely(&self, graph: &BipartiteGraph, e: EdgeId) -> bool {
        self.lonely_of(graph.a_end(e)) == Some(e)
    }

    pub fn is_paired(&self, graph: &BipartiteGraph, e: EdgeId) -> bool {
        matches!(self.get(graph.a_end(e)), Some(VertexType::Type2 { paired, .. }) if paired.contains(&e))
    }
}

pub fn classify(m: &EdgeMatrix) -> Result<Classification, MatrixError> {
    let bg = m.graph();
    let g = bg.graph();
    let mut types = vec![None; g.vertex_count()];
    for &a in bg.part_a() {
        let edges = g.incident(a);
        if edges.len() != 3 {
            return Err(MatrixError::DegreeNotThree { vertex: a, degree: edges.len() });
        }
        let cols = [m.column(edges[0]), m.column(edges[1]), m.column(edges[2])];
        let t = if cols[0] == cols[1] && cols[1] == cols[2] {
            VertexType::Type1 { column: cols[0] }
        } else {
            // index of the edge whose column differs from the other two, if any
            let lonely_idx = if cols[0] == cols[1] {
                Some(2)
            } else if cols[0] == cols[2] {
                Some(1)
            } else if cols[1] == cols[2] {
                Some(0)
            } else {
                None
            };
            match lonely_idx {
                None => VertexType::Type3,
                Some(l) => {
                    let mut paired = [0; 2];
                    let mut k = 0;
                    for (i, &e) in edges.iter().enumerate() {
                        if i != l {
                            paired[k] = e;
                            k += 1;
                        }
                    }
                    VertexType::Type2 {
                        paired,
                        lonely: edges[l],
                        paired_column: m.column(paired[0]),
                        lonely_column: cols[l],
                    }
                }
            }
        };
        types[a] = Some(t);
    }
    Ok(Classification { types })
}

pub fn score(m: &EdgeMatrix) -> Result<MatrixScore, MatrixError> {
    m.score()
}
