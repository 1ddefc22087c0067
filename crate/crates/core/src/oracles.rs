//! Slow, exhaustive reference computations used to check the colorer and
//! the matrix search on small instances.

use thiserror::Error;

use crate::bipartite::BipartiteGraph;
use crate::colorer::StrongColoring;
use crate::graph::{EdgeId, Graph, VertexId};
use crate::matrix::MatrixScore;
use crate::par::{self, Execution};

/// Default size limits for the exhaustive searches.
pub const DEFAULT_EDGE_LIMIT: usize = 16;
pub const DEFAULT_VERTEX_LIMIT: usize = 16;
pub const DEFAULT_MATRIX_BUDGET: u128 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("edge {0} has no color")]
    Uncolored(EdgeId),
    #[error("coloring covers {colored} edges, graph has {edges}")]
    SizeMismatch { colored: usize, edges: usize },
    #[error("instance too large: {size} exceeds limit {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("budget exceeded: {needed} matrices, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
}

/// Pairs `(e, f)`, `e < f`, of visible edges sharing a color. Empty iff `c`
/// is a strong edge-coloring of `g`.
pub fn validate_strong(g: &Graph, c: &StrongColoring) -> Result<Vec<(EdgeId, EdgeId)>, OracleError> {
    if c.edge_count() != g.edge_count() {
        return Err(OracleError::SizeMismatch { colored: c.edge_count(), edges: g.edge_count() });
    }
    if let Some(e) = g.edge_ids().find(|&e| c.get(e).is_none()) {
        return Err(OracleError::Uncolored(e));
    }
    Ok(partial_conflicts(g, c))
}

/// Conflicting pairs among the colored edges only.
pub fn partial_conflicts(g: &Graph, c: &StrongColoring) -> Vec<(EdgeId, EdgeId)> {
    let mut out = Vec::new();
    for (e, ce) in c.iter() {
        for f in g.visible_edges(e) {
            if f > e && c.get(f) == Some(ce) {
                out.push((e, f));
            }
        }
    }
    out
}

/// Square of the line graph: one vertex per edge, adjacent when visible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictGraph {
    adjacency: Vec<Vec<usize>>,
}

impl ConflictGraph {
    pub fn new(g: &Graph) -> Self {
        Self { adjacency: g.edge_ids().map(|e| g.visible_edges(e)).collect() }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Greedy maximal clique, seeded from each vertex in turn; returns the
    /// largest found.
    pub fn greedy_clique(&self) -> Vec<usize> {
        let mut best = Vec::new();
        for seed in 0..self.vertex_count() {
            let mut clique = vec![seed];
            let mut candidates: Vec<usize> = self.adjacency[seed].clone();
            candidates.sort_by_key(|&v| std::cmp::Reverse(self.adjacency[v].len()));
            for v in candidates {
                if clique.iter().all(|&u| self.adjacent(u, v)) {
                    clique.push(v);
                }
            }
            if clique.len() > best.len() {
                best = clique;
            }
        }
        best
    }

    /// Chromatic number by DSATUR branch and bound.
    pub fn chromatic_number(&self) -> usize {
        let n = self.vertex_count();
        if n == 0 {
            return 0;
        }
        let lower = self.greedy_clique().len();
        let mut search = Dsatur { g: self, colors: vec![None; n], best: n + 1, lower };
        search.best = search.greedy_upper();
        search.colors = vec![None; n];
        if search.best > lower {
            search.branch(0, 0);
        }
        search.best
    }
}

struct Dsatur<'g> {
    g: &'g ConflictGraph,
    colors: Vec<Option<usize>>,
    best: usize,
    lower: usize,
}

impl Dsatur<'_> {
    fn saturation(&self, v: usize) -> usize {
        let mut seen: Vec<usize> = self.g.neighbors(v).iter().filter_map(|&u| self.colors[u]).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    fn pick(&self) -> Option<usize> {
        (0..self.g.vertex_count())
            .filter(|&v| self.colors[v].is_none())
            .max_by_key(|&v| (self.saturation(v), self.g.neighbors(v).len(), std::cmp::Reverse(v)))
    }

    fn allowed(&self, v: usize, c: usize) -> bool {
        self.g.neighbors(v).iter().all(|&u| self.colors[u] != Some(c))
    }

    fn greedy_upper(&mut self) -> usize {
        let mut used = 0;
        while let Some(v) = self.pick() {
            let c = (0..).find(|&c| self.allowed(v, c)).expect("some color is free");
            self.colors[v] = Some(c);
            used = used.max(c + 1);
        }
        used
    }

    fn branch(&mut self, colored: usize, used: usize) {
        if used >= self.best || self.best == self.lower {
            return;
        }
        if colored == self.g.vertex_count() {
            self.best = used;
            return;
        }
        let v = self.pick().expect("uncolored vertex remains");
        for c in 0..=used {
            if c == used && used + 1 >= self.best {
                break;
            }
            if self.allowed(v, c) {
                self.colors[v] = Some(c);
                self.branch(colored + 1, used.max(c + 1));
                self.colors[v] = None;
            }
        }
    }
}

/// Exact strong chromatic index, for graphs with at most `edge_limit` edges.
pub fn exact_strong_chromatic_index(g: &Graph, edge_limit: usize) -> Result<usize, OracleError> {
    if g.edge_count() > edge_limit {
        return Err(OracleError::TooLarge { size: g.edge_count(), limit: edge_limit });
    }
    Ok(ConflictGraph::new(g).chromatic_number())
}

fn k_colorable(g: &Graph, mask: u32, k: usize) -> bool {
    let members: Vec<VertexId> = g.vertices().filter(|&v| mask >> v & 1 == 1).collect();
    let mut colors = vec![usize::MAX; g.vertex_count()];
    fn go(g: &Graph, members: &[VertexId], i: usize, k: usize, colors: &mut [usize]) -> bool {
        let Some(&v) = members.get(i) else { return true };
        // Symmetry: the first vertex only needs color 0.
        let limit = if i == 0 { 1 } else { k };
        for c in 0..limit {
            if g.neighbors(v).all(|u| colors[u] != c) {
                colors[v] = c;
                if go(g, members, i + 1, k, colors) {
                    return true;
                }
                colors[v] = usize::MAX;
            }
        }
        false
    }
    go(g, &members, 0, k, &mut colors)
}

/// Largest vertex set inducing a properly `k`-colorable subgraph, with the
/// numerically smallest witness of that size.
pub fn max_properly_k_colorable_subgraph(
    g: &Graph,
    k: usize,
    vertex_limit: usize,
) -> Result<(usize, Vec<VertexId>), OracleError> {
    let n = g.vertex_count();
    if n > vertex_limit || n > 24 {
        return Err(OracleError::TooLarge { size: n, limit: vertex_limit.min(24) });
    }
    let mut best = (0usize, 0u32);
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size > best.0 && k_colorable(g, mask, k) {
            best = (size, mask);
        }
    }
    Ok((best.0, g.vertices().filter(|&v| best.1 >> v & 1 == 1).collect()))
}

/// Every way of placing the edges of each B-row into distinct columns,
/// reported as the column of each edge.
struct MatrixSpace<'g> {
    bg: &'g BipartiteGraph,
    columns: usize,
    rows: Vec<VertexId>,
}

impl<'g> MatrixSpace<'g> {
    fn new(bg: &'g BipartiteGraph, budget: u128) -> Result<Self, OracleError> {
        let columns = bg.delta_b();
        let rows: Vec<VertexId> = bg.part_b().iter().copied().filter(|&b| bg.graph().degree(b) > 0).collect();
        let mut needed: u128 = 1;
        for &b in &rows {
            let d = bg.graph().degree(b);
            for i in 0..d {
                needed = needed.saturating_mul((columns - i) as u128);
            }
            if needed > budget {
                return Err(OracleError::BudgetExceeded { needed, budget });
            }
        }
        Ok(Self { bg, columns, rows })
    }

    /// All placements of row `b`'s edges as column lists.
    fn row_arrangements(&self, b: VertexId) -> Vec<Vec<usize>> {
        let d = self.bg.graph().degree(b);
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(d);
        fn go(columns: usize, d: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if current.len() == d {
                out.push(current.clone());
                return;
            }
            for c in 0..columns {
                if !current.contains(&c) {
                    current.push(c);
                    go(columns, d, current, out);
                    current.pop();
                }
            }
        }
        go(self.columns, d, &mut current, &mut out);
        out
    }

    /// Maximum of `eval` over all placements; rows after the first are
    /// enumerated sequentially inside each parallel branch.
    fn maximize<R, F>(&self, exec: Execution, eval: F) -> R
    where
        R: Ord + Send + Default,
        F: Fn(&[usize]) -> R + Sync,
    {
        let g = self.bg.graph();
        let Some((&first, rest)) = self.rows.split_first() else {
            return eval(&vec![0; g.edge_count()]);
        };
        let arrangements: Vec<Vec<usize>> = self.row_arrangements(first);
        let rest_arr: Vec<Vec<Vec<usize>>> = rest.iter().map(|&b| self.row_arrangements(b)).collect();
        let place = |col_of: &mut Vec<usize>, b: VertexId, arr: &[usize]| {
            for (&e, &c) in g.incident(b).iter().zip(arr) {
                col_of[e] = c;
            }
        };
        let branches = par::map(exec, &arrangements, |arr| {
            let mut col_of = vec![0; g.edge_count()];
            place(&mut col_of, first, arr);
            let mut best = R::default();
            let mut idx = vec![0usize; rest.len()];
            loop {
                for (i, &b) in rest.iter().enumerate() {
                    place(&mut col_of, b, &rest_arr[i][idx[i]]);
                }
                best = best.max(eval(&col_of));
                // Odometer step over the remaining rows.
                let mut i = 0;
                loop {
                    if i == rest.len() {
                        return best;
                    }
                    idx[i] += 1;
                    if idx[i] < rest_arr[i].len() {
                        break;
                    }
                    idx[i] = 0;
                    i += 1;
                }
            }
        });
        branches.into_iter().max().unwrap_or_default()
    }
}

fn all_same(cols: impl Iterator<Item = usize>) -> bool {
    let mut cols = cols.peekable();
    let first = cols.peek().copied();
    cols.all(|c| Some(c) == first)
}

/// Maximum number of Type 1 vertices over every matrix of `bg` with `Δ(B)`
/// columns. A part-A vertex counts when all its edges (possibly none) share
/// a column.
pub fn max_type1_over_matrices(bg: &BipartiteGraph, budget: u128) -> Result<usize, OracleError> {
    let space = MatrixSpace::new(bg, budget)?;
    let g = bg.graph();
    Ok(space.maximize(Execution::default(), |col_of| {
        bg.part_a().iter().filter(|&&a| all_same(g.incident(a).iter().map(|&e| col_of[e]))).count()
    }))
}

/// Lexicographically largest `(t1, t2)` over every matrix of `bg`, whose
/// part-A vertices must have degree 3.
pub fn max_score_over_matrices(bg: &BipartiteGraph, budget: u128) -> Result<MatrixScore, OracleError> {
    let space = MatrixSpace::new(bg, budget)?;
    let g = bg.graph();
    Ok(space.maximize(Execution::default(), |col_of| {
        let mut s = MatrixScore::default();
        for &a in bg.part_a() {
            let mut cols: Vec<usize> = g.incident(a).iter().map(|&e| col_of[e]).collect();
            cols.sort_unstable();
            cols.dedup();
            match cols.len() {
                1 => s.t1 += 1,
                2 => s.t2 += 1,
                _ => {}
            }
        }
        s
    }))
}
