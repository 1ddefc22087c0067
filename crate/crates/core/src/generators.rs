//! Instance families: random degree-capped bipartite graphs, complete
//! bipartite graphs, the five-blob extremal construction, and 1-subdivision.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bipartite::{BipartiteGraph, Side};
use crate::graph::{Graph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("delta must be at least 2 (got {0})")]
    DeltaTooSmall(usize),
    #[error("complete bipartite sides must be non-empty (got {0}, {1})")]
    EmptySide(usize, usize),
    #[error("subdivision needs an input graph")]
    MissingInput,
}

/// Random simple bipartite graph with `Δ(A) ≤ d_a` and `Δ(B) ≤ d_b`.
///
/// Repeatedly pairs a random unsaturated A-vertex with a random unsaturated
/// B-vertex, rejecting duplicates. After a run of rejections the remaining
/// addable pairs are listed explicitly, so the result is always maximal: no
/// further edge fits under the caps. Deterministic for a fixed seed.
pub fn random_bipartite(n_a: usize, n_b: usize, d_a: usize, d_b: usize, seed: u64) -> BipartiteGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new();
    let mut sides = Vec::with_capacity(n_a + n_b);
    for i in 0..n_a {
        g.add_vertex(format!("a{}", i + 1));
        sides.push(Side::A);
    }
    for j in 0..n_b {
        g.add_vertex(format!("b{}", j + 1));
        sides.push(Side::B);
    }
    let mut open_a: Vec<VertexId> = if d_a > 0 { (0..n_a).collect() } else { Vec::new() };
    let mut open_b: Vec<VertexId> = if d_b > 0 { (n_a..n_a + n_b).collect() } else { Vec::new() };
    let mut rejections = 0usize;
    let rejection_limit = 8 + 2 * (n_a + n_b);

    let add = |g: &mut Graph, open_a: &mut Vec<VertexId>, open_b: &mut Vec<VertexId>, a, b| {
        g.add_edge(a, b).expect("pair checked before insertion");
        if g.degree(a) >= d_a {
            open_a.retain(|&x| x != a);
        }
        if g.degree(b) >= d_b {
            open_b.retain(|&x| x != b);
        }
    };

    while !open_a.is_empty() && !open_b.is_empty() {
        if rejections < rejection_limit {
            let a = open_a[rng.gen_range(0..open_a.len())];
            let b = open_b[rng.gen_range(0..open_b.len())];
            if g.find_edge(a, b).is_some() {
                rejections += 1;
                continue;
            }
            rejections = 0;
            add(&mut g, &mut open_a, &mut open_b, a, b);
        } else {
            let candidates: Vec<(VertexId, VertexId)> = open_a
                .iter()
                .flat_map(|&a| open_b.iter().map(move |&b| (a, b)))
                .filter(|&(a, b)| g.find_edge(a, b).is_none())
                .collect();
            let Some(&(a, b)) = candidates.choose(&mut rng) else { break };
            rejections = 0;
            add(&mut g, &mut open_a, &mut open_b, a, b);
        }
    }
    BipartiteGraph::from_sides(g, sides).expect("edges only join A to B")
}

/// `K_{a,b}` with part A of size `a` (each of degree `b`) and part B of size
/// `b` (each of degree `a`).
pub fn complete_bipartite(a: usize, b: usize) -> BipartiteGraph {
    let mut g = Graph::new();
    let mut sides = Vec::new();
    for i in 0..a {
        g.add_vertex(format!("a{}", i + 1));
        sides.push(Side::A);
    }
    for j in 0..b {
        g.add_vertex(format!("b{}", j + 1));
        sides.push(Side::B);
    }
    for i in 0..a {
        for j in 0..b {
            g.add_edge(i, a + j).unwrap();
        }
    }
    BipartiteGraph::from_sides(g, sides).unwrap()
}

/// Five independent sets `I_1..I_5`, each complete to its two cyclic
/// neighbours. For `delta = 2k` every set has `k` vertices; for
/// `delta = 2k + 1` the sizes are `(k, k, k, k+1, k+1)`. Maximum degree is
/// `delta` and every two edges are visible from each other.
pub fn erdos_nesetril(delta: usize) -> Result<Graph, GenError> {
    if delta < 2 {
        return Err(GenError::DeltaTooSmall(delta));
    }
    let k = delta / 2;
    let sizes = if delta.is_multiple_of(2) { [k; 5] } else { [k, k, k, k + 1, k + 1] };
    let mut g = Graph::new();
    let mut blobs: Vec<Vec<VertexId>> = Vec::new();
    for (j, &size) in sizes.iter().enumerate() {
        blobs.push((0..size).map(|i| g.add_vertex(format!("i{}_{}", j + 1, i + 1))).collect());
    }
    for j in 0..5 {
        let next = (j + 1) % 5;
        for &u in &blobs[j] {
            for &v in &blobs[next] {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    debug_assert_eq!(g.max_degree(), delta);
    Ok(g)
}

/// Replaces every edge `uv` by a path `a_u b_uv a_v`. Part A holds one
/// vertex per vertex of `g`, part B one per edge, so `Δ(B) = 2` whenever `g`
/// has an edge and `Δ(A) = Δ(g)`.
pub fn subdivide_1(g: &Graph) -> BipartiteGraph {
    let mut h = Graph::new();
    let mut sides = Vec::new();
    for v in g.vertices() {
        h.add_vertex(format!("a{}", g.label(v)));
        sides.push(Side::A);
    }
    for e in g.edge_ids() {
        let (u, v) = g.endpoints(e);
        let b = h.add_vertex(format!("b{}-{}", g.label(u), g.label(v)));
        sides.push(Side::B);
        h.add_edge(u, b).unwrap();
        h.add_edge(v, b).unwrap();
    }
    BipartiteGraph::from_sides(h, sides).unwrap()
}

/// A generator invocation, as expressed on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenSpec {
    RandomBipartite { n_a: usize, n_b: usize, d_a: usize, d_b: usize, seed: u64 },
    CompleteBipartite { a: usize, b: usize },
    ErdosNesetril { delta: usize },
    Subdivision { input: Graph },
}

impl GenSpec {
    pub fn generate(&self) -> Result<Graph, GenError> {
        match self {
            GenSpec::RandomBipartite { n_a, n_b, d_a, d_b, seed } => {
                Ok(random_bipartite(*n_a, *n_b, *d_a, *d_b, *seed).into_graph())
            }
            GenSpec::CompleteBipartite { a, b } => {
                if *a == 0 || *b == 0 {
                    return Err(GenError::EmptySide(*a, *b));
                }
                Ok(complete_bipartite(*a, *b).into_graph())
            }
            GenSpec::ErdosNesetril { delta } => erdos_nesetril(*delta),
            GenSpec::Subdivision { input } => Ok(subdivide_1(input).into_graph()),
        }
    }
}

/// All graphs on `n` labelled vertices with maximum degree at most `cap`,
/// as edge subsets of `K_n` in bitmask order. Isolated vertices are kept.
pub fn all_degree_capped_graphs(n: usize, cap: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    assert!(pairs.len() < 32, "too many vertices for exhaustive enumeration");
    let mut out = Vec::new();
    'mask: for mask in 0u32..(1u32 << pairs.len()) {
        let mut deg = vec![0usize; n];
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                deg[u] += 1;
                deg[v] += 1;
                if deg[u] > cap || deg[v] > cap {
                    continue 'mask;
                }
            }
        }
        let mut g = Graph::with_vertices(n);
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g.add_edge(u, v).unwrap();
            }
        }
        out.push(g);
    }
    out
}

/// The Petersen graph.
pub fn petersen() -> Graph {
    let mut g = Graph::with_vertices(10);
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5).unwrap();
        g.add_edge(i, i + 5).unwrap();
        g.add_edge(5 + i, 5 + (i + 2) % 5).unwrap();
    }
    g
}
