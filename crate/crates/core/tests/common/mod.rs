//! Reference checks written directly from the definitions, sharing no code
//! with the library beyond the data types.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use strongcol::colorer::StrongColoring;
use strongcol::graph::{EdgeId, Graph, VertexId};
use strongcol::matrix::EdgeMatrix;

/// Visibility by definition: adjacent, or some third edge touches both.
pub fn naive_visible(g: &Graph, e: EdgeId, f: EdgeId) -> bool {
    if e == f {
        return false;
    }
    let touches = |x: EdgeId, y: EdgeId| {
        let (a, b) = g.endpoints(x);
        let (c, d) = g.endpoints(y);
        a == c || a == d || b == c || b == d
    };
    touches(e, f) || g.edge_ids().any(|h| h != e && h != f && touches(h, e) && touches(h, f))
}

/// All visible pairs with equal colors, by double loop.
pub fn naive_conflicts(g: &Graph, c: &StrongColoring) -> Vec<(EdgeId, EdgeId)> {
    let mut out = Vec::new();
    for e in g.edge_ids() {
        for f in e + 1..g.edge_count() {
            if let (Some(x), Some(y)) = (c.get(e), c.get(f)) {
                if x == y && naive_visible(g, e, f) {
                    out.push((e, f));
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Kind {
    One,
    Two { paired: Vec<EdgeId>, lonely: EdgeId, pc: usize, lc: usize },
    Three,
}

/// Type of every part-A vertex, from the column multiset of its edges.
pub fn kinds(m: &EdgeMatrix) -> HashMap<VertexId, Kind> {
    let bg = m.graph();
    let g = bg.graph();
    let mut out = HashMap::new();
    for &a in bg.part_a() {
        let edges = g.incident(a);
        assert_eq!(edges.len(), 3);
        let cols: Vec<usize> = edges.iter().map(|&e| m.column(e)).collect();
        let distinct: BTreeSet<usize> = cols.iter().copied().collect();
        let kind = match distinct.len() {
            1 => Kind::One,
            3 => Kind::Three,
            _ => {
                let pc = *distinct.iter().find(|&&c| cols.iter().filter(|&&x| x == c).count() == 2).unwrap();
                let paired: Vec<EdgeId> = edges.iter().copied().filter(|&e| m.column(e) == pc).collect();
                let lonely = edges.iter().copied().find(|&e| m.column(e) != pc).unwrap();
                Kind::Two { paired, lonely, pc, lc: m.column(lonely) }
            }
        };
        out.insert(a, kind);
    }
    out
}

fn a_of(m: &EdgeMatrix, e: EdgeId) -> VertexId {
    m.graph().a_end(e)
}

fn b_of(m: &EdgeMatrix, e: EdgeId) -> VertexId {
    m.graph().b_end(e)
}

fn cols(m: &EdgeMatrix, a: VertexId) -> BTreeSet<usize> {
    m.graph().graph().incident(a).iter().map(|&e| m.column(e)).collect()
}

/// Names of every violated condition, by scanning all pairs of edges that
/// share a B-vertex.
pub fn scan_violations(m: &EdgeMatrix) -> BTreeSet<&'static str> {
    let k = kinds(m);
    let g = m.graph().graph();
    let mut out = BTreeSet::new();
    for e in g.edge_ids() {
        for f in g.edge_ids() {
            if e == f || b_of(m, e) != b_of(m, f) {
                continue;
            }
            let (a0, a1) = (a_of(m, e), a_of(m, f));
            match (&k[&a0], &k[&a1]) {
                (Kind::Three, Kind::Three) => {
                    if cols(m, a1).contains(&m.column(e)) || cols(m, a0).contains(&m.column(f)) {
                        out.insert("type3-pair");
                    }
                }
                (Kind::Three, Kind::Two { lonely, pc, lc, .. }) if *lonely == f => {
                    if cols(m, a0).contains(lc) || *pc == m.column(e) {
                        out.insert("type3-lonely");
                    }
                }
                (Kind::Two { lonely: l0, pc: p0, lc: c0, .. }, Kind::Two { lonely: l1, paired: q1, pc: p1, .. })
                    if *l0 == e =>
                {
                    if q1.contains(&f) && p0 == p1 {
                        out.insert("lonely-paired");
                    }
                    if *l1 == f && c0 == p1 {
                        out.insert("lonely-lonely");
                    }
                }
                (Kind::One, Kind::One) if m.column(e) == m.column(f) => {
                    out.insert("type1-pair");
                }
                _ => {}
            }
        }
    }
    for kind in k.values() {
        if let Kind::Two { paired, lonely, lc, .. } = kind {
            let blocked = paired.iter().all(|&p| {
                g.incident(b_of(m, p)).iter().any(|&h| {
                    h != *lonely && m.column(h) == *lc && matches!(&k[&a_of(m, h)], Kind::Two { lonely: l, .. } if *l == h)
                })
            });
            if blocked {
                out.insert("lonely-branch");
            }
        }
    }
    out
}

/// Facts about one component of the subgraph induced by the lonely edges of
/// a column.
#[derive(Debug, Clone)]
pub struct ComponentFacts {
    pub column: usize,
    pub vertices: usize,
    pub edges: usize,
    /// `edges - vertices + 1`.
    pub cycles: usize,
    /// Set when `cycles == 1`.
    pub alternate: Option<bool>,
    /// Owners with both paired edges inside the component.
    pub doubly_paired: usize,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Union-find decomposition of the lonely subgraph of every column.
pub fn lonely_structure(m: &EdgeMatrix) -> Vec<ComponentFacts> {
    let k = kinds(m);
    let g = m.graph().graph();
    let n = g.vertex_count();
    let mut out = Vec::new();
    for j in 0..m.columns() {
        let lonely: BTreeSet<EdgeId> = k
            .values()
            .filter_map(|t| match t {
                Kind::Two { lonely, lc, .. } if *lc == j => Some(*lonely),
                _ => None,
            })
            .collect();
        let mut inside = vec![false; n];
        for &e in &lonely {
            let (u, v) = g.endpoints(e);
            inside[u] = true;
            inside[v] = true;
        }
        let induced: Vec<EdgeId> = g
            .edge_ids()
            .filter(|&e| {
                let (u, v) = g.endpoints(e);
                inside[u] && inside[v]
            })
            .collect();
        let mut parent: Vec<usize> = (0..n).collect();
        for &e in &induced {
            let (u, v) = g.endpoints(e);
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            parent[ru] = rv;
        }
        let mut groups: HashMap<usize, (Vec<VertexId>, Vec<EdgeId>)> = HashMap::new();
        for v in (0..n).filter(|&v| inside[v]) {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().0.push(v);
        }
        for &e in &induced {
            let r = find(&mut parent, g.endpoints(e).0);
            groups.get_mut(&r).unwrap().1.push(e);
        }
        for (vs, es) in groups.into_values() {
            let cycles = es.len() + 1 - vs.len();
            let alternate = (cycles == 1).then(|| {
                let cyc = peel_to_cycle(g, &vs, &es);
                let lonely_on = cyc.iter().filter(|e| lonely.contains(e)).count();
                let mut hits: HashMap<VertexId, usize> = HashMap::new();
                for e in cyc.iter().filter(|e| lonely.contains(e)) {
                    let (u, v) = g.endpoints(*e);
                    *hits.entry(u).or_default() += 1;
                    *hits.entry(v).or_default() += 1;
                }
                2 * lonely_on == cyc.len() && hits.values().all(|&h| h <= 1)
            });
            let doubly_paired = vs
                .iter()
                .filter(|v| matches!(&k.get(v), Some(Kind::Two { paired, .. }) if paired.iter().all(|p| es.contains(p))))
                .count();
            out.push(ComponentFacts { column: j, vertices: vs.len(), edges: es.len(), cycles, alternate, doubly_paired });
        }
    }
    out
}

/// Edges of the unique cycle of a unicyclic edge set.
fn peel_to_cycle(g: &Graph, vs: &[VertexId], es: &[EdgeId]) -> Vec<EdgeId> {
    let mut live: BTreeSet<EdgeId> = es.iter().copied().collect();
    loop {
        let mut deg: HashMap<VertexId, usize> = vs.iter().map(|&v| (v, 0)).collect();
        for &e in &live {
            let (u, v) = g.endpoints(e);
            *deg.get_mut(&u).unwrap() += 1;
            *deg.get_mut(&v).unwrap() += 1;
        }
        let before = live.len();
        live.retain(|&e| {
            let (u, v) = g.endpoints(e);
            deg[&u] >= 2 && deg[&v] >= 2
        });
        if live.len() == before {
            return live.into_iter().collect();
        }
    }
}
