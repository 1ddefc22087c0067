//! Structural conditions that every locally maximum matrix satisfies, each
//! paired with a switch that strictly improves the `(t1, t2)` score when the
//! condition fails.
//!
//! Conditions are checked per part-A vertex `a0` in ascending id order, and
//! for each vertex in the order listed by [`Observation`]. Two Type 1
//! vertices with a common neighbour always sit in different columns, because
//! that neighbour's row holds an edge of each, so that condition is implied
//! by the matrix invariant and needs no scan.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{EdgeId, VertexId};
use crate::matrix::{Classification, EdgeMatrix, MatrixError, MatrixScore, VertexType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Observation {
    /// Two Type 3 vertices sharing `b`: the column of either edge at `b`
    /// must not be a column of the other vertex.
    Type3Pair,
    /// A Type 3 vertex and a Type 2 vertex whose lonely edge meets it at `b`:
    /// the lonely column avoids the Type 3 columns and the paired column
    /// differs from the Type 3 edge at `b`.
    Type3Lonely,
    /// A lonely edge meeting a paired edge of another Type 2 vertex: the two
    /// paired columns differ.
    LonelyPaired,
    /// Two lonely edges meeting at `b`: the lonely column of one differs from
    /// the paired column of the other.
    LonelyLonely,
    /// A Type 2 vertex with lonely column `j`: not both paired edges end at a
    /// B-vertex carrying another lonely edge of column `j`.
    LonelyBranch,
}

impl Observation {
    pub const ALL: [Observation; 5] = [
        Observation::Type3Pair,
        Observation::Type3Lonely,
        Observation::LonelyPaired,
        Observation::LonelyLonely,
        Observation::LonelyBranch,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Observation::Type3Pair => "type3-pair",
            Observation::Type3Lonely => "type3-lonely",
            Observation::LonelyPaired => "lonely-paired",
            Observation::LonelyLonely => "lonely-lonely",
            Observation::LonelyBranch => "lonely-branch",
        }
    }
}

impl fmt::Display for Observation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exchange of cells `(row, c1)` and `(row, c2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Switch {
    pub row: VertexId,
    pub c1: usize,
    pub c2: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservationViolation {
    pub observation: Observation,
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    /// Switches to apply in order; never more than two, always in distinct rows.
    pub fix: Vec<Switch>,
}

impl ObservationViolation {
    pub fn apply(&self, m: &EdgeMatrix) -> Result<EdgeMatrix, MatrixError> {
        let mut out = m.clone();
        for s in &self.fix {
            out.switch_in_place(s.row, s.c1, s.c2)?;
        }
        Ok(out)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ObservationError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("fix for {observation} did not improve the score: {before} -> {after}")]
    NotImproving { observation: Observation, before: MatrixScore, after: MatrixScore },
}

fn columns_of(m: &EdgeMatrix, a: VertexId) -> [usize; 3] {
    let edges = m.graph().graph().incident(a);
    [m.column(edges[0]), m.column(edges[1]), m.column(edges[2])]
}

struct Scan<'m> {
    m: &'m EdgeMatrix,
    class: &'m Classification,
}

impl Scan<'_> {
    fn edges_at_b(&self, b: VertexId) -> &[EdgeId] {
        self.m.graph().graph().incident(b)
    }

    fn a_end(&self, e: EdgeId) -> VertexId {
        self.m.graph().a_end(e)
    }

    fn b_end(&self, e: EdgeId) -> VertexId {
        self.m.graph().b_end(e)
    }

    fn check(&self, a0: VertexId, obs: Observation) -> Option<ObservationViolation> {
        let t0 = self.class.get(a0)?;
        let col = |e| self.m.column(e);
        match (obs, t0) {
            (Observation::Type3Pair, VertexType::Type3) => {
                let cols0 = columns_of(self.m, a0);
                for &e0 in self.m.graph().graph().incident(a0) {
                    let b = self.b_end(e0);
                    for &e1 in self.edges_at_b(b) {
                        let a1 = self.a_end(e1);
                        if a1 == a0 || self.class.get(a1) != Some(VertexType::Type3) {
                            continue;
                        }
                        let cols1 = columns_of(self.m, a1);
                        if cols1.contains(&col(e0)) || cols0.contains(&col(e1)) {
                            return Some(ObservationViolation {
                                observation: obs,
                                vertices: vec![a0, a1, b],
                                edges: vec![e0, e1],
                                fix: vec![Switch { row: b, c1: col(e0), c2: col(e1) }],
                            });
                        }
                    }
                }
                None
            }
            (Observation::Type3Lonely, VertexType::Type3) => {
                let cols0 = columns_of(self.m, a0);
                for &e3 in self.m.graph().graph().incident(a0) {
                    let b = self.b_end(e3);
                    for &e6 in self.edges_at_b(b) {
                        let a1 = self.a_end(e6);
                        let Some(VertexType::Type2 { lonely, paired_column, lonely_column, .. }) =
                            self.class.get(a1)
                        else {
                            continue;
                        };
                        if lonely != e6 {
                            continue;
                        }
                        if cols0.contains(&lonely_column) || paired_column == col(e3) {
                            return Some(ObservationViolation {
                                observation: obs,
                                vertices: vec![a0, a1, b],
                                edges: vec![e3, e6],
                                fix: vec![Switch { row: b, c1: col(e3), c2: col(e6) }],
                            });
                        }
                    }
                }
                None
            }
            (Observation::LonelyPaired, VertexType::Type2 { lonely: e3, paired_column, .. }) => {
                let b = self.b_end(e3);
                for &e4 in self.edges_at_b(b) {
                    let a1 = self.a_end(e4);
                    if a1 == a0 {
                        continue;
                    }
                    let Some(VertexType::Type2 { paired, paired_column: other, .. }) = self.class.get(a1)
                    else {
                        continue;
                    };
                    if paired.contains(&e4) && other == paired_column {
                        return Some(ObservationViolation {
                            observation: obs,
                            vertices: vec![a0, a1, b],
                            edges: vec![e3, e4],
                            fix: vec![Switch { row: b, c1: col(e3), c2: col(e4) }],
                        });
                    }
                }
                None
            }
            (Observation::LonelyLonely, VertexType::Type2 { lonely: e3, lonely_column, .. }) => {
                let b = self.b_end(e3);
                for &e6 in self.edges_at_b(b) {
                    let a1 = self.a_end(e6);
                    if a1 == a0 {
                        continue;
                    }
                    let Some(VertexType::Type2 { lonely, paired_column, .. }) = self.class.get(a1) else {
                        continue;
                    };
                    if lonely == e6 && lonely_column == paired_column {
                        return Some(ObservationViolation {
                            observation: obs,
                            vertices: vec![a0, a1, b],
                            edges: vec![e3, e6],
                            fix: vec![Switch { row: b, c1: col(e3), c2: col(e6) }],
                        });
                    }
                }
                None
            }
            (
                Observation::LonelyBranch,
                VertexType::Type2 { paired, lonely, paired_column, lonely_column },
            ) => {
                let lonely_at = |b: VertexId| {
                    self.m
                        .cell(b, lonely_column)
                        .filter(|&f| self.class.lonely_of(self.a_end(f)) == Some(f))
                };
                let (b2, b3) = (self.b_end(paired[0]), self.b_end(paired[1]));
                let (f2, f3) = (lonely_at(b2)?, lonely_at(b3)?);
                // Moving both paired edges into the lonely column makes a0
                // Type 1; the displaced lonely edges keep their owners Type 2
                // (or better).
                Some(ObservationViolation {
                    observation: obs,
                    vertices: vec![a0, self.a_end(f2), self.a_end(f3), b2, b3],
                    edges: vec![lonely, paired[0], paired[1], f2, f3],
                    fix: vec![
                        Switch { row: b2, c1: paired_column, c2: lonely_column },
                        Switch { row: b3, c1: paired_column, c2: lonely_column },
                    ],
                })
            }
            _ => None,
        }
    }
}

/// First violated condition in scan order, with its fixing switches.
pub fn find_violation(m: &EdgeMatrix) -> Result<Option<ObservationViolation>, MatrixError> {
    let class = m.classify()?;
    Ok(find_violation_classified(m, &class))
}

/// As [`find_violation`], reusing an existing classification of `m`.
pub fn find_violation_classified(m: &EdgeMatrix, class: &Classification) -> Option<ObservationViolation> {
    let scan = Scan { m, class };
    m.graph()
        .part_a()
        .iter()
        .flat_map(|&a| Observation::ALL.iter().map(move |&obs| (a, obs)))
        .find_map(|(a, obs)| scan.check(a, obs))
}

/// Applies `v`'s fix and checks that the score strictly increased.
pub fn apply_fix(
    m: &EdgeMatrix,
    v: &ObservationViolation,
) -> Result<(EdgeMatrix, MatrixScore), ObservationError> {
    let before = m.score()?;
    let next = v.apply(m)?;
    let after = next.score()?;
    if after <= before {
        return Err(ObservationError::NotImproving { observation: v.observation, before, after });
    }
    Ok((next, after))
}

/// Applies fixing switches until no condition is violated. Terminates since
/// every fix strictly increases `(t1, t2)`, which is bounded by `(|A|, |A|)`.
pub fn maximize(m: &EdgeMatrix) -> Result<EdgeMatrix, ObservationError> {
    Ok(maximize_logged(m)?.0)
}

/// As [`maximize`], also returning the conditions fixed, in order.
pub fn maximize_logged(m: &EdgeMatrix) -> Result<(EdgeMatrix, Vec<Observation>), ObservationError> {
    let mut current = m.clone();
    let mut log = Vec::new();
    while let Some(v) = find_violation(&current)? {
        current = apply_fix(&current, &v)?.0;
        log.push(v.observation);
    }
    Ok((current, log))
}
