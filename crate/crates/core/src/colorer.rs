//! Strong edge-coloring of (3,Δ)-bipartite graphs with at most `4Δ` colors.
//!
//! A color is a pair `(hue, column)` where the column is the edge's column in
//! the matrix, so edges in different columns never clash. Steps 1 to 3 use
//! hues `1..=3` on the edges of Type 1, Type 2 (paired) and Type 3 vertices;
//! Step 4 colors lonely edges column by column, one component of the lonely
//! subgraph at a time, and may fall back to hue `*`.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::bipartite::{BipartiteError, BipartiteGraph};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::matrix::{Classification, EdgeMatrix, MatrixError, MatrixScore, VertexType};
use crate::observations::{self, ObservationError};
use crate::oracles;
use crate::par::{self, Execution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Hue {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "3")]
    Three,
    #[serde(rename = "*")]
    Star,
}

impl Hue {
    pub const ALL: [Hue; 4] = [Hue::One, Hue::Two, Hue::Three, Hue::Star];

    fn bit(self) -> u8 {
        1 << self as u8
    }
}

impl fmt::Display for Hue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Hue::One => "1",
            Hue::Two => "2",
            Hue::Three => "3",
            Hue::Star => "*",
        })
    }
}

impl std::str::FromStr for Hue {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "1" => Ok(Hue::One),
            "2" => Ok(Hue::Two),
            "3" => Ok(Hue::Three),
            "*" => Ok(Hue::Star),
            _ => Err(format!("unknown hue {s:?}")),
        }
    }
}

/// A set of hues, ordered `1 < 2 < 3 < *`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct HueSet(u8);

impl HueSet {
    pub const EMPTY: HueSet = HueSet(0);
    pub const ALL: HueSet = HueSet(0b1111);
    /// Hues `1`, `2` and `3`.
    pub const BASIC: HueSet = HueSet(0b0111);

    pub fn contains(self, h: Hue) -> bool {
        self.0 & h.bit() != 0
    }

    pub fn insert(&mut self, h: Hue) {
        self.0 |= h.bit();
    }

    pub fn remove(&mut self, h: Hue) {
        self.0 &= !h.bit();
    }

    pub fn intersect(self, other: HueSet) -> HueSet {
        HueSet(self.0 & other.0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn lowest(self) -> Option<Hue> {
        self.iter().next()
    }

    pub fn iter(self) -> impl Iterator<Item = Hue> {
        Hue::ALL.into_iter().filter(move |&h| self.contains(h))
    }
}

impl FromIterator<Hue> for HueSet {
    fn from_iter<I: IntoIterator<Item = Hue>>(iter: I) -> Self {
        let mut s = HueSet::EMPTY;
        for h in iter {
            s.insert(h);
        }
        s
    }
}

impl fmt::Display for HueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|h| h.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for HueSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// `column` is 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Color {
    pub hue: Hue,
    pub column: usize,
}

/// Partial or complete assignment of colors to edge ids.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StrongColoring {
    colors: Vec<Option<Color>>,
}

impl StrongColoring {
    pub fn new(edge_count: usize) -> Self {
        Self { colors: vec![None; edge_count] }
    }

    pub fn edge_count(&self) -> usize {
        self.colors.len()
    }

    pub fn get(&self, e: EdgeId) -> Option<Color> {
        self.colors.get(e).copied().flatten()
    }

    pub fn set(&mut self, e: EdgeId, c: Color) {
        self.colors[e] = Some(c);
    }

    pub fn clear(&mut self, e: EdgeId) {
        self.colors[e] = None;
    }

    pub fn is_complete(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    /// `(edge, color)` for every colored edge, ascending edge id.
    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, Color)> + '_ {
        self.colors.iter().enumerate().filter_map(|(e, c)| c.map(|c| (e, c)))
    }

    pub fn distinct_colors(&self) -> usize {
        self.iter().map(|(_, c)| c).collect::<HashSet<_>>().len()
    }

    pub fn star_edges(&self) -> usize {
        self.iter().filter(|(_, c)| c.hue == Hue::Star).count()
    }

    /// Keeps only the first `n` edges.
    pub fn truncate(&mut self, n: usize) {
        self.colors.truncate(n);
    }
}

/// Number of distinct `(hue, column)` pairs in `c`.
pub fn distinct_colors(c: &StrongColoring) -> usize {
    c.distinct_colors()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Step {
    #[serde(rename = "1")]
    Type1,
    #[serde(rename = "2")]
    Paired,
    #[serde(rename = "3")]
    Type3,
    /// Lonely edges on the cycle of a component.
    #[serde(rename = "4a")]
    CyclePhase,
    /// Remaining lonely edges, in breadth-first order.
    #[serde(rename = "4b")]
    TreePhase,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Step::Type1 => "1",
            Step::Paired => "2",
            Step::Type3 => "3",
            Step::CyclePhase => "4a",
            Step::TreePhase => "4b",
        })
    }
}

/// One edge assignment. `available` is the set of hues free for the edge
/// just before it (or, for paired edges, its pair) was colored, restricted
/// to the hues the step may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Assignment {
    pub edge: EdgeId,
    pub step: Step,
    pub available: HueSet,
    pub hue: Hue,
}

/// Smallest number of free hues seen in each step; `None` when the step
/// colored nothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct AvailabilityMinima {
    pub paired: Option<usize>,
    pub type3: Option<usize>,
    /// Cycle edges other than the last of each cycle.
    pub cycle: Option<usize>,
    pub tree: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ColoringTrace {
    /// Assignments of the successful pass, in order, on the padded graph.
    pub assignments: Vec<Assignment>,
    /// Passes abandoned after a failed step.
    pub restarts: usize,
    /// Switches applied by eager maximization before the first pass.
    pub presweep_switches: usize,
    pub final_score: MatrixScore,
    /// Matrix of the successful pass, over the padded graph.
    #[serde(skip)]
    pub matrix: Option<EdgeMatrix>,
}

impl ColoringTrace {
    pub fn minima(&self) -> AvailabilityMinima {
        let mut out = AvailabilityMinima::default();
        let fold = |slot: &mut Option<usize>, n: usize| *slot = Some(slot.map_or(n, |m: usize| m.min(n)));
        for a in &self.assignments {
            match a.step {
                Step::Paired => fold(&mut out.paired, a.available.len()),
                Step::Type3 => fold(&mut out.type3, a.available.len()),
                Step::CyclePhase if a.hue != Hue::Star => fold(&mut out.cycle, a.available.len()),
                Step::TreePhase => fold(&mut out.tree, a.available.len()),
                _ => {}
            }
        }
        out
    }
}

/// Ordered cycle of a lonely component. `edges[i]` joins `vertices[i]` and
/// `vertices[i + 1]` (cyclically); lonely edges sit at even positions, and
/// `edges[0]` is the lonely cycle edge of smallest id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LonelyCycle {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl LonelyCycle {
    /// Lonely cycle edges in coloring order.
    pub fn lonely_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().step_by(2).copied()
    }
}

/// Connected component of the subgraph induced by the endpoints of the
/// lonely edges of one column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LonelyComponent {
    pub column: usize,
    pub vertices: Vec<VertexId>,
    pub lonely_edges: Vec<EdgeId>,
    pub other_edges: Vec<EdgeId>,
    pub cycle: Option<LonelyCycle>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StructureProblem {
    /// More than one independent cycle.
    ManyCycles { cyclomatic: usize },
    /// The cycle does not alternate lonely and non-lonely edges.
    NotAlternate,
}

/// A step could not proceed on the current matrix.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StepFailure {
    #[error("step {step}: edge {edge} had hues {available}, needed {needed}")]
    Availability { step: Step, edge: EdgeId, available: HueSet, needed: usize },
    #[error("column {column}: lonely component at vertex {vertex}: {problem:?}")]
    Structure { column: usize, vertex: VertexId, problem: StructureProblem },
}

#[derive(Debug, Error)]
pub enum ColorError {
    #[error("not in class: delta_a = {delta_a} exceeds 3")]
    NotInClass { delta_a: usize },
    #[error(transparent)]
    Bipartite(#[from] BipartiteError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Observation(#[from] ObservationError),
    #[error("internal invariant breach: {0} on a matrix with no violated condition")]
    InvariantBreach(StepFailure),
    #[error("internal invariant breach: produced coloring has {0} conflicting pairs")]
    Invalid(usize),
    #[error("internal invariant breach: {0}")]
    Incomplete(oracles::OracleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Maximization {
    /// Remove every violated condition before the first pass.
    #[default]
    Eager,
    /// Fix one violated condition only when a pass fails, then restart.
    Lazy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ColorOptions {
    pub maximization: Maximization,
}

/// Hues not used by any colored edge visible from `e` in `column`.
fn free_hues(g: &Graph, coloring: &StrongColoring, e: EdgeId, column: usize) -> HueSet {
    let mut free = HueSet::ALL;
    g.for_each_visible(e, |f| {
        if let Some(c) = coloring.get(f) {
            if c.column == column {
                free.remove(c.hue);
            }
        }
    });
    free
}

/// State of one coloring pass over a fixed matrix.
pub struct ColoringRun<'m> {
    matrix: &'m EdgeMatrix,
    class: Classification,
    coloring: StrongColoring,
    assignments: Vec<Assignment>,
}

impl<'m> ColoringRun<'m> {
    pub fn new(matrix: &'m EdgeMatrix) -> Result<Self, MatrixError> {
        let class = matrix.classify()?;
        let edges = matrix.graph().graph().edge_count();
        Ok(Self { matrix, class, coloring: StrongColoring::new(edges), assignments: Vec::new() })
    }

    pub fn classification(&self) -> &Classification {
        &self.class
    }

    pub fn coloring(&self) -> &StrongColoring {
        &self.coloring
    }

    /// Direct access, for seeding partial colorings.
    pub fn coloring_mut(&mut self) -> &mut StrongColoring {
        &mut self.coloring
    }

    pub fn assignments(&self) -> &[Assignment] {
        &self.assignments
    }

    pub fn free(&self, e: EdgeId) -> HueSet {
        free_hues(self.matrix.graph().graph(), &self.coloring, e, self.matrix.column(e))
    }

    fn assign(&mut self, edge: EdgeId, step: Step, available: HueSet, hue: Hue) {
        let column = self.matrix.column(edge);
        self.coloring.set(edge, Color { hue, column });
        self.assignments.push(Assignment { edge, step, available, hue });
    }

    /// Colors `e` with the lowest hue of `allowed` that is free, requiring
    /// at least `needed` free hues.
    fn greedy(&mut self, e: EdgeId, step: Step, allowed: HueSet, needed: usize) -> Result<Hue, StepFailure> {
        let available = self.free(e).intersect(allowed);
        match available.lowest() {
            Some(h) if available.len() >= needed => {
                self.assign(e, step, available, h);
                Ok(h)
            }
            _ => Err(StepFailure::Availability { step, edge: e, available, needed }),
        }
    }

    pub fn step1(&mut self) -> Result<(), StepFailure> {
        let g = self.matrix.graph().graph();
        let vertices: Vec<VertexId> = self.class.vertices_of_type(1).collect();
        for a in vertices {
            for &e in g.incident(a) {
                self.greedy(e, Step::Type1, HueSet::BASIC, 1)?;
            }
        }
        Ok(())
    }

    pub fn step2(&mut self) -> Result<(), StepFailure> {
        let vertices: Vec<VertexId> = self.class.vertices_of_type(2).collect();
        for a in vertices {
            let Some(VertexType::Type2 { paired: [p, q], .. }) = self.class.get(a) else { unreachable!() };
            let (fp, fq) = (self.free(p).intersect(HueSet::BASIC), self.free(q).intersect(HueSet::BASIC));
            for (e, available) in [(p, fp), (q, fq)] {
                if available.len() < 2 {
                    return Err(StepFailure::Availability { step: Step::Paired, edge: e, available, needed: 2 });
                }
            }
            let hp = fp.lowest().expect("two hues free");
            let mut rest = fq;
            rest.remove(hp);
            let hq = rest.lowest().expect("two hues free");
            self.assign(p, Step::Paired, fp, hp);
            self.assign(q, Step::Paired, fq, hq);
        }
        Ok(())
    }

    pub fn step3(&mut self) -> Result<(), StepFailure> {
        let g = self.matrix.graph().graph();
        let vertices: Vec<VertexId> = self.class.vertices_of_type(3).collect();
        for a in vertices {
            for &e in g.incident(a) {
                self.greedy(e, Step::Type3, HueSet::BASIC, 1)?;
            }
        }
        Ok(())
    }

    pub fn lonely_components(&self, column: usize) -> Result<Vec<LonelyComponent>, StepFailure> {
        build_lonely_components(self.matrix, &self.class, column)
    }

    /// Colors the lonely cycle edges of `c` in order: all but the last
    /// greedily from `1..=3`, the last with `*`.
    pub fn cycle_phase(&mut self, c: &LonelyComponent) -> Result<(), StepFailure> {
        let Some(cycle) = &c.cycle else { return Ok(()) };
        let lonely: Vec<EdgeId> = cycle.lonely_edges().collect();
        let (&last, init) = lonely.split_last().expect("cycle has lonely edges");
        for &e in init {
            self.greedy(e, Step::CyclePhase, HueSet::BASIC, 1)?;
        }
        let available = self.free(last);
        if !available.contains(Hue::Star) {
            return Err(StepFailure::Availability { step: Step::CyclePhase, edge: last, available, needed: 1 });
        }
        self.assign(last, Step::CyclePhase, available, Hue::Star);
        Ok(())
    }

    /// Breadth-first search over the component minus its cycle edges, from
    /// every cycle vertex (or the smallest vertex when acyclic); each
    /// uncolored lonely edge gets the lowest free hue when first reached.
    pub fn tree_phase(&mut self, c: &LonelyComponent) -> Result<(), StepFailure> {
        let g = self.matrix.graph().graph();
        let cycle_edges: HashSet<EdgeId> = c.cycle.iter().flat_map(|cy| cy.edges.iter().copied()).collect();
        let members: HashSet<EdgeId> =
            c.lonely_edges.iter().chain(&c.other_edges).copied().filter(|e| !cycle_edges.contains(e)).collect();
        let mut roots: Vec<VertexId> = match &c.cycle {
            Some(cy) => cy.vertices.clone(),
            None => vec![c.vertices[0]],
        };
        roots.sort_unstable();
        let mut seen: HashSet<VertexId> = roots.iter().copied().collect();
        for root in roots {
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let mut next: Vec<(VertexId, EdgeId)> = g
                    .incident(u)
                    .iter()
                    .filter(|e| members.contains(e))
                    .map(|&e| (g.other_endpoint(e, u), e))
                    .filter(|(v, _)| !seen.contains(v))
                    .collect();
                next.sort_unstable();
                for (v, e) in next {
                    seen.insert(v);
                    queue.push_back(v);
                    if self.class.is_lonely(self.matrix.graph(), e) && self.coloring.get(e).is_none() {
                        self.greedy(e, Step::TreePhase, HueSet::ALL, 1)?;
                    }
                }
            }
        }
        Ok(())
    }

    pub fn step4(&mut self) -> Result<(), StepFailure> {
        for column in 0..self.matrix.columns() {
            for c in self.lonely_components(column)? {
                self.cycle_phase(&c)?;
                self.tree_phase(&c)?;
            }
        }
        Ok(())
    }

    /// Runs all four steps.
    pub fn run(mut self) -> Result<(StrongColoring, Vec<Assignment>), StepFailure> {
        self.step1()?;
        self.step2()?;
        self.step3()?;
        self.step4()?;
        debug_assert!(self.coloring.is_complete());
        Ok((self.coloring, self.assignments))
    }
}

/// Components of the subgraph induced by the endpoints of the column-`column`
/// lonely edges, ordered by smallest vertex. Fails when a component has two
/// independent cycles or a cycle that does not alternate.
pub fn build_lonely_components(
    m: &EdgeMatrix,
    class: &Classification,
    column: usize,
) -> Result<Vec<LonelyComponent>, StepFailure> {
    let bg = m.graph();
    let g = bg.graph();
    let owners: Vec<VertexId> = bg
        .part_a()
        .iter()
        .copied()
        .filter(|&a| matches!(class.get(a), Some(VertexType::Type2 { lonely_column, .. }) if lonely_column == column))
        .collect();
    if owners.is_empty() {
        return Ok(Vec::new());
    }
    let mut inside = vec![false; g.vertex_count()];
    for &a in &owners {
        inside[a] = true;
        inside[bg.b_end(class.lonely_of(a).expect("owner is Type 2"))] = true;
    }
    // Every induced edge has its A-end among the owners.
    let mut adj: Vec<Vec<EdgeId>> = vec![Vec::new(); g.vertex_count()];
    for &a in &owners {
        for &e in g.incident(a) {
            if inside[bg.b_end(e)] {
                adj[a].push(e);
                adj[bg.b_end(e)].push(e);
            }
        }
    }

    let mut comp_of = vec![usize::MAX; g.vertex_count()];
    let mut out = Vec::new();
    for start in (0..g.vertex_count()).filter(|&v| inside[v]) {
        if comp_of[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut vertices = vec![start];
        comp_of[start] = id;
        let mut i = 0;
        while i < vertices.len() {
            let u = vertices[i];
            i += 1;
            for &e in &adj[u] {
                let v = g.other_endpoint(e, u);
                if comp_of[v] == usize::MAX {
                    comp_of[v] = id;
                    vertices.push(v);
                }
            }
        }
        vertices.sort_unstable();
        let mut edges: Vec<EdgeId> = vertices.iter().filter(|&&v| bg.side(v) == crate::bipartite::Side::A).flat_map(|&a| adj[a].iter().copied()).collect();
        edges.sort_unstable();
        let (lonely_edges, other_edges): (Vec<EdgeId>, Vec<EdgeId>) =
            edges.iter().partition(|&&e| class.is_lonely(bg, e));
        let cyclomatic = (edges.len() + 1).saturating_sub(vertices.len());
        let cycle = match cyclomatic {
            0 => None,
            1 => Some(
                extract_cycle(g, &adj, &vertices, |e| class.is_lonely(bg, e))
                    .ok_or(StepFailure::Structure { column, vertex: vertices[0], problem: StructureProblem::NotAlternate })?,
            ),
            _ => {
                return Err(StepFailure::Structure {
                    column,
                    vertex: vertices[0],
                    problem: StructureProblem::ManyCycles { cyclomatic },
                })
            }
        };
        out.push(LonelyComponent { column, vertices, lonely_edges, other_edges, cycle });
    }
    Ok(out)
}

/// Orders the unique cycle of a unicyclic component, or returns `None` if it
/// does not alternate lonely and non-lonely edges.
fn extract_cycle(
    g: &Graph,
    adj: &[Vec<EdgeId>],
    vertices: &[VertexId],
    is_lonely: impl Fn(EdgeId) -> bool,
) -> Option<LonelyCycle> {
    // Peel leaves; what remains of a unicyclic graph is its cycle.
    let mut degree: std::collections::HashMap<VertexId, usize> =
        vertices.iter().map(|&v| (v, adj[v].len())).collect();
    let mut removed: HashSet<VertexId> = HashSet::new();
    let mut leaves: Vec<VertexId> = vertices.iter().copied().filter(|v| degree[v] <= 1).collect();
    while let Some(v) = leaves.pop() {
        if !removed.insert(v) {
            continue;
        }
        for &e in &adj[v] {
            let w = g.other_endpoint(e, v);
            if !removed.contains(&w) {
                let d = degree.get_mut(&w).expect("w in component");
                *d -= 1;
                if *d == 1 {
                    leaves.push(w);
                }
            }
        }
    }
    let on_cycle = |e: EdgeId| {
        let (u, v) = g.endpoints(e);
        !removed.contains(&u) && !removed.contains(&v)
    };
    let first = vertices
        .iter()
        .flat_map(|&v| adj[v].iter().copied())
        .filter(|&e| on_cycle(e) && is_lonely(e))
        .min()?;
    let other_edge = |v: VertexId, not: EdgeId| {
        adj[v].iter().copied().find(|&e| e != not && on_cycle(e)).expect("cycle vertex has two cycle edges")
    };
    let (u0, v0) = g.endpoints(first);
    let (u_next, v_next) = (g.other_endpoint(other_edge(u0, first), u0), g.other_endpoint(other_edge(v0, first), v0));
    // Walk away from the endpoint whose onward neighbour has the smaller id.
    let (start, mut cur) = if v_next < u_next { (u0, v0) } else { (v0, u0) };
    let mut cycle = LonelyCycle { vertices: vec![start, cur], edges: vec![first] };
    let mut last = first;
    loop {
        let e = other_edge(cur, last);
        let next = g.other_endpoint(e, cur);
        cycle.edges.push(e);
        if next == start {
            break;
        }
        cycle.vertices.push(next);
        cur = next;
        last = e;
    }
    let alternate = cycle.edges.len().is_multiple_of(2)
        && cycle.edges.iter().enumerate().all(|(i, &e)| is_lonely(e) == (i % 2 == 0));
    alternate.then_some(cycle)
}

/// Colors `bg` strongly with at most `4Δ(B)` colors. Part-A vertices of
/// degree below 3 are padded with pendant vertices, colored, and the padding
/// is dropped from the result, whose edge ids match `bg`.
pub fn color_strong(
    bg: &BipartiteGraph,
    options: &ColorOptions,
) -> Result<(StrongColoring, ColoringTrace), ColorError> {
    if bg.delta_a() > 3 {
        return Err(ColorError::NotInClass { delta_a: bg.delta_a() });
    }
    let (padded, record) = bg.normalize_to_degree3()?;
    let padded = Arc::new(padded);
    let mut matrix = EdgeMatrix::build_initial(padded.clone());
    let mut trace = ColoringTrace::default();
    if options.maximization == Maximization::Eager {
        let (m, log) = observations::maximize_logged(&matrix)?;
        matrix = m;
        trace.presweep_switches = log.len();
    }
    let (mut coloring, assignments) = loop {
        match ColoringRun::new(&matrix)?.run() {
            Ok(done) => break done,
            Err(failure) => match observations::find_violation(&matrix)? {
                Some(v) => {
                    matrix = observations::apply_fix(&matrix, &v)?.0;
                    trace.restarts += 1;
                }
                None => return Err(ColorError::InvariantBreach(failure)),
            },
        }
    };
    let conflicts = oracles::validate_strong(padded.graph(), &coloring).map_err(ColorError::Incomplete)?;
    if !conflicts.is_empty() {
        return Err(ColorError::Invalid(conflicts.len()));
    }
    trace.assignments = assignments;
    trace.final_score = matrix.score()?;
    trace.matrix = Some(matrix);
    coloring.truncate(record.original_edges);
    Ok((coloring, trace))
}

/// Colors every graph of `graphs`, in parallel unless `exec` is sequential.
/// Results keep the input order.
pub fn color_batch(
    graphs: &[BipartiteGraph],
    options: &ColorOptions,
    exec: Execution,
) -> Vec<Result<(StrongColoring, ColoringTrace), ColorError>> {
    par::map(exec, graphs, |bg| color_strong(bg, options))
}

/// Counts for the summary line of a coloring document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ColoringSummary {
    pub colors: usize,
    pub delta: usize,
    pub bound: usize,
    pub restarts: usize,
}

impl ColoringSummary {
    pub fn new(bg: &BipartiteGraph, c: &StrongColoring, restarts: usize) -> Self {
        let delta = bg.delta_b();
        Self { colors: c.distinct_colors(), delta, bound: 4 * delta, restarts }
    }
}

impl fmt::Display for ColoringSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "colors={} delta={} bound={} restarts={}", self.colors, self.delta, self.bound, self.restarts)
    }
}

/// One line `u v hue column` per edge in edge-id order (columns 1-based),
/// then the summary line.
pub fn write_document(g: &Graph, c: &StrongColoring, summary: &ColoringSummary) -> String {
    let mut out = String::new();
    for (e, color) in c.iter() {
        let (u, v) = g.endpoints(e);
        out.push_str(&format!("{} {} {} {}\n", g.label(u), g.label(v), color.hue, color.column + 1));
    }
    out.push_str(&format!("{summary}\n"));
    out
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DocumentError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("edge {u} {v} has no color")]
    Uncovered { u: String, v: String },
}

/// Reads a coloring document against `g`. Comment lines (`#`) and the
/// summary line are skipped; every edge of `g` must be colored exactly once.
pub fn parse_document(g: &Graph, text: &str) -> Result<StrongColoring, DocumentError> {
    let mut c = StrongColoring::new(g.edge_count());
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') || s.starts_with("colors=") {
            continue;
        }
        let err = |message: String| DocumentError::Parse { line, message };
        let tokens: Vec<&str> = s.split_whitespace().collect();
        let [u, v, hue, column] = tokens[..] else {
            return Err(err(format!("expected 4 fields, found {}", tokens.len())));
        };
        let vertex = |l: &str| g.vertex_by_label(l).ok_or_else(|| err(format!("unknown vertex {l:?}")));
        let (u, v) = (vertex(u)?, vertex(v)?);
        let e = g.find_edge(u, v).ok_or_else(|| err("no such edge".to_string()))?;
        let hue: Hue = hue.parse().map_err(err)?;
        let column: usize = column.parse().map_err(|_| err(format!("bad column {column:?}")))?;
        if column == 0 {
            return Err(err("columns start at 1".to_string()));
        }
        if c.get(e).is_some() {
            return Err(err("edge colored twice".to_string()));
        }
        c.set(e, Color { hue, column: column - 1 });
    }
    if let Some(e) = (0..g.edge_count()).find(|&e| c.get(e).is_none()) {
        let (u, v) = g.endpoints(e);
        return Err(DocumentError::Uncovered { u: g.label(u).to_string(), v: g.label(v).to_string() });
    }
    Ok(c)
}
