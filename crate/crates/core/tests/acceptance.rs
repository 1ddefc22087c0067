//! End-to-end acceptance sweep. Prints one PASS/FAIL line per criterion and
//! fails if any criterion fails.

mod common;

use std::collections::HashSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use strongcol::bipartite::BipartiteGraph;
use strongcol::colorer::{color_strong, ColorOptions, ColoringTrace, Hue, Maximization, Step, StrongColoring};
use strongcol::generators::{all_degree_capped_graphs, complete_bipartite, erdos_nesetril, random_bipartite, subdivide_1};
use strongcol::matrix::EdgeMatrix;
use strongcol::observations::maximize;
use strongcol::oracles::{
    exact_strong_chromatic_index, max_properly_k_colorable_subgraph, max_type1_over_matrices, validate_strong,
    DEFAULT_EDGE_LIMIT, DEFAULT_MATRIX_BUDGET,
};
use strongcol::par::{self, Execution};

const DELTAS: std::ops::RangeInclusive<usize> = 3..=10;
const GRAPHS_PER_DELTA: usize = 200;
const MAX_SIDE: usize = 200;
const MAX_SECONDS_PER_INSTANCE: f64 = 1.0;
const SANDWICH_DRAWS: usize = 1000;
const SANDWICH_MAX_EDGES: usize = 12;
const STRUCTURE_INSTANCES: usize = 500;
const EQUIVALENCE_VERTICES: usize = 6;

struct Verdict {
    id: usize,
    name: &'static str,
    failures: Vec<String>,
    detail: String,
}

impl Verdict {
    fn line(&self) -> String {
        let status = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        let mut s = format!("C{} {status} {}: {}", self.id, self.name, self.detail);
        if let Some(first) = self.failures.first() {
            s.push_str(&format!(" ({} failures, first: {first})", self.failures.len()));
        }
        s
    }
}

struct Run {
    label: String,
    bg: BipartiteGraph,
    eager: (StrongColoring, ColoringTrace),
    eager_time: Duration,
    lazy_restarts: usize,
}

fn sweep_instances() -> Vec<(usize, u64)> {
    DELTAS.flat_map(|d| (0..GRAPHS_PER_DELTA as u64).map(move |i| (d, 1000 * d as u64 + i))).collect()
}

fn run_instance(&(delta, seed): &(usize, u64)) -> Result<Run, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_a = rng.gen_range(1..=MAX_SIDE);
    let n_b = rng.gen_range(1..=MAX_SIDE);
    let label = format!("delta={delta} seed={seed} n_a={n_a} n_b={n_b}");
    let bg = random_bipartite(n_a, n_b, 3, delta, seed);
    let start = Instant::now();
    let eager = color_strong(&bg, &ColorOptions::default()).map_err(|e| format!("{label}: {e}"))?;
    let eager_time = start.elapsed();
    let lazy = color_strong(&bg, &ColorOptions { maximization: Maximization::Lazy }).map_err(|e| format!("{label}: lazy: {e}"))?;
    Ok(Run { label, bg, eager, eager_time, lazy_restarts: lazy.1.restarts })
}

fn criteria_on_sweep(runs: &[Result<Run, String>]) -> Vec<Verdict> {
    let mut c1 = Verdict { id: 1, name: "4Δ bound on random (3,Δ) graphs", failures: vec![], detail: String::new() };
    let mut c2 = Verdict { id: 2, name: "Steps 1-3 within 3Δ, no * before Step 4", failures: vec![], detail: String::new() };
    let mut c6 = Verdict { id: 6, name: "availability minima", failures: vec![], detail: String::new() };
    let mut c8 = Verdict { id: 8, name: "lazy restarts ≤ |A|²", failures: vec![], detail: String::new() };
    let mut slowest = 0f64;
    let mut max_restarts = 0;
    let mut star_runs = 0;
    let mut minima = [usize::MAX; 4];
    for run in runs {
        let run = match run {
            Ok(r) => r,
            Err(e) => {
                c1.failures.push(e.clone());
                continue;
            }
        };
        let (c, trace) = &run.eager;
        let delta = run.bg.delta_b();
        let secs = run.eager_time.as_secs_f64();
        slowest = slowest.max(secs);
        match validate_strong(run.bg.graph(), c) {
            Ok(conflicts) if conflicts.is_empty() => {}
            Ok(conflicts) => c1.failures.push(format!("{}: {} conflicts", run.label, conflicts.len())),
            Err(e) => c1.failures.push(format!("{}: {e}", run.label)),
        }
        if c.distinct_colors() > 4 * delta {
            c1.failures.push(format!("{}: {} colors > 4Δ = {}", run.label, c.distinct_colors(), 4 * delta));
        }
        if secs >= MAX_SECONDS_PER_INSTANCE {
            c1.failures.push(format!("{}: {secs:.3}s", run.label));
        }

        let early: Vec<_> = trace.assignments.iter().filter(|a| matches!(a.step, Step::Type1 | Step::Paired | Step::Type3)).collect();
        if early.iter().any(|a| a.hue == Hue::Star) {
            c2.failures.push(format!("{}: * before Step 4", run.label));
        }
        let matrix = trace.matrix.as_ref().expect("trace keeps matrix");
        let early_colors: HashSet<_> = early.iter().map(|a| (a.hue, matrix.column(a.edge))).collect();
        if early_colors.len() > 3 * delta {
            c2.failures.push(format!("{}: {} colors after Step 3 > 3Δ", run.label, early_colors.len()));
        }
        if c.star_edges() > 0 {
            star_runs += 1;
        }

        let m = trace.minima();
        for (slot, (value, bound, what)) in
            [(m.paired, 2, "Step 2"), (m.type3, 1, "Step 3"), (m.cycle, 1, "cycle phase"), (m.tree, 1, "tree phase")]
                .into_iter()
                .enumerate()
        {
            if let Some(v) = value {
                minima[slot] = minima[slot].min(v);
                if v < bound {
                    c6.failures.push(format!("{}: {what} minimum {v} < {bound}", run.label));
                }
            }
        }

        let a = run.bg.part_a().len();
        max_restarts = max_restarts.max(run.lazy_restarts);
        if run.lazy_restarts > a * a {
            c8.failures.push(format!("{}: {} restarts > {}", run.label, run.lazy_restarts, a * a));
        }
    }
    c1.detail = format!("{} instances, slowest {slowest:.3}s, {star_runs} used *", runs.len());
    c2.detail = format!("{} instances", runs.len());
    let show = |v: usize| if v == usize::MAX { "-".to_string() } else { v.to_string() };
    c6.detail = format!(
        "minima step2={} step3={} cycle={} tree={}",
        show(minima[0]),
        show(minima[1]),
        show(minima[2]),
        show(minima[3])
    );
    c8.detail = format!("max restarts {max_restarts}");
    vec![c1, c2, c6, c8]
}

fn sandwich() -> Verdict {
    let mut v = Verdict { id: 3, name: "exact ≤ colors ≤ 4Δ(B) on small graphs", failures: vec![], detail: String::new() };
    let draws: Vec<u64> = (0..SANDWICH_DRAWS as u64).collect();
    let results = par::map(Execution::Parallel, &draws, |&seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5a5a);
        let bg = random_bipartite(rng.gen_range(1..=5), rng.gen_range(1..=6), 3, rng.gen_range(1..=4), seed);
        let g = bg.graph();
        if g.edge_count() == 0 || g.edge_count() > SANDWICH_MAX_EDGES || !g.is_connected() {
            return None;
        }
        let exact = exact_strong_chromatic_index(g, DEFAULT_EDGE_LIMIT).unwrap();
        let used = color_strong(&bg, &ColorOptions::default()).map(|(c, _)| c.distinct_colors());
        Some((seed, exact, used, 4 * bg.delta_b()))
    });
    let mut kept = 0;
    for (seed, exact, used, bound) in results.into_iter().flatten() {
        kept += 1;
        match used {
            Ok(used) if exact <= used && used <= bound => {}
            Ok(used) => v.failures.push(format!("seed {seed}: exact {exact}, used {used}, bound {bound}")),
            Err(e) => v.failures.push(format!("seed {seed}: {e}")),
        }
    }
    if kept == 0 {
        v.failures.push("no instance kept".into());
    }
    v.detail = format!("{kept} of {SANDWICH_DRAWS} draws kept");
    v
}

fn tight_fixtures() -> Verdict {
    let mut v = Verdict { id: 4, name: "exact index on tight fixtures", failures: vec![], detail: String::new() };
    let cases = [
        ("K3,3", complete_bipartite(3, 3).into_graph(), 9),
        ("C5", erdos_nesetril(2).unwrap(), 5),
        ("extremal Δ=3", erdos_nesetril(3).unwrap(), 10),
        ("extremal Δ=4", erdos_nesetril(4).unwrap(), 20),
    ];
    let mut shown = Vec::new();
    for (name, g, expected) in cases {
        let got = exact_strong_chromatic_index(&g, g.edge_count().max(DEFAULT_EDGE_LIMIT)).unwrap();
        shown.push(format!("{name}={got}"));
        if got != expected {
            v.failures.push(format!("{name}: {got} ≠ {expected}"));
        }
    }
    v.detail = shown.join(" ");
    v
}

fn structure() -> Verdict {
    let mut v = Verdict { id: 5, name: "lonely components unicyclic and alternate", failures: vec![], detail: String::new() };
    let seeds: Vec<u64> = (0..STRUCTURE_INSTANCES as u64).collect();
    let results = par::map(Execution::Parallel, &seeds, |&seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc0ffee);
        let d = rng.gen_range(3..=8);
        // Few B-vertices relative to 3·n_A/Δ keeps the graphs dense, which is
        // where lonely cycles show up.
        let n_a = rng.gen_range(1..=60);
        let n_b = rng.gen_range(1..=(3 * n_a / d).max(1));
        let bg = random_bipartite(n_a, n_b, 3, d, seed);
        let padded = Arc::new(bg.normalize_to_degree3().unwrap().0);
        let m = maximize(&EdgeMatrix::build_initial(padded)).unwrap();
        let facts = common::lonely_structure(&m);
        let cycles = facts.iter().filter(|f| f.cycles == 1).count();
        let bad: Vec<String> = facts
            .iter()
            .filter(|f| f.cycles > 1 || f.alternate == Some(false))
            .map(|f| format!("seed {seed} column {}: {} cycles, alternate {:?}", f.column, f.cycles, f.alternate))
            .collect();
        (facts.len(), cycles, bad)
    });
    let (mut comps, mut cycles) = (0, 0);
    for (n, c, bad) in results {
        comps += n;
        cycles += c;
        v.failures.extend(bad);
    }
    v.detail = format!("{STRUCTURE_INSTANCES} instances, {comps} components, {cycles} with a cycle");
    v
}

fn equivalence() -> Verdict {
    let mut v = Verdict { id: 7, name: "max Type 1 of subdivision = max 2-colorable subgraph", failures: vec![], detail: String::new() };
    let graphs = all_degree_capped_graphs(EQUIVALENCE_VERTICES, 3);
    let results = par::map(Execution::Parallel, &graphs, |g| {
        let t1 = max_type1_over_matrices(&subdivide_1(g), DEFAULT_MATRIX_BUDGET).unwrap();
        let (k2, _) = max_properly_k_colorable_subgraph(g, 2, EQUIVALENCE_VERTICES).unwrap();
        (t1 == k2).then_some(()).ok_or_else(|| format!("{:?}: type1 {t1}, 2-colorable {k2}", g.to_edge_list()))
    });
    v.failures = results.into_iter().filter_map(Result::err).collect();
    v.detail = format!("{} graphs on {EQUIVALENCE_VERTICES} vertices", graphs.len());
    v
}

#[test]
fn acceptance() {
    let instances = sweep_instances();
    let runs = par::map(Execution::Parallel, &instances, run_instance);
    let mut verdicts = criteria_on_sweep(&runs);
    verdicts.push(sandwich());
    verdicts.push(tight_fixtures());
    verdicts.push(structure());
    verdicts.push(equivalence());
    verdicts.sort_by_key(|v| v.id);
    for v in &verdicts {
        println!("{}", v.line());
    }
    let failed: Vec<usize> = verdicts.iter().filter(|v| !v.failures.is_empty()).map(|v| v.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
