use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use strongcol::bipartite::{bipartition, BipartiteGraph};
use strongcol::colorer::{
    self, color_strong, AvailabilityMinima, ColorError, ColorOptions, ColoringSummary, ColoringTrace, Maximization,
    StrongColoring,
};
use strongcol::generators::{complete_bipartite, random_bipartite, GenSpec};
use strongcol::graph::{Graph, GraphError};
use strongcol::oracles::{self, OracleError};
use strongcol::par::{self, Execution};

use crate::{BenchArgs, BenchFamily, ColorArgs, Family, GenerateArgs};

/// A command failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub const INTERNAL: u8 = 1;
    pub const OUT_OF_CLASS: u8 = 2;
    pub const USAGE: u8 = 3;

    fn new(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        let code = match e {
            GraphError::OddCycle { .. } => Failure::OUT_OF_CLASS,
            _ => Failure::USAGE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<ColorError> for Failure {
    fn from(e: ColorError) -> Self {
        let code = match e {
            ColorError::NotInClass { .. } => Failure::OUT_OF_CLASS,
            _ => Failure::INTERNAL,
        };
        Failure::new(code, e.to_string())
    }
}

type Outcome = Result<(), Failure>;

pub fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected lo..hi, got {s:?}"))?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: usize = lo.trim().parse().map_err(|_| format!("bad lower bound in {s:?}"))?;
    let hi: usize = hi.trim().parse().map_err(|_| format!("bad upper bound in {s:?}"))?;
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok((lo, hi))
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    let read = if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| Failure::new(Failure::USAGE, format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    Graph::parse_edge_list(&read_input(path)?).map_err(|e| Failure::new(Failure::USAGE, format!("{}: {e}", path.display())))
}

fn write_output(path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::new(Failure::USAGE, format!("{}: {e}", p.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::new(Failure::INTERNAL, e.to_string())),
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub n_a: usize,
    pub n_b: usize,
    pub delta_a: usize,
    pub delta_b: usize,
    pub colors: usize,
    pub bound: usize,
    pub restarts: usize,
    pub star_edges: usize,
    pub minima: AvailabilityMinima,
    pub wall_ms: f64,
}

impl RunReport {
    fn new(bg: &BipartiteGraph, c: &StrongColoring, trace: &ColoringTrace, wall_ms: f64) -> Self {
        Self {
            seed: None,
            n_a: bg.part_a().len(),
            n_b: bg.part_b().len(),
            delta_a: bg.delta_a(),
            delta_b: bg.delta_b(),
            colors: c.distinct_colors(),
            bound: 4 * bg.delta_b(),
            restarts: trace.restarts,
            star_edges: c.star_edges(),
            minima: trace.minima(),
            wall_ms,
        }
    }
}

fn options(lazy: bool) -> ColorOptions {
    ColorOptions { maximization: if lazy { Maximization::Lazy } else { Maximization::Eager } }
}

/// Colors `bg`, re-validating the result before reporting success.
fn color_checked(bg: &BipartiteGraph, lazy: bool) -> Result<(StrongColoring, ColoringTrace, f64), Failure> {
    let start = Instant::now();
    let (c, trace) = color_strong(bg, &options(lazy))?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let conflicts = oracles::validate_strong(bg.graph(), &c).map_err(|e| Failure::new(Failure::INTERNAL, e.to_string()))?;
    if !conflicts.is_empty() || c.distinct_colors() > 4 * bg.delta_b() {
        return Err(Failure::new(Failure::INTERNAL, format!("coloring failed validation: {} conflicts", conflicts.len())));
    }
    Ok((c, trace, wall_ms))
}

#[derive(Serialize)]
struct EdgeColor<'a> {
    u: &'a str,
    v: &'a str,
    hue: colorer::Hue,
    column: usize,
}

pub fn color(args: &ColorArgs) -> Outcome {
    let g = read_graph(&args.input)?;
    let bg = bipartition(&g)?;
    let (c, trace, wall_ms) = color_checked(&bg, args.lazy)?;
    let report = RunReport::new(&bg, &c, &trace, wall_ms);
    let text = if args.json {
        let edges: Vec<EdgeColor> = c
            .iter()
            .map(|(e, color)| {
                let (u, v) = g.endpoints(e);
                EdgeColor { u: g.label(u), v: g.label(v), hue: color.hue, column: color.column + 1 }
            })
            .collect();
        let record = serde_json::json!({ "report": report, "coloring": edges });
        format!("{record}\n")
    } else {
        let mut doc = format!(
            "# n_a={} n_b={} delta_a={} delta_b={} star_edges={} wall_ms={:.3}\n",
            report.n_a, report.n_b, report.delta_a, report.delta_b, report.star_edges, report.wall_ms
        );
        doc.push_str(&colorer::write_document(&g, &c, &ColoringSummary::new(&bg, &c, trace.restarts)));
        if args.trace {
            let padded = trace.matrix.as_ref().expect("trace keeps matrix").graph().graph();
            for a in &trace.assignments {
                let (u, v) = padded.endpoints(a.edge);
                doc.push_str(&format!(
                    "# step={} edge={} {} available={} hue={}\n",
                    a.step,
                    padded.label(u),
                    padded.label(v),
                    a.available,
                    a.hue
                ));
            }
        }
        doc
    };
    write_output(args.output.as_deref(), &text)
}

pub fn verify(graph: &Path, coloring: &Path) -> Outcome {
    let g = read_graph(graph)?;
    let c = colorer::parse_document(&g, &read_input(coloring)?)
        .map_err(|e| Failure::new(Failure::USAGE, format!("{}: {e}", coloring.display())))?;
    let conflicts = oracles::validate_strong(&g, &c).map_err(|e| Failure::new(Failure::USAGE, e.to_string()))?;
    let name = |e| {
        let (u, v) = g.endpoints(e);
        format!("{} {}", g.label(u), g.label(v))
    };
    for &(e, f) in &conflicts {
        println!("conflict: {} / {}", name(e), name(f));
    }
    if conflicts.is_empty() {
        println!("ok: {} edges, {} colors", g.edge_count(), c.distinct_colors());
        Ok(())
    } else {
        Err(Failure::new(Failure::INTERNAL, format!("{} conflicting pairs", conflicts.len())))
    }
}

pub fn exact(graph: &Path, limit: usize) -> Outcome {
    let g = read_graph(graph)?;
    match oracles::exact_strong_chromatic_index(&g, limit) {
        Ok(k) => {
            println!("{k}");
            Ok(())
        }
        Err(e @ OracleError::TooLarge { .. }) => Err(Failure::new(Failure::OUT_OF_CLASS, e.to_string())),
        Err(e) => Err(Failure::new(Failure::INTERNAL, e.to_string())),
    }
}

pub fn generate(args: &GenerateArgs) -> Outcome {
    let spec = match args.family {
        Family::Random => GenSpec::RandomBipartite { n_a: args.na, n_b: args.nb, d_a: args.da, d_b: args.db, seed: args.seed },
        Family::Complete => GenSpec::CompleteBipartite { a: args.na, b: args.nb },
        Family::En => GenSpec::ErdosNesetril { delta: args.delta },
        Family::Subdivision => {
            let path = args.input.as_deref().ok_or_else(|| Failure::new(Failure::USAGE, "--input is required"))?;
            GenSpec::Subdivision { input: read_graph(path)? }
        }
    };
    let g = spec.generate().map_err(|e| Failure::new(Failure::USAGE, e.to_string()))?;
    write_output(args.output.as_deref(), &g.to_edge_list())
}

struct BenchRow {
    delta: usize,
    reports: Vec<Result<RunReport, String>>,
}

pub fn bench(args: &BenchArgs) -> Outcome {
    let exec = if args.sequential { Execution::Sequential } else { Execution::Parallel };
    let jobs: Vec<(usize, u64)> = (args.delta_range.0..=args.delta_range.1)
        .flat_map(|d| (0..args.count as u64).map(move |i| (d, i)))
        .collect();
    let results = par::map(exec, &jobs, |&(delta, i)| {
        let seed = args.seed + i;
        let bg = match args.family {
            BenchFamily::Random => random_bipartite(args.na, args.nb, 3, delta, seed),
            BenchFamily::Complete => complete_bipartite(delta, 3),
        };
        color_checked(&bg, args.lazy)
            .map(|(c, trace, ms)| RunReport { seed: Some(seed), ..RunReport::new(&bg, &c, &trace, ms) })
            .map_err(|f| format!("delta={delta} seed={seed}: {}", f.message))
    });
    let mut rows: Vec<BenchRow> = Vec::new();
    for (&(delta, _), r) in jobs.iter().zip(results) {
        match rows.last_mut() {
            Some(row) if row.delta == delta => row.reports.push(r),
            _ => rows.push(BenchRow { delta, reports: vec![r] }),
        }
    }

    let mut out = String::new();
    let mut failures = Vec::new();
    if args.json {
        for row in &rows {
            for r in &row.reports {
                match r {
                    Ok(report) => out.push_str(&format!("{}\n", serde_json::to_string(report).expect("report serializes"))),
                    Err(e) => failures.push(e.clone()),
                }
            }
        }
    } else {
        out.push_str("delta instances max_colors bound ok mean_restarts star_fraction max_ms\n");
        for row in &rows {
            let ok: Vec<&RunReport> = row.reports.iter().filter_map(|r| r.as_ref().ok()).collect();
            failures.extend(row.reports.iter().filter_map(|r| r.as_ref().err().cloned()));
            let n = ok.len().max(1) as f64;
            let max_colors = ok.iter().map(|r| r.colors).max().unwrap_or(0);
            let bound = 4 * row.delta;
            let all_ok = ok.len() == row.reports.len() && ok.iter().all(|r| r.colors <= r.bound);
            out.push_str(&format!(
                "{} {} {} {} {} {:.3} {:.3} {:.3}\n",
                row.delta,
                row.reports.len(),
                max_colors,
                bound,
                all_ok,
                ok.iter().map(|r| r.restarts).sum::<usize>() as f64 / n,
                ok.iter().filter(|r| r.star_edges > 0).count() as f64 / n,
                ok.iter().map(|r| r.wall_ms).fold(0.0, f64::max),
            ));
        }
    }
    write_output(None, &out)?;
    match failures.first() {
        None => Ok(()),
        Some(first) => Err(Failure::new(Failure::INTERNAL, format!("{} instances failed, first: {first}", failures.len()))),
    }
}
