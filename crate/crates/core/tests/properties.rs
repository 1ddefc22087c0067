mod common;

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use proptest::prelude::*;
use strongcol::bipartite::BipartiteGraph;
use strongcol::colorer::{color_strong, ColorOptions, Hue, Maximization, Step, StrongColoring};
use strongcol::generators::random_bipartite;
use strongcol::graph::Graph;
use strongcol::matrix::EdgeMatrix;
use strongcol::observations::{apply_fix, find_violation, maximize};
use strongcol::oracles;

use common::{kinds, lonely_structure, naive_conflicts, naive_visible, scan_violations, Kind};

fn arb_graph() -> impl Strategy<Value = Graph> {
    (2usize..=7).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut g = Graph::with_vertices(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] && g.edge_count() < 12 {
                        g.add_edge(u, v).unwrap();
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

/// A (3,Δ)-bipartite graph padded so every part-A vertex has degree 3.
fn arb_padded(max_a: usize, max_b: usize) -> impl Strategy<Value = BipartiteGraph> {
    (1..=max_a, 1..=max_b, 3usize..=6, any::<u64>())
        .prop_map(|(n_a, n_b, d, seed)| random_bipartite(n_a, n_b, 3, d, seed).normalize_to_degree3().unwrap().0)
}

/// A padded graph together with a matrix scrambled by random switches.
fn arb_matrix(max_a: usize, max_b: usize) -> impl Strategy<Value = EdgeMatrix> {
    (arb_padded(max_a, max_b), proptest::collection::vec((any::<usize>(), any::<usize>(), any::<usize>()), 0..40))
        .prop_map(|(bg, switches)| {
            let bg = Arc::new(bg);
            let mut m = EdgeMatrix::build_initial(bg.clone());
            let rows = bg.part_b();
            for (r, c1, c2) in switches {
                if rows.is_empty() || m.columns() == 0 {
                    break;
                }
                let cols = m.columns();
                m.switch_in_place(rows[r % rows.len()], c1 % cols, c2 % cols).unwrap();
            }
            m
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn visibility_is_symmetric_and_matches_definition(g in arb_graph()) {
        for e in g.edge_ids() {
            for f in g.edge_ids() {
                let v = g.visible(e, f).unwrap();
                prop_assert_eq!(v, g.visible(f, e).unwrap());
                prop_assert_eq!(v, naive_visible(&g, e, f));
            }
        }
    }

    #[test]
    fn no_common_neighbour_means_no_visibility(bg in arb_padded(8, 8)) {
        let g = bg.graph();
        prop_assume!(g.edge_count() <= 30);
        for &a0 in bg.part_a() {
            for &a1 in bg.part_a() {
                let n0: HashSet<_> = g.neighbors(a0).collect();
                if a0 == a1 || g.neighbors(a1).any(|b| n0.contains(&b)) {
                    continue;
                }
                for &e in g.incident(a0) {
                    for &f in g.incident(a1) {
                        prop_assert!(!g.visible(e, f).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn padding_round_trip(n_a in 1usize..15, n_b in 1usize..15, d_a in 1usize..=3, d_b in 1usize..6, seed in any::<u64>()) {
        let bg = random_bipartite(n_a, n_b, d_a, d_b, seed);
        let (padded, record) = bg.normalize_to_degree3().unwrap();
        for &a in padded.part_a() {
            prop_assert_eq!(padded.graph().degree(a), 3);
        }
        for &b in &record.added_b_vertices {
            prop_assert_eq!(padded.graph().degree(b), 1);
        }
        let back = padded.strip_padding(&record);
        prop_assert_eq!(back.graph().to_edge_list(), bg.graph().to_edge_list());
        prop_assert_eq!(back.sides(), bg.sides());
    }

    #[test]
    fn switches_keep_rows_and_bound_score(m in arb_matrix(10, 8)) {
        let bg = m.graph();
        for &b in bg.part_b() {
            let row: BTreeSet<_> = m.row(b).unwrap().iter().flatten().copied().collect();
            let incident: BTreeSet<_> = bg.graph().incident(b).iter().copied().collect();
            prop_assert_eq!(row, incident);
        }
        let s = m.score().unwrap();
        prop_assert!(s.t1 + s.t2 <= bg.part_a().len());
    }

    #[test]
    fn violation_search_agrees_with_pair_scan(m in arb_matrix(10, 8)) {
        let scanned = scan_violations(&m);
        prop_assert!(!scanned.contains("type1-pair"));
        match find_violation(&m).unwrap() {
            Some(v) => {
                prop_assert!(!scanned.is_empty());
                let before = m.score().unwrap();
                let (_, after) = apply_fix(&m, &v).unwrap();
                prop_assert!(after > before);
            }
            None => prop_assert!(scanned.is_empty(), "missed {:?}", scanned),
        }
    }

    #[test]
    fn maximized_matrices_satisfy_every_condition(m in arb_matrix(12, 10)) {
        let out = maximize(&m).unwrap();
        prop_assert!(out.score().unwrap() >= m.score().unwrap());
        prop_assert!(scan_violations(&out).is_empty());
        prop_assert_eq!(&maximize(&out).unwrap(), &out);
        for c in lonely_structure(&out) {
            prop_assert_eq!(c.doubly_paired, 0);
            prop_assert!(c.cycles <= 1);
            prop_assert_ne!(c.alternate, Some(false));
        }
    }

    #[test]
    fn maximized_score_is_below_global_maximum(m in arb_matrix(4, 4)) {
        let best = match oracles::max_score_over_matrices(m.graph(), 200_000) {
            Ok(best) => best,
            Err(_) => return Ok(()),
        };
        prop_assert!(maximize(&m).unwrap().score().unwrap() <= best);
    }

    #[test]
    fn colorings_are_strong_and_within_bound(
        n_a in 1usize..25, n_b in 1usize..15, d in 3usize..8, seed in any::<u64>(), lazy in any::<bool>()
    ) {
        let bg = random_bipartite(n_a, n_b, 3, d, seed);
        let maximization = if lazy { Maximization::Lazy } else { Maximization::Eager };
        let (c, trace) = color_strong(&bg, &ColorOptions { maximization }).unwrap();
        prop_assert!(naive_conflicts(bg.graph(), &c).is_empty());
        prop_assert!(c.is_complete());
        prop_assert!(c.distinct_colors() <= 4 * bg.delta_b());
        prop_assert!(trace.restarts <= bg.part_a().len().pow(2));
        if !lazy {
            prop_assert_eq!(trace.restarts, 0);
        }

        let m = trace.matrix.clone().unwrap();
        let (padded, _) = bg.normalize_to_degree3().unwrap();
        prop_assert_eq!(m.graph().graph().to_edge_list(), padded.graph().to_edge_list());
        let k = kinds(&m);
        let lonely: HashSet<_> = k.values().filter_map(|t| match t { Kind::Two { lonely, .. } => Some(*lonely), _ => None }).collect();

        // Replay: each prefix is a strong partial coloring whose columns
        // follow the matrix; `*` only on lonely edges in the last step.
        let mut partial = StrongColoring::new(padded.graph().edge_count());
        let mut before_last_step = HashSet::new();
        for a in &trace.assignments {
            partial.set(a.edge, strongcol::colorer::Color { hue: a.hue, column: m.column(a.edge) });
            prop_assert!(oracles::partial_conflicts(padded.graph(), &partial).is_empty());
            prop_assert!(a.available.contains(a.hue));
            if a.hue == Hue::Star {
                prop_assert!(matches!(a.step, Step::CyclePhase | Step::TreePhase));
                prop_assert!(lonely.contains(&a.edge));
            }
            if matches!(a.step, Step::Type1 | Step::Paired | Step::Type3) {
                before_last_step.insert((a.hue, m.column(a.edge)));
            }
        }
        prop_assert!(before_last_step.len() <= 3 * m.columns());
        for (e, color) in c.iter() {
            prop_assert_eq!(color.column, m.column(e));
        }

        let cyclic = lonely_structure(&m).iter().filter(|f| f.cycles == 1).count();
        let cycle_stars = trace.assignments.iter().filter(|a| a.step == Step::CyclePhase && a.hue == Hue::Star).count();
        prop_assert_eq!(cycle_stars, cyclic);

        let minima = trace.minima();
        prop_assert!(minima.paired.is_none_or(|n| n >= 2));
        prop_assert!(minima.type3.is_none_or(|n| n >= 1));
        prop_assert!(minima.cycle.is_none_or(|n| n >= 1));
        prop_assert!(minima.tree.is_none_or(|n| n >= 1));
    }
}
