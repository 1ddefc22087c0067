//! Strong edge-coloring of (3,Δ)-bipartite graphs with at most 4Δ colors.
//!
//! The pipeline is: [`graph`] parsing, [`bipartite::bipartition`], padding to
//! degree 3, the [`matrix`] description of the graph, local maximization in
//! [`observations`], and the four-step procedure in [`colorer`]. [`oracles`]
//! holds brute-force checkers and [`generators`] the instance families.

pub mod bipartite;
pub mod colorer;
pub mod fixtures;
pub mod generators;
pub mod graph;
pub mod matrix;
pub mod observations;
pub mod oracles;
pub mod par;
