//! Edge partitions of graphs into two forests `F1`, `F2` and a bounded-degree
//! remainder `H`.
//!
//! The class of graphs handled here is parameterised by an integer
//! `alpha >= 5`: every member either has a vertex of degree at most one, an
//! edge `uv` with `d(u) + d(v) <= alpha`, or a cycle on which every other
//! vertex has degree exactly two (a 2-alternating cycle). Any such graph splits
//! into `F1 ∪ F2 ∪ H` where
//!
//! * `F1` and `F2` are forests with `d_Fi(v) <= max(2, ceil((d(v) - alpha + 6) / 2))`,
//! * `H` has maximum degree at most `alpha - 5`.
//!
//! [`decompose`] builds that partition by peeling reducible configurations off
//! the graph and then re-inserting them in reverse order. When the graph runs
//! out of configurations it returns the stuck subgraph as a witness that the
//! input lies outside the class.

pub mod cli;
pub mod decompose;
pub mod dsu;
pub mod generate;
pub mod graph;
pub mod structure;
pub mod verify;

pub use decompose::{decompose, forest_cap, DecomposeError, ReductionStep};
pub use graph::{Edge, EdgeLabel, EdgePartition, Graph, GraphError, Vertex};
pub use structure::{find_configuration, AltCycle, ClassParams, Configuration, ParamsError};
pub use verify::{verify_partition, VerificationReport, Violation};
