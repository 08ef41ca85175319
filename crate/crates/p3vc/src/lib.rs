//! Solver and kernelization toolkit for the 3-path vertex cover problem:
//! given a graph `G` and a budget `k`, decide whether some set of at most
//! `k` vertices meets every path on three vertices, i.e. whether deleting
//! the set leaves a graph of maximum degree one.
//!
//! The pieces:
//!
//! * [`graph`] — graph type, DIMACS I/O, 3-path search and packing,
//!   structure detection.
//! * [`solver`] — branch-and-reduce decision procedure with certificates,
//!   running in `O*(1.7485^k)` and polynomial space.
//! * [`kernel`] — crown-style kernelization to 12k vertices (simple mode)
//!   or 5k vertices (crucial mode).
//! * [`oracle`] — small exact reference solvers used for cross-checking.
//! * [`recurrence`] — branching-factor computation for branch vectors.
//! * [`matching`] — bipartite maximum matching (Hopcroft-Karp), the engine
//!   behind crown detection.
//! * [`cli`] — the `p3vc` command-line front end.

pub mod cli;
pub mod graph;
pub mod kernel;
pub mod matching;
pub mod oracle;
pub mod recurrence;
pub mod solver;

pub use graph::{Graph, IdMap, Packing, ParseError, Path3, Vertex, VertexSet};
pub use kernel::{kernelize, KernelMode, KernelOutcome, KernelResult};
pub use solver::{solve, solve_with_options, verify_cover, SolveOptions, SolveOutcome, SolveStats};
