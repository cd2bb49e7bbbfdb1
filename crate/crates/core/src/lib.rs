//! Learning-driven local search for partitioning items into groups, with
//! graph k-coloring as the worked instantiation.
//!
//! * [`graph`]: undirected graphs and DIMACS `.col` parsing.
//! * [`grouping`]: assignments, the grouping-problem contract and steepest
//!   descent.
//! * [`coloring`]: conflict counting and gain-matrix move evaluation.
//! * [`learning`]: the probability matrix with its selection, reinforcement
//!   and smoothing operators.
//! * [`rls`]: the generation loop, ablation variants and the decreasing-k
//!   chromatic number search.
//!
//! ```
//! use rls_core::{graph::Graph, rls::{solve_k, RlsConfig}};
//!
//! let c5 = Graph::parse_dimacs("p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n").unwrap();
//! let run = solve_k(&c5, 3, &RlsConfig { seed: 7, ..RlsConfig::default() });
//! assert!(run.legal_found);
//! ```

pub mod coloring;
pub mod graph;
pub mod grouping;
pub mod learning;
pub mod rls;

pub use coloring::{evaluate, ColoringState, KColoring};
pub use graph::Graph;
pub use grouping::{descent, Assignment, GroupingProblem, SearchState};
pub use learning::{LearningParams, ProbabilityMatrix, SelectionStrategy};
pub use rls::{solve_gcp, solve_k, GcpResult, RlsConfig, RunResult, Variant};
