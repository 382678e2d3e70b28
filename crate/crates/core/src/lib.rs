//! Walk entropy of simple graphs.
//!
//! The walk entropy `S(G, beta)` is the Shannon entropy of the distribution
//! on vertices proportional to the diagonal of `exp(beta A)`. It reaches
//! `ln n` exactly when every vertex has the same subgraph centrality. This
//! crate decides walk-regularity exactly, evaluates the diagonal through the
//! spectrum of `A`, and locates every temperature where a non-walk-regular
//! graph still attains maximal entropy.

pub mod cli;
pub mod entropy;
pub mod error;
pub mod exec;
pub mod graph;
pub mod report;
pub mod spectral;
pub mod temperature;
pub mod walks;

pub use entropy::{entropy_scan, is_entropy_maximal, walk_entropy, EntropyReport};
pub use error::{Error, Result};
pub use exec::Parallelism;
pub use graph::{construct_hm, degree_summary, parse_edge_list, DegreeSummary, Graph};
pub use spectral::{
    centrality_diagonal, eigendecompose, taylor_diagonal_oracle, CentralityDiagonal,
    SpectralDecomposition,
};
pub use temperature::{
    class_difference, dominance, find_crossings, verify_counterexample, CrossingReport, Crossings,
    DominanceReport,
};
pub use walks::{closed_walk_table, is_walk_regular, vertex_classes, ExactWalkTable, WalkRegularityVerdict};
