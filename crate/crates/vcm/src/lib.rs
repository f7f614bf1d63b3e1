//! Pairwise vertex connectivity scoring for weighted directed graphs.
//!
//! The central measure propagates connectivity strength through a BFS level
//! graph from a source vertex, splitting each vertex's score across its
//! out-edges in proportion to edge weight and attenuating (or amplifying)
//! per level by a user factor `alpha`. The whole query runs in O(V+E).
//! Four classical proximity baselines (truncated Katz, communicability,
//! max-flow, escape probability) and ranking/sweep/comparison tooling are
//! included.

pub mod analysis;
pub mod baselines;
pub mod engine;
pub mod graph;
pub mod ingest;
pub mod level;

pub use analysis::{
    alpha_sweep, compare_methods, rank_from_source, CompareReport, Method, MethodOutcome,
    MethodParams, PairOverlap, RankEntry, SweepTable,
};
pub use engine::{path_sum_oracle, vcm, vcm_all_targets, ScoreVector, VcmParams};
pub use graph::{build_graph, Edge, Graph, VertexId};
pub use ingest::{aggregate_pairs, load_edge_list, write_edge_list, EdgeRecord, EventPairLog};
pub use level::LevelGraph;

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("edge {line}: weight {weight} for {src}->{dst} must be finite and > 0")]
    InvalidWeight {
        line: usize,
        src: String,
        dst: String,
        weight: f64,
    },
    #[error("edge {line}: empty vertex label")]
    EmptyLabel { line: usize },
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("vertex index {index} out of range (graph has {count} vertices)")]
    VertexOutOfRange { index: u32, count: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cannot relocate unreachable target {label:?}")]
    UnreachableTarget { label: String },
    #[error("path oracle limited to {limit} vertices, graph has {vertices}")]
    OracleSize { vertices: usize, limit: usize },
    #[error("baseline not available at this scale: graph has {vertices} vertices, limit {limit}")]
    ScaleLimit { vertices: usize, limit: usize },
    #[error("source and target must differ")]
    IdenticalEndpoints,
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
