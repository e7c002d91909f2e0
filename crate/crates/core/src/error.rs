use alloc::string::String;
use alloc::vec::Vec;

use crate::multigraph::{EdgeId, VertexId};

/// Errors reported by the solvers, oracles and graph primitives.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(EdgeId),
    #[error("vertex {vertex} out of range (graph has {n} vertices)")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("invalid terminal pair ({0}, {1})")]
    InvalidTerminalPair(VertexId, VertexId),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("instance is infeasible: a terminal-separating cut has only {cut_size} edges (p = {p})")]
    Infeasible { cut_size: usize, p: usize },
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("cut enumeration limit of {limit} exceeded")]
    CutLimitExceeded { limit: usize },
    #[error("minimum cut is {found}, expected {expected}")]
    MinCutMismatch { expected: u64, found: u64 },
    #[error("crossing minimum cuts {first:?} and {second:?}")]
    CrossingCuts {
        first: Vec<VertexId>,
        second: Vec<VertexId>,
    },
    #[error("solution is infeasible")]
    InfeasibleSolution,
}

pub type Result<T> = core::result::Result<T, Error>;
