use thiserror::Error;

use crate::density::DensityWitness;
use crate::digraph::{ArcId, VertexId};
use crate::hall::HallViolation;

pub type Result<T> = std::result::Result<T, NdtError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NdtError {
    #[error("vertex {vertex} out of range for a digraph with {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },

    #[error("arc {arc} out of range for a digraph with {m} arcs")]
    ArcOutOfRange { arc: ArcId, m: usize },

    #[error("arc {arc} is a loop at vertex {vertex}")]
    Loop { arc: ArcId, vertex: VertexId },

    #[error("need at least {needed} vertices, got {got}")]
    TooFewVertices { needed: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed flow network: {0}")]
    MalformedNetwork(String),

    #[error("vertex {vertex} has in-degree {in_degree}, bound is {bound}")]
    InDegreeExceeded {
        vertex: VertexId,
        in_degree: usize,
        bound: usize,
    },

    #[error("vertex set {:?} has density {} above the bound {bound}", witness.vertices, witness.ratio)]
    DensityExceeded {
        witness: DensityWitness,
        bound: crate::Rational,
    },

    #[error("Hall-type condition fails on {:?} with deficiency {}", .0.set, .0.deficiency)]
    HallViolated(HallViolation),

    #[error("no admissible arc out of source {source_vertex} (extraction dead end)")]
    DeadEnd { source_vertex: VertexId },

    #[error("case d = {d} > k = {k} is open; only exhaustive search (oracle) is available")]
    Unsupported { k: usize, d: usize },

    #[error("oracle budget exceeded: {what} is {actual}, limit {limit}")]
    BudgetExceeded {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("oracle time limit reached before the search completed")]
    TimeLimit,

    #[error("precondition violated: {0}")]
    Precondition(String),
}
