use thiserror::Error;

use crate::vset::Vertex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("vertex {vertex} out of range (graph has {n} vertices)")]
    VertexOutOfRange { vertex: Vertex, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),

    #[error("graph is disconnected: no path between {0} and {1}")]
    Disconnected(Vertex, Vertex),

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("not a tree: {0}")]
    NotTree(String),

    #[error("not a cactus: {0}")]
    NotCactus(String),

    #[error("invalid interval representation: {0}")]
    BadInterval(String),

    #[error("edge-union property fails on edge {0}-{1}")]
    EdgeUnionViolated(Vertex, Vertex),

    #[error("graph diameter is {0}, expected 2")]
    DiameterNotTwo(u32),

    #[error("vertex set does not cover edge {0}-{1}")]
    NotACover(Vertex, Vertex),

    #[error("exact vertex cover exceeds budget {0}")]
    CoverBudgetExceeded(usize),

    #[error("teaching map has {got} entries, concept class has {expected}")]
    MapSizeMismatch { expected: usize, got: usize },

    #[error("concept class error: {0}")]
    ConceptClass(String),

    #[error("ground set of {0} elements is too large for the exact solver (max 128)")]
    GroundTooLarge(usize),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid set cover: {0}")]
    InvalidCover(String),

    #[error("assignment does not satisfy clause {0}")]
    Unsatisfied(usize),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("no teaching set defined for ball class {0}")]
    UndefinedBall(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
