use std::io;

use thiserror::Error;

/// Errors produced while loading inputs or evaluating operations on them.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: expected two integer vertex ids, got {token:?}")]
    Parse { line: usize, token: String },

    #[error("line {line}: self-loop at vertex {vertex} is not allowed")]
    SelfLoop { line: usize, vertex: u32 },

    #[error("line {line}: expected exactly two columns (weighted edge lists are not supported)")]
    ExtraColumns { line: usize },

    #[error("empty edge list and no explicit vertex count given")]
    EmptyEdgeList,

    #[error("vertex id {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: u32, n: usize },

    #[error("input partitions must cover all n vertices (expected {expected} labels, found {found})")]
    Coverage { expected: usize, found: usize },

    #[error("partitions disagree on vertex count ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },

    #[error("graph has {graph} vertices but partitions have {partitions}")]
    GraphPartitionMismatch { graph: usize, partitions: usize },

    #[error("ensemble must contain at least one partition")]
    EmptyEnsemble,

    #[error("rand distance is undefined for fewer than two vertices")]
    UndefinedRandDistance,

    #[error("normalized distance is undefined for an empty partition")]
    EmptyPartition,

    #[error("threshold {0} outside [0, 1]")]
    LambdaOutOfRange(f64),

    #[error("lambda grid must not be empty")]
    EmptyGrid,

    #[error("perturbation probability {0} outside [0, 1]")]
    EpsilonOutOfRange(f64),

    #[error("edge probabilities must satisfy 0 <= p_out <= p_in <= 1 (p_in={p_in}, p_out={p_out})")]
    InvalidProbability { p_in: f64, p_out: f64 },

    #[error("planted partition needs at least one community of size one")]
    EmptyPlantedSpec,

    #[error("instance with {n} vertices exceeds the cap of {cap} for this operation")]
    TooLarge { n: usize, cap: usize },

    #[error("failed to start worker pool: {0}")]
    WorkerPool(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
