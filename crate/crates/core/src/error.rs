use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("no {degree}-regular graph on {vertices} vertices: {reason}")]
    InfeasibleDegree {
        vertices: usize,
        degree: usize,
        reason: &'static str,
    },
    #[error("gave up generating a simple {degree}-regular graph on {vertices} vertices after {attempts} pairings")]
    GenerationFailed {
        vertices: usize,
        degree: usize,
        attempts: usize,
    },
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("vertex {vertex} out of range for a graph with {num_vertices} vertices")]
    VertexOutOfRange { vertex: usize, num_vertices: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("edge weight {0} is negative or not finite")]
    InvalidWeight(f64),
    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("partition entries must be +1 or -1, found {0}")]
    InvalidSign(i8),
    #[error("phase {index} has modulus {modulus}, expected 1")]
    NonUnitPhase { index: usize, modulus: f64 },
    #[error("state norm is {0}, expected 1")]
    NotNormalized(f64),
    #[error("relaxation offset undefined for q={q}, m={m}: |ln(ln 2)| / 2^(m-q) exceeds 1")]
    OffsetDomain { q: u32, m: u32 },
    #[error("invalid relaxation parameters: {0}")]
    InvalidRelaxation(String),
    #[error("invalid ansatz layout: {0}")]
    InvalidLayout(String),
    #[error("invalid Pauli string: {0}")]
    InvalidPauli(String),
    #[error("invalid optimizer configuration: {0}")]
    InvalidConfig(String),
    #[error("graph has {vertices} vertices, exhaustive search is limited to {limit}; use the Goemans-Williamson baseline instead")]
    GraphTooLarge { vertices: usize, limit: usize },
    #[error("baseline cut must be positive, got {0}")]
    NonPositiveBaseline(f64),
    #[error("{0}")]
    InvalidArgument(String),
}
