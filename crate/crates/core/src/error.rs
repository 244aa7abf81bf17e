use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed graph file: {0}")]
    Parse(String),
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    NotTrivalent { vertex: String, degree: usize },
    #[error("duplicate edge id {0}")]
    DuplicateEdge(String),
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(String),
    #[error("edge {edge} references unknown vertex {vertex}")]
    UnknownVertex { edge: String, vertex: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("halfspace system is unbounded")]
    Unbounded,
    #[error("polytope is not full-dimensional (affine dimension {affine} in ambient dimension {ambient})")]
    NotFullDimensional { affine: usize, ambient: usize },
    #[error("point is not contained in the polytope")]
    PointOutside,
    #[error("point is not a vertex of the polytope")]
    NotAVertex,
    #[error("polytope is not contained in the unit cube")]
    NotInCube,
    #[error("lattice generators do not span the ambient space")]
    DegenerateLattice,
    #[error("bipartition is inconsistent with the graph: {0}")]
    BadBipartition(String),
    #[error("could not certify the nearest integer with {0} bits of precision")]
    PrecisionExhausted(u32),
}
