use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeshError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("i/o error: {0}")]
    Io(String),
    #[error("mesh has no tetrahedra")]
    NoTets,
    #[error("tetrahedron {index} references vertex {vertex}, mesh has {count} vertices")]
    IndexOutOfRange { index: usize, vertex: usize, count: usize },
    #[error("tetrahedron {index} is inverted (signed volume {volume:e})")]
    InvertedTet { index: usize, volume: f64 },
    #[error("tetrahedron {index} is degenerate (signed volume {volume:e})")]
    DegenerateTet { index: usize, volume: f64 },
    #[error("vertex {index} has a non-finite coordinate")]
    NonFiniteVertex { index: usize },
    #[error("non-manifold: {0}")]
    NonManifold(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TopoError {
    #[error("inconsistent counts: {0}")]
    InconsistentCounts(String),
    #[error(transparent)]
    Mesh(#[from] MeshError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FemError {
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error("no boundary vertices: the Dirichlet problem is singular")]
    NoBoundary,
    #[error("expected {expected} boundary values, got {got}")]
    BoundaryMismatch { expected: usize, got: usize },
    #[error("non-finite energy")]
    NonFiniteEnergy,
    #[error("zero point: the jacobian of the forms vanishes at u = v = 0")]
    ZeroPoint,
    #[error("linear solver failed: {0}")]
    Solver(String),
}
