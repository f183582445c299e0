use thiserror::Error;

/// Errors produced by graph construction and the numeric kernels.
#[derive(Debug, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,

    #[error("cycle graphs need at least 3 vertices, got {0}")]
    CycleTooSmall(usize),

    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("self-loop at vertex {0} (graphs are simple)")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1}) after symmetrization")]
    DuplicateEdge(usize, usize),

    #[error("bad edge list: {0}")]
    BadEdgeList(String),

    #[error("complete multipartite graphs need at least two parts")]
    TooFewParts,

    #[error("multipartite part sizes must be positive")]
    EmptyPart,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("a single-vertex graph admits no unit vector orthogonal to e")]
    TrivialGraph,

    #[error("matrix of order {0} cannot be compressed onto the hyperplane orthogonal to e")]
    CompressTooSmall(usize),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal sum {off:.3e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("evaluation point {lambda} lies within tolerance of the pole {pole}")]
    PoleProximity { lambda: f64, pole: f64 },

    #[error("graph is not regular")]
    NotRegular,

    #[error("not of QE class: centered Gram matrix has eigenvalue {0:.6e}")]
    NotQeClass(f64),

    /// A non-complete join must produce at least one stationary value below -1;
    /// seeing this error indicates numerically pathological input.
    #[error("no stationary value below -1 found for a non-complete join")]
    NoCandidates,
}

pub type Result<T> = std::result::Result<T, Error>;
