use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("SVD did not converge for a {rows}x{cols} matrix")]
    SvdNoConvergence { rows: usize, cols: usize },

    #[error("generalized eigenvalue iteration did not converge for a pencil of order {order}")]
    EigNoConvergence { order: usize },

    #[error("degenerate pencil: all barycentric weights are zero")]
    DegeneratePencil,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("Arnoldi breakdown at degree {degree}")]
    ArnoldiBreakdown { degree: usize },

    #[error("singularity {index} has {count} assigned samples; at least 2 are needed")]
    TooFewSamples { index: usize, count: usize },

    #[error(
        "boundary component {component} carries samples but has no corners; \
         use artificial data or the global variant"
    )]
    NoCorners { component: usize },

    #[error("all poles were discarded; try denser sampling")]
    NoPolesRetained,

    #[error("the origin must lie inside the domain")]
    OriginOutside,

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
