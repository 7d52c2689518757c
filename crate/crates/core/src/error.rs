use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Dynkin type: {0}")]
    InvalidType(String),
    #[error("vertex index {index} out of range for quiver with {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("mutation class exceeds size bound {bound}; input is probably not of Dynkin mutation type")]
    ClassTooLarge { bound: usize },
    #[error("knitting inconsistency: {0}")]
    Knitting(String),
    #[error("copy range [{min}, {max}] too small; need at least [-2, 2]")]
    WindowTooSmall { min: i32, max: i32 },
    #[error("vertex (module {module}, copy {copy}) leaves the window")]
    WindowExit { module: usize, copy: i32 },
    #[error("endpoint mismatch in composition")]
    EndpointMismatch,
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("not an almost complete tilting object: {0}")]
    NotAlmostComplete(String),
    #[error("invalid tilting object: {0}")]
    InvalidTilting(String),
    #[error("morphism is not irreducible")]
    NotIrreducible,
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
