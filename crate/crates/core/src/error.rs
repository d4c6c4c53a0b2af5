use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("invalid chain map: {0}")]
    InvalidMap(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("degree {degree} out of range 0..={top}")]
    DegreeOutOfRange { degree: usize, top: usize },

    #[error("norm kind not supported here: {0}")]
    NormKind(String),

    #[error("not a cycle: {0}")]
    NotACycle(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("not a homomorphism: phi({a}*{b}) != phi({a})*phi({b})")]
    NotAHomomorphism { a: usize, b: usize },

    #[error("size cap exceeded: degree {degree} needs {dim} basis elements (cap {cap})")]
    SizeCap { degree: usize, dim: usize, cap: usize },

    #[error("invalid simplicial complex: {0}")]
    InvalidSimplicial(String),

    #[error("not a pseudo-manifold: {0}")]
    NotPseudoManifold(String),

    #[error("non-orientable: odd cycle through top simplices {witness:?}")]
    NonOrientable { witness: Vec<usize> },

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("malformed linear program: {0}")]
    MalformedLp(String),

    #[error("linear program certificate check failed: {0}")]
    Certificate(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
