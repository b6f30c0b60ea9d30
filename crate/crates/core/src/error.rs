use thiserror::Error;

use crate::context::ContextViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix entries must be finite")]
    NonFinite,

    #[error("state vector has (near) zero norm")]
    ZeroVector,

    #[error("not a projector: hermitian defect {asymmetry:.3e}, idempotence defect {idempotence:.3e}")]
    NotAProjector { asymmetry: f64, idempotence: f64 },

    #[error("subspaces are not mutually orthogonal (overlap {overlap:.3e})")]
    NotOrthogonal { overlap: f64 },

    #[error("invalid context {label:?}: {}", describe_violations(.violations))]
    InvalidContext {
        label: String,
        violations: Vec<ContextViolation>,
    },

    #[error("invalid spectral decomposition: {0}")]
    InvalidSpectralDecomposition(String),

    #[error("duplicate lattice label {0:?}")]
    DuplicateLabel(String),

    #[error("unknown lattice label {0:?}")]
    UnknownLabel(String),

    #[error("subspace is not an element of the given structure")]
    NotAnElement,

    #[error("invalid valuation input: {0}")]
    InvalidInput(String),

    #[error("the state's home subspace is not the range of any member of context {0:?}")]
    HomeNotInContext(String),

    #[error("total dimension {dim} exceeds the cap {cap}")]
    TooLarge { dim: usize, cap: usize },

    #[error("invalid splice: {0}")]
    InvalidSplice(String),

    #[error("missing context: {0}")]
    MissingContext(String),

    #[error("missing environment proposition: {0}")]
    MissingEnvProp(String),

    #[error("diagram elements contain duplicates (indices {0} and {1})")]
    DuplicateElements(usize, usize),

    #[error("unknown vertex name {0:?}")]
    UnknownName(String),

    #[error("{} proposition(s) failed: {}", .0.len(), describe_batch(.0))]
    Batch(Vec<(String, Error)>),
}

fn describe_violations(v: &[ContextViolation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

fn describe_batch(v: &[(String, Error)]) -> String {
    v.iter()
        .map(|(n, e)| format!("{n}: {e}"))
        .collect::<Vec<_>>()
        .join("; ")
}
