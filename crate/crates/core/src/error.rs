use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed presentation: {0}")]
    MalformedPresentation(String),
    #[error("alignment oracle unavailable for this presentation")]
    AlignmentUnavailable,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("semilattice is infinite; use the bounded boundary sample")]
    InfiniteSemilattice,
    #[error("character does not contain the domain of the acting element")]
    NotInDomain,
    #[error("character space is infinite")]
    InfiniteCharacterSpace,
    #[error("germ groupoid is not certified Hausdorff")]
    NotHausdorff,
    #[error("operation undefined on the zero element")]
    ZeroElement,
    #[error("character is not in the boundary")]
    NotBoundary,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("algebra is not closed under adjoints")]
    NotSelfAdjoint,
    #[error("subalgebra does not generate the cover")]
    NotACover,
    #[error("invalid grading: {0}")]
    GradingInvalid(String),
    #[error("no coaction extension found: {0}")]
    NoExtensionFound(String),
    #[error("element {0} is not in the core")]
    NotCore(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
