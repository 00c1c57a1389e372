use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a simply-laced Dynkin quiver: {0}")]
    NotDynkin(String),
    #[error("orientation has an oriented cycle")]
    CyclicOrientation,
    #[error("invalid involution: {0}")]
    InvalidInvolution(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("knitting window of {levels} levels is smaller than the required {needed}")]
    WindowTooSmall { levels: usize, needed: usize },
    #[error("object {0} lies outside the knitted window")]
    OutOfWindow(String),
    #[error("functor is not admissible: {0}")]
    NonAdmissibleF(String),
    #[error("inconsistent exact sequence: {0}")]
    InconsistentExactSequence(String),
    #[error("no arrow {0} -> {1}")]
    NoArrow(usize, usize),
    #[error("pair is not l-dominant")]
    NotLDominant,
    #[error("pair does not decompose: {0}")]
    NotDecomposable(String),
    #[error("transition constraints are infeasible at grade {0}")]
    Infeasible(String),
    #[error("transition matrix underdetermined at grade {0}")]
    SolverUnderdetermined(String),
    #[error("no catalogued fact resolves {0}")]
    UncataloguedStratum(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
