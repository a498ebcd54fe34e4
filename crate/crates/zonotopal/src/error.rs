//! Error type shared by all modules.

use thiserror::Error;

/// Errors raised by contract violations across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("vector list does not span the ambient space")]
    NonSpanning,
    #[error("invalid basis: {0:?}")]
    InvalidBasis(Vec<usize>),
    #[error("index {0} out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("cannot contract a zero vector (loop) at index {0}")]
    ContractLoop(usize),
    #[error("basis set must be non-empty")]
    EmptyBases,
    #[error("polynomial sides do not match the required pairing")]
    SideMismatch,
    #[error("generator must be homogeneous and non-zero: {0}")]
    NonHomogeneous(String),
    #[error("point set must be non-empty")]
    EmptyPointSet,
    #[error("shift vector fails the general-position check: {0}")]
    ShiftNotGeneric(String),
    #[error("evaluation point lies on a cone boundary")]
    BoundaryHit,
    #[error("list contains a zero vector at index {0}, unsupported here")]
    UnexpectedLoop(usize),
    #[error("basis sets have mismatched labels or sizes")]
    LabelMismatch,
    #[error("family argument invalid: {0}")]
    InvalidFamilyArgs(String),
    #[error("basis set does not have the forward exchange property")]
    NotForwardExchange,
    #[error("operation requires a validated forward exchange matroid")]
    UnvalidatedFem,
    #[error("internal consistency violation: {0}")]
    InternalConsistency(String),
    #[error("no element is eligible (neither loop nor coloop)")]
    NoEligibleElement,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
