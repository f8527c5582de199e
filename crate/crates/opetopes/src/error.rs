use thiserror::Error;

use crate::ident::Ident;

/// Error type shared by all operations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown basis element `{0}`")]
    UnknownBasisId(Ident),
    #[error("operation undefined on dimension-zero input ({0})")]
    DimensionZero(&'static str),
    #[error("iterated face rank {rank} exceeds chain dimension {dim}")]
    RankTooLarge { rank: usize, dim: usize },
    #[error("expected a chain of dimension {expected}, found {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("complex has an empty basis")]
    EmptyBasis,
    #[error("fast path inapplicable: d_plus of `{0}` is not a single basis element")]
    FastPathInapplicable(Ident),
    #[error("complex is not atomic")]
    NotAtomic,
    #[error("complex is not unital")]
    NotUnital,
    #[error("complex is not opetopic")]
    NotOpetopic,
    #[error("complex is not reduced")]
    NotReduced,
    #[error("the two g-chain formulas disagree at level {q} ({sign:?})")]
    FormulaMismatch { q: usize, sign: crate::chain::Sign },
    #[error("multiplicity violation: {0}")]
    MultiplicityViolation(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(Ident),
    #[error("constellation is not total: vertex `{0}` has no image")]
    NotTotal(Ident),
    #[error("invalid opetopic sequence: {0}")]
    InvalidSequence(String),
    #[error("duplicate identifier `{0}`")]
    DuplicateId(Ident),
    #[error("invalid basis identifier `{0}` (must match [A-Za-z0-9_.]+)")]
    InvalidId(String),
    #[error("reference to unknown identifier `{id}` in {context}")]
    Reference { id: Ident, context: String },
    #[error("malformed structure: {0}")]
    Structure(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
