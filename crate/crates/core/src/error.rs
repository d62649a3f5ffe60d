use thiserror::Error;

/// Errors produced by poset construction, classification and curvature
/// evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("self cover on `{0}`")]
    SelfCover(String),
    #[error("cover relation contains a cycle (through `{0}`)")]
    CycleDetected(String),
    #[error("pair ({lower}, {upper}) is not a cover: a longer path exists")]
    NotACover { lower: String, upper: String },
    #[error("poset is not ranked: conflicting ranks at `{witness}`")]
    NotRanked { witness: String },
    #[error("elements `{a}` and `{b}` are not comparable")]
    NotComparable { a: String, b: String },
    #[error("element `{element}` has rank {actual}, expected {expected}")]
    WrongRank {
        element: String,
        expected: usize,
        actual: usize,
    },
    #[error("poset has rank {actual}, expected {expected}")]
    WrongPosetRank { expected: usize, actual: usize },
    #[error("no elements of rank {0}")]
    EmptyLevel(usize),
    #[error("invalid simplicial complex: {0}")]
    InvalidComplex(String),
    #[error("invalid polyhedral map: {0}")]
    InvalidMap(String),
    #[error("poset is not almost polyhedral: {0}")]
    NotAlmostPolyhedral(String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
