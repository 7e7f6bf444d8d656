use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("composite of consecutive maps is nonzero")]
    CompositeNonzero,
    #[error("matrix does not define a homomorphism on the given presentations")]
    IllDefinedHom,
    #[error("element does not lie in the subgroup")]
    NotInSubgroup,
    #[error("ghost components need a torsion-free base ring, got {0}")]
    TorsionRing(String),
    #[error("operands live over different {0}")]
    ContextMismatch(String),
    #[error("{0} does not divide {1}")]
    Divisibility(u64, u64),
    #[error("action does not have order dividing {0}")]
    ActionOrder(u64),
    #[error("truncation too short: need degree {needed}, have {available}")]
    TruncationTooShort { needed: usize, available: usize },
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
