use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty point set")]
    EmptyPointSet,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("face contains the origin")]
    FaceContainsOrigin,
    #[error("the origin is not a vertex of the polytope")]
    OriginNotVertex,
    #[error("vector is not in the sublattice")]
    NotInSublattice,
    #[error("base point is not a vertex of the polytope")]
    NotAVertex,
    #[error("character is not trivial on vertex differences")]
    InvalidCharacter,
    #[error("twisted Ehrhart counts are not polynomial (guard coefficient {coefficient} at eigenvalue {eigenvalue})")]
    PolynomialityFailure { eigenvalue: String, coefficient: String },
    #[error("eigenvalue must differ from 1")]
    TrivialEigenvalue,
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("polytope is not pseudo-prime")]
    NotPseudoPrime,
    #[error("face at infinity is not prime")]
    NotPrime,
    #[error("polynomial is not convenient")]
    NotConvenient,
    #[error("invalid support: {0}")]
    InvalidSupport(String),
    #[error("characteristic polynomial has a negative root multiplicity at {0}")]
    NotAPolynomial(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("result is not determined: {0}")]
    Indeterminate(String),
    #[error("spectrum truncation did not cancel above the guard: {0}")]
    GuardNotCancelled(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("value does not fit: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
