use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("duplicate vertex label {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate arrow label {0:?}")]
    DuplicateArrow(String),
    #[error("path {0} does not compose")]
    BrokenPath(String),
    #[error("relation {0} has no terms")]
    EmptyRelation(usize),
    #[error("relation {0} has a zero coefficient")]
    ZeroCoefficient(usize),
    #[error("relation {0} has non-parallel terms")]
    NonParallel(usize),
    #[error("non-homogeneous relation {0}: terms have different lengths")]
    NonHomogeneous(usize),
    #[error("relation {0} has a term of length < 2")]
    ShortRelationTerm(usize),
    #[error("bad coefficient: {0}")]
    Coefficient(String),
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("algebra is not finite-dimensional below path length {max_path_length}")]
    NotFiniteDimensional { max_path_length: usize },
    #[error("internal validation failed: {0}")]
    Validation(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("subcategory check failed: {0}")]
    Subcategory(String),
    #[error("{subsets} subsets exceed the cap of {cap}; pass a larger --subset-cap or use `bounds --v`")]
    SubsetCapExceeded { subsets: u128, cap: u128 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Errors caused by a computational cap rather than by bad input.
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(
            self,
            Error::NotFiniteDimensional { .. } | Error::SubsetCapExceeded { .. }
        )
    }
}
