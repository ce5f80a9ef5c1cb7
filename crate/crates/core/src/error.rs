use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Format(String),
    #[error("multiplication table is not a Latin square: {0}")]
    NotLatinSquare(String),
    #[error("multiplication table is not associative: ({0} * {1}) * {2} != {0} * ({1} * {2})")]
    NotAssociative(usize, usize, usize),
    #[error("element 0 is not the identity")]
    BadIdentity,
    #[error("unknown catalog group `{0}`")]
    UnknownCatalog(String),
    #[error("group order {order} exceeds the bound {bound}")]
    TooLarge { order: usize, bound: usize },
    #[error("set is not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup is not S-normal")]
    NotSNormal,
    #[error("subgroup product is not closed")]
    ProductNotClosed,
    #[error("no prime p = 1 mod {exponent} with p > {lower} below {bound}")]
    NoPrime { exponent: usize, lower: usize, bound: usize },
    #[error("character table class mismatch: {0}")]
    ClassMismatch(String),
    #[error("character table failed validation: {0}")]
    Orthogonality(String),
    #[error("{irreducibles} irreducible characters exceed the enumeration guard {guard}")]
    GuardExceeded { irreducibles: usize, guard: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
