use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("{0} is not a prime")]
    NotPrimeModulus(u64),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("not a cycle: {0}")]
    NotACycle(String),

    #[error("shape mismatch at edge `{edge}`: expected {expected:?}, found {found:?}")]
    ShapeMismatch {
        edge: String,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("representations live on different graphs")]
    GraphMismatch,
    #[error("subspace is not a submodule")]
    NotASubmodule,
    #[error("block family is not a morphism of representations")]
    NotAMorphism,
    #[error("zero representation")]
    ZeroRep,

    #[error("cannot expand a term sitting at the sink `{0}`")]
    SinkExpansion(String),
    #[error("elements belong to different modules")]
    RepMismatch,
    #[error("malformed monomial: {0}")]
    MalformedMonomial(String),

    #[error("cycle is a proper power")]
    NotPrimeCycle,
    #[error("twist scalar must be nonzero")]
    ZeroLambda,
    #[error("vertex `{0}` is not a sink")]
    NotASink(String),
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("characteristic polynomial of the twist is reducible")]
    ReducibleTwist,
    #[error("vector must be nonzero")]
    ZeroVector,
    #[error("vector is not supported at vertex `{0}`")]
    VectorOffVertex(String),
    #[error("cycle is not based at vertex `{0}`")]
    CycleMismatch(String),
    #[error("invalid prefix: {0}")]
    InvalidPrefix(String),

    #[error("enumeration of {needed} states exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
