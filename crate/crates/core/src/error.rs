use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("elements belong to algebras of different dimension ({left} vs {right})")]
    AlgebraMismatch { left: usize, right: usize },

    #[error("table is not associative at basis triple ({i}, {j}, {k})")]
    NotAssociative { i: usize, j: usize, k: usize },

    #[error("algebra has no unit")]
    NotUnital,

    #[error("element is not idempotent")]
    NotIdempotent,

    #[error("idempotent is 0 or 1")]
    TrivialIdempotent,

    #[error("annihilating condition fails on the {side} corner; witness {witness}")]
    AnnihilatorConditionsFail { side: char, witness: String },

    #[error("center element {index} has a nonzero off-diagonal component")]
    OffDiagonalCenter { index: usize },

    #[error("center projection is not injective; eta is not well defined")]
    NonUniqueEta,

    #[error("operation requires a generalized matrix algebra")]
    NotGma,

    #[error("block structure violated: {0}")]
    BlockStructure(String),

    #[error("operator is not a Lie triple centralizer: {0}")]
    NotLtc(String),

    #[error("operator is not a Lie triple derivation: {0}")]
    NotLtd(String),

    #[error("operator is not a generalized Lie triple derivation for the given xi: {0}")]
    NotGltd(String),

    #[error("linear system is inconsistent")]
    Inconsistent,

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("operator was saved against algebra {expected}, not {found}")]
    HashMismatch { expected: String, found: String },

    #[error("invalid input: {0}")]
    Parse(String),

    #[error("theorem check failed: {0}")]
    TheoremViolation(String),
}
