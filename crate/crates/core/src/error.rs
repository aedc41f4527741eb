use thiserror::Error;

/// Errors shared by every layer of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The input text does not conform to the expression grammar.
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    /// A `sqrt` argument is not strictly positive on the whole real line.
    #[error("positivity error: {0}")]
    Positivity(String),

    /// An operation would produce an expression outside the grammar.
    #[error("grammar closure error: {0}")]
    GrammarClosure(String),

    /// Operands live in different dimensions.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A combinatorial parameter is outside its admissible range.
    #[error("invalid range: {0}")]
    InvalidRange(String),

    /// A degree, node-count, or order cap was exceeded.
    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    /// The zero polynomial was passed where a nonzero one is required.
    #[error("zero polynomial")]
    ZeroPolynomial,

    /// A classifier was invoked although its precondition failed.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    /// The requested classification does not apply to the given data.
    #[error("not applicable: {0}")]
    NotApplicable(String),

    /// A report violated its own implication lattice; indicates a rule bug.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
