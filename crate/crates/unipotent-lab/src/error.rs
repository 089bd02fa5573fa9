use thiserror::Error;

/// Error type shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("invalid prime {0}")]
    InvalidPrime(u64),

    #[error("coefficient ring mismatch: {0}")]
    RingMismatch(String),

    #[error("cutoff mismatch: {0} vs {1}")]
    CutoffMismatch(u32, u32),

    #[error("{0} requires rational coefficients")]
    RationalsRequired(&'static str),

    #[error("wrong constant term for {0}")]
    ConstantTerm(&'static str),

    #[error("basis mismatch between operands")]
    BasisMismatch,

    #[error("element budget exhausted (limit {0})")]
    BudgetExhausted(usize),

    #[error("cutoff {0} exceeds the hard cap {1}")]
    CutoffTooLarge(u32, u32),

    #[error("map is not a Lie algebra homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("subspace is not contained in the ambient span")]
    NotContained,

    #[error("ideal is not closed under bracketing")]
    IdealNotClosed,

    #[error("the two Peiffer subalgebra computations disagree at degree {0}")]
    PeifferMismatch(u32),

    #[error("expected exactly one nontrivial relator, found {0}")]
    NotOneRelator(usize),

    #[error("relator `{0}` expands trivially below the cutoff")]
    RelatorVanishes(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("series is not a Lie element: leftover term at degree {0}")]
    NotLieElement(u32),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
