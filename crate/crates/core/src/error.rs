use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("label for ({s}, {t}) must be at least 2, got {m}")]
    LabelTooSmall { s: String, t: String, m: u32 },

    #[error("conflicting labels for ({s}, {t}): {first} and {second}")]
    AsymmetricLabel {
        s: String,
        t: String,
        first: u32,
        second: u32,
    },

    #[error("a generator cannot be labelled against itself (`{0}`)")]
    DiagonalLabel(String),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    /// The search or reversing ran out of budget; the answer is undetermined.
    #[error("budget exhausted after {explored} states/steps")]
    BudgetExhausted { explored: usize },

    /// An algebraic fact that must hold in an Artin-Tits monoid failed.
    #[error("structural failure: {0}")]
    Structural(String),

    #[error("generators `{0}` and `{1}` form a free pair")]
    FreePair(String, String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}
