use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet size must be even and at least 2 (got {0})")]
    InvalidAlphabet(usize),

    #[error("alphabet labels must be distinct (duplicate {0:?})")]
    DuplicateLabel(String),

    #[error("symbol index {index} outside 1..={size}")]
    SymbolOutOfRange { index: u32, size: u32 },

    #[error("rank {rank} out of range for length {len} ({count} words)")]
    RankOutOfRange { rank: u128, len: usize, count: u128 },

    #[error("count overflow for |Σ|={size}, n={len}")]
    CountOverflow { size: u32, len: usize },

    #[error("word of length {len} exceeds isomorphism budget {budget}")]
    BudgetExceeded { len: usize, budget: usize },

    #[error("isomorphism infeasible at length class {length}: {detail}")]
    Infeasible { length: usize, detail: String },

    #[error("image {0} has no preimage in the isomorphism table")]
    NoPreimage(String),

    #[error("canonical parameter undefined: input has empty image")]
    UndefinedParameter,

    #[error("splitter requires a non-empty symmetric word, got {0}")]
    NotSymmetric(String),

    #[error("accepting fraction undefined on an empty slice")]
    EmptySlice,

    #[error("cannot parse word {0:?}")]
    ParseWord(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}
