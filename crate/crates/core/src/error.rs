use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("deck size must be at least 1")]
    EmptyDeck,

    #[error("sequence count must be at least 1")]
    NoSequences,

    #[error("position {position} is outside 1..={n}")]
    PositionOutOfRange { position: usize, n: usize },

    #[error("{what}: {detail}")]
    SizeGuard { what: &'static str, detail: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("index list must be non-decreasing and within 1..={h}, got {indices:?}")]
    InvalidIndices { indices: Vec<usize>, h: usize },

    #[error("singular system while fitting {what} on L = {l_first}..={l_last}")]
    SingularSystem {
        what: String,
        l_first: u64,
        l_last: u64,
    },

    #[error("fit for {what} failed held-out validation at L = {l}")]
    FitValidation { what: String, l: u64 },

    #[error("{0} is undefined")]
    Undefined(String),
}

pub type Result<T> = std::result::Result<T, Error>;
