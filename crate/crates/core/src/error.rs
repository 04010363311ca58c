use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("basis rows are linearly dependent (rank {rank} < {rows})")]
    RankDeficient { rank: usize, rows: usize },

    #[error("operation needs a full-rank square basis, got {n}x{m}")]
    NotFullRank { n: usize, m: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("invalid gate: {0}")]
    Gate(String),

    #[error("register collision: {0}")]
    RegisterCollision(String),

    #[error("non-classical gate `{0}` in a bitwise simulation")]
    NonClassical(&'static str),

    #[error("width plan overflow: {0}")]
    WidthOverflow(String),

    #[error("{what} exceeds cap ({value} > {cap})")]
    Cap {
        what: &'static str,
        value: u64,
        cap: u64,
    },

    #[error("rank-deficient design matrix for fit family `{0}`")]
    FitRank(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
