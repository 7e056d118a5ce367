use thiserror::Error;

/// Errors raised across the decoder pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("generator is rank deficient: rank {rank} < {rows} rows")]
    Rank { rank: usize, rows: usize },

    #[error("codeword set is not a linear code: {0}")]
    NotLinear(String),

    #[error("length mismatch: expected {expected} bits, found {found}")]
    Length { expected: usize, found: usize },

    #[error("cannot build trellis: {0}")]
    Trellis(String),

    #[error("code has no nonzero codewords, the mixer Hamiltonian is empty")]
    EmptyMixer,

    #[error("Hamiltonian is not diagonal in the computational basis")]
    NotDiagonal,

    #[error("state preparation failed: {0}")]
    StatePrep(String),

    #[error("invalid bit string {0:?}")]
    BitString(String),

    #[error("invalid parameters: {0}")]
    Params(String),

    #[error("{0}")]
    Config(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("too large: {0}")]
    TooLarge(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit status: 2 for bad input or configuration, 3 for internal
    /// invariant failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invariant(_) | Error::NotDiagonal | Error::StatePrep(_) | Error::Trellis(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
