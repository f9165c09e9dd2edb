use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index ({i},{j}) out of range for B_{n}")]
    IndexOutOfRange { i: usize, j: usize, n: usize },

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),

    #[error("not an element of A+(B_n): {0}")]
    NotAffineElement(String),

    #[error("expected an n-support element, got support of size {0}")]
    NotNSupport(usize),

    #[error("n must be at least 1")]
    ZeroN,

    #[error("n exceeds cap: n = {n}, cap = {cap}")]
    ExceedsCap { n: usize, cap: usize },

    #[error(
        "Cayley tables for {order} elements need {cells} cells each, over the budget of {budget}"
    )]
    TableTooLarge {
        order: usize,
        cells: u128,
        budget: u128,
    },

    #[error("set is not closed under the operation: {0}")]
    NotClosed(String),

    #[error("unknown subset {0:?} (expected all, K, N, constants or singleton-ideal)")]
    UnknownSubset(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
