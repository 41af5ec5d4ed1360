use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: expected exactly two vertex tokens, found {found}")]
    MalformedLine { line: usize, found: usize },

    #[error("graph has no edges after normalization")]
    EmptyGraph,

    #[error("graph is not connected")]
    Disconnected,

    #[error("vertex {0} out of range")]
    InvalidVertex(usize),

    #[error("shortest-path budget exceeded: {needed} > {budget}")]
    PathBudgetExceeded { needed: u128, budget: u128 },

    #[error("size guard exceeded: {size} > {guard}")]
    SizeGuardExceeded { size: usize, guard: usize },

    #[error("time limit reached")]
    TimeLimit,

    #[error("no strong rainbow coloring with at most {0} colors")]
    Exhausted(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("solver backend failure: {0}")]
    Backend(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
