use thiserror::Error;

use crate::treedec::Violation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph is disconnected ({0} components)")]
    Disconnected(usize),
    #[error("graph has {n} vertices, above the limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(Violation),
    #[error("bag of size {size} exceeds the supported maximum of {max}")]
    WidthExceeded { size: usize, max: usize },
    #[error("parameter exceeds budget {budget}")]
    BudgetExceeded { budget: usize },
    #[error("time budget exhausted")]
    Timeout,
    #[error("anchors must be two distinct vertices below {n}")]
    BadAnchors { n: usize },
    #[error("clique-width expression: {0}")]
    Expression(String),
    #[error("reduction: {0}")]
    Reduction(String),
    #[error("{0}")]
    Disagreement(String),
    #[error("report: {0}")]
    Report(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
