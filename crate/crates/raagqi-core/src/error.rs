use thiserror::Error;

/// Crate-wide error type. Parse failures carry line/position information;
/// precondition violations name the violated predicate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: malformed syntax: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: self-loop at vertex '{vertex}'")]
    SelfLoop { line: usize, vertex: String },
    #[error("line {line}: duplicate edge {a}-{b}")]
    DuplicateEdge { line: usize, a: String, b: String },
    #[error("edge #{index}: undeclared endpoint '{vertex}'")]
    UndeclaredEndpoint { index: usize, vertex: String },
    #[error("unknown vertex '{0}'")]
    UnknownVertex(String),
    #[error("vertex set is not a subset of the graph's vertices")]
    NotSubset,
    #[error("graph is not of type II{}", witness_suffix(.witness))]
    NotTypeII { witness: Option<(String, String)> },
    #[error("graph is not of weak type I")]
    NotWeakTypeI,
    #[error("branch data does not belong to vertex '{vertex}'")]
    ForeignBranch { vertex: String },
    #[error("domain is not combinatorially convex")]
    NotConvex,
    #[error("ball size cap of {cap} elements exceeded")]
    BallCapExceeded { cap: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

fn witness_suffix(witness: &Option<(String, String)>) -> String {
    match witness {
        Some((v, w)) => format!(" (link intersection of '{v}' and '{w}' separates)"),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
