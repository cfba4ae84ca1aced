use thiserror::Error;

use crate::extremal::ExtremalRecord;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("loop arc at vertex {0}")]
    LoopArc(usize),

    #[error("arc {u}->{v} rejected: the reverse arc {v}->{u} is present")]
    AntiparallelViolation { u: usize, v: usize },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("{what} = {got} exceeds the supported maximum {limit}")]
    TooLarge {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("pattern has no arcs")]
    EmptyPattern,

    #[error("search budget exhausted; best value found so far is {}", .best.value)]
    BudgetExceeded { best: Box<ExtremalRecord> },

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("no closed form is known for pattern {0}")]
    NoFormula(String),

    #[error("no partition retaining enough arcs after {0} attempts")]
    AttemptsExhausted(usize),

    #[error("graph too small to split: {0}")]
    TooSmall(String),

    #[error("certificate insufficient: no unused common in-neighbour for pattern vertex {0}")]
    CertificateInsufficient(usize),

    #[error("no accepted sample after {0} retries")]
    RetriesExhausted(usize),

    #[error("infeasible configuration: {0}")]
    InfeasibleConfig(String),

    #[error("stage {stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
