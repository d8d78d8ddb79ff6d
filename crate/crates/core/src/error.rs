use thiserror::Error;

use crate::words::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters d={d}, t={t}, n={n}: {reason}")]
    InvalidParams {
        d: usize,
        t: usize,
        n: usize,
        reason: String,
    },

    #[error("word {0} is not {1}-constrained")]
    NotConstrained(Word, usize),

    #[error("word {word} does not fit alphabet size {d} and length {n}")]
    WordShape { word: Word, d: usize, n: usize },

    #[error("index {index} out of range (count {count})")]
    IndexOutOfRange { index: u64, count: u64 },

    #[error("instance has {count} vertices, over the budget of {limit}")]
    BudgetExceeded { count: String, limit: u64 },

    #[error("operation requires an undirected graph")]
    NotUndirected,

    #[error("operation requires t = n = d, got d={d}, t={t}, n={n}")]
    NotPermutationGraph { d: usize, t: usize, n: usize },

    #[error("vertex set belongs to {set} but graph is {graph}")]
    SpecMismatch { set: String, graph: String },

    #[error("unknown export format {0:?}")]
    UnknownFormat(String),

    #[error("construction {id} is not defined for {reason}")]
    OutOfRange { id: &'static str, reason: String },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
