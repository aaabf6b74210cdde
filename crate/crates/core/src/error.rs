use thiserror::Error;

use crate::labelled_trees::OrderLabel;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid order label `{0}`")]
    InvalidLabel(String),
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("tree has no marks, canonical code is undefined")]
    EmptyMarks,
    #[error("malformed tree: {0}")]
    MalformedTree(String),
    #[error("tree is not valid for the signature: {0}")]
    InvalidTree(String),
    #[error("arity must be at least 1")]
    ZeroArity,
    #[error("unknown vertex {0}")]
    UnknownVertex(u32),
    #[error("no edge between {0} and {1}")]
    UnknownEdge(u32, u32),
    #[error("label {label} cannot be placed here: {reason}")]
    LabelNotAllowed { label: OrderLabel, reason: &'static str },
    #[error("vertex {0} is saturated")]
    Saturated(u32),
    #[error("vertex set is empty")]
    EmptyVertexSet,
    #[error("vertex set is not connected in the model")]
    DisconnectedVertexSet,
    #[error("points must be distinct")]
    NotDistinct,
    #[error("vertex {0} is not an end")]
    NotAnEnd(u32),
    #[error("empty tuple")]
    EmptyTuple,
    #[error("tuples have different arity ({0} vs {1})")]
    ArityMismatch(usize, usize),
    #[error("tuples have different configuration types")]
    TypeMismatch,
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("order is not semi-linear: {0}")]
    NotSemiLinear(String),
    #[error("extension budget of {0} steps exhausted before a decision")]
    BudgetExhausted(usize),
    #[error("invalid model log: {0}")]
    InvalidLog(String),
}
