use thiserror::Error;

use crate::representation::Discrepancy;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("thresholds must be strictly increasing")]
    NotIncreasing,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("constraint system has no feasible point")]
    Infeasible,

    #[error("pair {u}-{v} has weight {weight}, which lies in a non-edge interval")]
    NotAnEdge { u: usize, v: usize, weight: String },

    #[error("no increasing affine map sends the thresholds to the target: {0}")]
    NoAffineMap(String),

    #[error("representation does not verify: {0}")]
    Invalid(Box<Discrepancy>),

    #[error("graph has {n} vertices, more than the supported limit of {limit}")]
    TooLarge { n: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
