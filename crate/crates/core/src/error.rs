use thiserror::Error;

use crate::NodeId;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("node {id} out of range (node count {count})")]
    UnknownNode { id: NodeId, count: usize },

    #[error("seed topology: {0}")]
    Seed(String),

    #[error("evolution state: {0}")]
    State(String),

    #[error("cluster head election failed after {attempts} attempts")]
    Election { attempts: usize },

    #[error("analysis: {0}")]
    Analysis(String),

    #[error("degree {k} is outside the power-law domain k >= {m}")]
    Domain { k: usize, m: usize },

    #[error("power-law fit needs at least two distinct degrees >= k_min (got {samples} samples)")]
    Fit { samples: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
