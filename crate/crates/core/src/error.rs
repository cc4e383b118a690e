use thiserror::Error;

use crate::configuration::VertexId;

/// Errors raised by the group arithmetic, the flop engine and the explorer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("group order {order} exceeds the enumeration bound {bound}; raise the bound or shrink m/n")]
    Size { order: u128, bound: u64 },

    #[error("illegal flop move: {0}")]
    IllegalMove(String),

    #[error("unsupported state at vertex {vertex} while flopping {center}: {reason}")]
    UnsupportedState { vertex: VertexId, center: VertexId, reason: String },

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("key not found in flop graph: {0}")]
    NotFound(String),

    #[error("no flop path from {from} to {to}")]
    NoPath { from: String, to: String },

    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    /// True for the errors that mean "the rewriting rules have no answer
    /// for this state", as opposed to caller mistakes.
    pub fn is_unsupported(&self) -> bool {
        matches!(self, Error::UnsupportedState { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
