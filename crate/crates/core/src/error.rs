use thiserror::Error;

use crate::graph::PlayerId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{locus}: {message}")]
    Parse { locus: String, message: String },

    #[error("{locus}: weight {weight} outside [0, 1]")]
    WeightOutOfRange { locus: String, weight: f64 },

    #[error("{locus}: self-loop on node `{label}`")]
    SelfLoop { locus: String, label: String },

    #[error("{locus}: duplicate edge {from} -> {to}")]
    DuplicateEdge {
        locus: String,
        from: String,
        to: String,
    },

    #[error("unknown player {0}")]
    UnknownPlayer(PlayerId),

    #[error("no edge {from} -> {to}")]
    EdgeNotFound { from: PlayerId, to: PlayerId },

    #[error("{operation}: {n} players exceeds exhaustive guard of {max_n}")]
    GuardExceeded {
        operation: &'static str,
        n: usize,
        max_n: usize,
    },

    #[error("coalition must be nonempty")]
    EmptyCoalition,

    #[error("{operation} needs at least {required} players, got {n}")]
    TooFewPlayers {
        operation: &'static str,
        required: usize,
        n: usize,
    },

    #[error("allocation has {got} payoffs, expected {expected}")]
    AllocationLength { got: usize, expected: usize },

    #[error("grid value {0} outside [0, 1]")]
    GridOutOfRange(f64),
}

/// Refuses exhaustive work on graphs larger than `max_n`.
pub(crate) fn guard(operation: &'static str, n: usize, max_n: usize) -> Result<()> {
    // masks are u64 and tables have 2^n entries
    let hard_cap = 30;
    if n > max_n || n > hard_cap {
        return Err(Error::GuardExceeded {
            operation,
            n,
            max_n: max_n.min(hard_cap),
        });
    }
    Ok(())
}
