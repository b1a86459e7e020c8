use thiserror::Error;

use crate::structures::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid {kind}: {report}")]
    Invalid {
        kind: &'static str,
        report: ValidationReport,
    },

    #[error("vertex {vertex} out of range (structure has {order} vertices)")]
    OutOfRange { vertex: usize, order: usize },

    #[error("malformed partial map: {0}")]
    MalformedMap(String),

    #[error("not a partial isomorphism: {0}")]
    NotIsomorphism(String),

    #[error("switch set does not witness a switching isomorphism: {0}")]
    BadSwitchSet(String),

    #[error("unliftable: parity constraints around matching edges {cycle:?} are contradictory")]
    Unliftable { cycle: Vec<usize> },

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("dimension mismatch: expected {expected} matching edges, got {found}")]
    Dimension { expected: usize, found: usize },

    #[error("witness vertices must be distinct")]
    SameVertex,
}
