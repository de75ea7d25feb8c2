use thiserror::Error;

/// Errors raised by tree construction, planning and the oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed tree or reference to a missing vertex or edge.
    #[error("invalid tree: {0}")]
    Structure(&'static str),
    /// Bad argument to an otherwise well-formed call.
    #[error("invalid argument: {0}")]
    Argument(&'static str),
    /// The tree does not have the shape the operation requires.
    #[error("wrong tree shape: {0}")]
    Shape(&'static str),
    /// A configuration violates the separation constraint.
    #[error("configuration is infeasible: {0}")]
    Infeasible(&'static str),
    /// A configuration lies outside a representation chart.
    #[error("configuration is not representable in this chart")]
    NotRepresentable,
    /// The discretized search found no path.
    #[error("no path between the configurations")]
    Disconnected,
}

pub type Result<T> = core::result::Result<T, Error>;
