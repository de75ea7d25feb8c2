//! Geodesic motion planning for two robots on a metric tree.
//!
//! The crate covers the ordered ε-configuration space of a star graph under the
//! ℓ1 and ℓ2 product metrics and the unordered configuration space of an
//! arbitrary tree under ℓ1. Every planner returns an explicit piecewise-uniform
//! trajectory ([`BiPath`]) together with its classification and rule index.
//!
//! [`oracle`] holds a brute-force discretized shortest-path search used to
//! validate the planners.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;
mod math;

pub mod config;
pub mod oracle;
pub mod repr;
pub mod star;
pub mod tree;
pub mod unordered;

pub use config::{BiPath, Breakpoint, Metric, OrderedConfig, UnorderedConfig};
pub use error::{Error, Result};
pub use tree::{Edge, EdgeId, Point, Star, StarCoord, Tree, VertexId};

/// Absolute tolerance used for comparisons against ε and for point identity.
pub const TOL: f64 = 1e-9;
