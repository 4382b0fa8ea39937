//! Finite-dimensional representations of a graph, their structure functors
//! and classification tests.

mod classify;
mod rep;
mod structure;

pub use classify::*;
pub use rep::*;
pub use structure::*;
