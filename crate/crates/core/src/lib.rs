//! Signed interaction graphs of Boolean networks.
//!
//! The crate relates the cycle structure of a signed digraph `G` to the
//! fixed points of every Boolean network whose interaction graph is `G`.
//! [`sgraph`] holds the graph model, [`structure`] the special-arc theory
//! and parameters, [`boolnet`] the networks used as brute-force oracles,
//! [`bounds`] the coding-theory bounds, and [`kernels`] the digraph kernel
//! correspondence. [`falsify`] searches for counterexamples to the
//! theorems, and [`format`] reads and writes the text formats.

pub mod boolnet;
pub mod bounds;
pub mod error;
pub mod falsify;
pub mod format;
pub mod generate;
pub mod kernels;
pub mod sgraph;
pub mod state;
pub mod structure;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use sgraph::{Arc, Sign, SignedCycle, SignedDigraph};
pub use state::BitState;
