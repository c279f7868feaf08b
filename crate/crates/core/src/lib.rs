//! Conditional independence graph selection for stationary Gaussian vector
//! time series.
//!
//! The crate covers the model (spectral density matrices, partial coherence
//! and the graph they induce), seeded process generation, the DFT-based
//! neighborhood selector, sample-size bounds, and a Monte Carlo harness that
//! ties them together.

// Negated comparisons are used on purpose so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod error;
pub mod graph;
pub mod harness;
pub mod linalg;
pub mod model;
pub mod process;
pub mod selector;

pub use error::{Error, Result};
pub use graph::{graph_equal, Graph};
