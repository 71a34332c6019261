//! Local-to-global obstruction diagnostics for theory shift.
//!
//! A [`card::TransitionCard`] pairs a source law with data from four
//! contexts and a menu of candidate moves. Each candidate is fitted per
//! context, scored by how badly its local charts fail to glue, violate
//! constraints or lose the source limit, and ranked by the weighted
//! selection obstruction.

pub mod benchmark;
pub mod card;
pub mod checks;
pub mod cli;
pub mod error;
pub mod model;
pub mod kernel;
pub mod obstruction;
pub mod parallel;
pub mod stress;

pub use error::{Error, Result};
