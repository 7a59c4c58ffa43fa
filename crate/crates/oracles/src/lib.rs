//! Brute-force reference computations for tests.
//!
//! Nothing here shares code with the `esa-core` crate: each function is the
//! most direct evaluation of its formula, written for clarity over speed.

pub mod bep;
pub mod dense;
pub mod stats;

pub use dense::{oracle_prune, oracle_tfidf, DenseTable, Norm};
