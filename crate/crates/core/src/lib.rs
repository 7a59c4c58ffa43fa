//! Explicit semantic analysis over a concept corpus.
//!
//! Texts are represented as sparse weighted vectors over concepts, where each
//! concept is one article of an encyclopedic corpus. The crate covers the whole
//! pure pipeline:
//!
//! - [`corpus`]: redirect and template resolution, link graph, concept pruning
//! - [`text`]: tokenization, stop words, Porter stemming, context segmentation
//! - [`index`]: the term → concept TF-IDF table and its posting-list pruning
//! - [`semantics`]: interpretation vectors, link-based expansion, relatedness
//! - [`features`]: concept feature generation and ltc weighting for categorization
//! - [`eval`]: correlation, significance and break-even-point statistics
//!
//! The crate is `no_std` and only needs `alloc`. File formats, persistence and
//! the command-line tool live in the `esa` crate.

#![no_std]

extern crate alloc;

#[cfg(feature = "std")]
extern crate std;

pub mod corpus;
mod error;
pub mod eval;
pub mod features;
pub mod index;
pub mod semantics;
pub mod text;

pub use error::{Error, Result};

use core::fmt;

/// Identifier of a corpus article, and of the concept it becomes when it
/// survives pruning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ArticleId(pub u32);

/// Concepts keep the id of the article they were built from.
pub use self::ArticleId as ConceptId;

impl fmt::Display for ArticleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u32> for ArticleId {
    fn from(id: u32) -> Self {
        ArticleId(id)
    }
}
