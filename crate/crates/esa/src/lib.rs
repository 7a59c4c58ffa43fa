//! Corpus ingestion, index persistence, evaluation datasets and the
//! command-line front end for [`esa_core`].

pub mod categorize;
pub mod config;
pub mod corpus_io;
pub mod datasets;
mod error;
pub mod evaluate;
pub mod pipeline;
pub mod store;

pub use config::Config;
pub use error::{Error, Result};
pub use esa_core;
