use alloc::string::String;

use super::Posting;
use crate::{Error, Result};

/// Sliding-window truncation of a posting list.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexPruneSpec {
    window: usize,
    drop_fraction: f64,
}

impl IndexPruneSpec {
    pub fn new(window: usize, drop_fraction: f64) -> Result<Self> {
        if window < 2 {
            return Err(Error::InvalidParameter(alloc::format!("prune window {window} < 2")));
        }
        if !(drop_fraction > 0.0 && drop_fraction < 1.0) {
            return Err(Error::InvalidParameter(alloc::format!(
                "prune drop fraction {drop_fraction} outside (0, 1)"
            )));
        }
        Ok(IndexPruneSpec {
            window,
            drop_fraction,
        })
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn drop_fraction(&self) -> f64 {
        self.drop_fraction
    }
}

impl Default for IndexPruneSpec {
    /// A window of 100 postings and a 5% drop.
    fn default() -> Self {
        IndexPruneSpec {
            window: 100,
            drop_fraction: 0.05,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermPruneStats {
    pub term: String,
    pub total: usize,
    pub kept: usize,
}

/// Number of leading postings to keep.
///
/// Slides a window over the weight-sorted postings and cuts at the first
/// window whose first and last weights differ by less than `drop_fraction`
/// of the top weight. Lists shorter than the window are kept whole, and the
/// top posting is always kept.
pub fn prune_postings(postings: &[Posting], spec: &IndexPruneSpec) -> usize {
    let len = postings.len();
    if len < spec.window {
        return len;
    }
    let threshold = spec.drop_fraction * postings[0].weight;
    postings
        .windows(spec.window)
        .position(|w| w[0].weight - w[spec.window - 1].weight < threshold)
        .map_or(len, |start| start.max(1))
}
