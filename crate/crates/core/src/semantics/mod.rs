//! Interpretation of text as weighted concept vectors, and relatedness.
//!
//! A term's vector is its (pruned) posting list; a text's vector is the
//! centroid of its tokens' vectors. Second-order vectors add, for every
//! concept `i`, `alpha` times the first-order weight of each concept linking
//! to `i`, optionally only along links that point to a more general concept.

mod graph;
mod vector;

use alloc::collections::BTreeMap;

pub use graph::{is_more_general, ConceptGraph};
pub use vector::{cosine, top_k, InterpretationVector, Order};

use crate::index::EsaIndex;
use crate::text::{stem, tokenize, StopWords, Token};
use crate::{Error, Result};

/// Default damping of link-propagated weight.
pub const DEFAULT_ALPHA: f64 = 0.5;

/// Second-order expansion of a first-order vector.
pub fn second_order(
    v: &InterpretationVector,
    graph: &ConceptGraph,
    alpha: f64,
    generality_only: bool,
) -> Result<InterpretationVector> {
    if v.order() == Order::Second {
        return Err(Error::AlreadySecondOrder);
    }
    if !(alpha >= 0.0) {
        return Err(Error::InvalidParameter(alloc::format!("alpha {alpha} must be non-negative")));
    }
    let mut weights: BTreeMap<_, f64> = v.entries().iter().copied().collect();
    for &(source, w) in v.entries() {
        let boost = alpha * w;
        if boost == 0.0 {
            continue;
        }
        for &target in graph.targets(source) {
            if generality_only && !is_more_general(target, source, graph) {
                continue;
            }
            *weights.entry(target).or_insert(0.0) += boost;
        }
    }
    Ok(InterpretationVector::from_map(weights, Order::Second))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelatednessOptions {
    pub order: Order,
    pub alpha: f64,
    pub generality_only: bool,
}

impl Default for RelatednessOptions {
    fn default() -> Self {
        RelatednessOptions {
            order: Order::First,
            alpha: DEFAULT_ALPHA,
            generality_only: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Relatedness {
    pub score: f64,
    /// At least one of the two texts matched no concept; `score` is then 0.
    pub empty: bool,
}

/// Maps text to concept vectors using a loaded index.
#[derive(Debug, Clone, Copy)]
pub struct Interpreter<'a> {
    index: &'a EsaIndex,
    stop_words: &'a StopWords,
}

impl<'a> Interpreter<'a> {
    pub fn new(index: &'a EsaIndex, stop_words: &'a StopWords) -> Self {
        Interpreter { index, stop_words }
    }

    pub fn index(&self) -> &'a EsaIndex {
        self.index
    }

    pub fn stop_words(&self) -> &'a StopWords {
        self.stop_words
    }

    /// Vector of a single stem: its posting list.
    pub fn interpret_stem(&self, stem: &str) -> InterpretationVector {
        match self.index.table.postings(stem) {
            Some(postings) => InterpretationVector::from_entries(postings.iter().map(|p| (p.concept, p.weight))),
            None => InterpretationVector::empty(),
        }
    }

    /// Vector of a single word, lowercased and stemmed first.
    pub fn interpret_term(&self, word: &str) -> InterpretationVector {
        self.interpret_stem(&stem(&word.to_lowercase()))
    }

    /// Centroid of the token vectors. Every token counts toward the divisor,
    /// including tokens with no postings.
    pub fn interpret_tokens(&self, tokens: &[Token]) -> InterpretationVector {
        if tokens.is_empty() {
            return InterpretationVector::empty();
        }
        // grouping by stem makes the result independent of token order
        let counts = crate::text::stem_counts(tokens);
        let mut sum: BTreeMap<_, f64> = BTreeMap::new();
        for (stem, count) in &counts {
            if let Some(postings) = self.index.table.postings(stem) {
                for p in postings {
                    *sum.entry(p.concept).or_insert(0.0) += f64::from(*count) * p.weight;
                }
            }
        }
        let n = tokens.len() as f64;
        for w in sum.values_mut() {
            *w /= n;
        }
        InterpretationVector::from_map(sum, Order::First)
    }

    pub fn interpret_text(&self, text: &str) -> InterpretationVector {
        self.interpret_tokens(&tokenize(text, self.stop_words))
    }

    pub fn interpret_with(&self, text: &str, options: &RelatednessOptions) -> Result<InterpretationVector> {
        let v = self.interpret_text(text);
        match options.order {
            Order::First => Ok(v),
            Order::Second => second_order(&v, &self.index.graph, options.alpha, options.generality_only),
        }
    }

    pub fn relatedness(&self, a: &str, b: &str, options: &RelatednessOptions) -> Result<Relatedness> {
        let va = self.interpret_with(a, options)?;
        let vb = self.interpret_with(b, options)?;
        Ok(relatedness(&va, &vb))
    }
}

pub fn relatedness(a: &InterpretationVector, b: &InterpretationVector) -> Relatedness {
    Relatedness {
        score: cosine(a, b),
        empty: a.is_empty() || b.is_empty(),
    }
}
