//! Concept features for text categorization.
//!
//! A document is segmented into contexts at several resolutions; each
//! context is interpreted and its `k` strongest concepts are pooled into the
//! document's concept features, next to the ordinary bag of words. Generated
//! features go through information-gain selection, and the combined vector is
//! ltc-weighted.

mod classifier;
mod selection;
mod weighting;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

pub use classifier::{evaluate_categorization, CategorizationConfig, CentroidClassifier};
pub use selection::{entropy, information_gain, select_concepts};
pub use weighting::{Feature, FeatureSet, FeatureStats};

use crate::semantics::{second_order, ConceptGraph, InterpretationVector, Interpreter, DEFAULT_ALPHA};
use crate::text::{segment, stem_counts, tokenize, SegmentationSpec, StopWords};
use crate::ConceptId;

/// Default number of concepts taken from each context.
pub const DEFAULT_TOP_K: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LinkMode {
    #[default]
    Off,
    All,
    /// Follow only links into concepts more general than their source.
    MoreGeneralOnly,
}

impl LinkMode {
    pub fn as_str(self) -> &'static str {
        match self {
            LinkMode::Off => "off",
            LinkMode::All => "all",
            LinkMode::MoreGeneralOnly => "more-general-only",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [LinkMode::Off, LinkMode::All, LinkMode::MoreGeneralOnly]
            .into_iter()
            .find(|m| m.as_str() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkOptions {
    pub mode: LinkMode,
    pub alpha: f64,
}

impl Default for LinkOptions {
    fn default() -> Self {
        LinkOptions {
            mode: LinkMode::Off,
            alpha: DEFAULT_ALPHA,
        }
    }
}

/// Expand a context's top concepts through links and re-truncate to `k`.
pub fn augment_with_links(
    top: &[(ConceptId, f64)],
    graph: &ConceptGraph,
    options: &LinkOptions,
    k: usize,
) -> Vec<(ConceptId, f64)> {
    if options.mode == LinkMode::Off {
        return top.to_vec();
    }
    let v = InterpretationVector::from_entries(top.iter().copied());
    let generality_only = options.mode == LinkMode::MoreGeneralOnly;
    match second_order(&v, graph, options.alpha, generality_only) {
        Ok(expanded) => expanded.top_k(k),
        // only reachable with a negative alpha
        Err(_) => top.to_vec(),
    }
}

/// Produces pooled concept features for documents.
#[derive(Debug, Clone)]
pub struct FeatureGenerator<'a> {
    interpreter: Interpreter<'a>,
    spec: SegmentationSpec,
    k: usize,
    links: LinkOptions,
}

impl<'a> FeatureGenerator<'a> {
    pub fn new(interpreter: Interpreter<'a>, spec: SegmentationSpec, k: usize, links: LinkOptions) -> Self {
        FeatureGenerator {
            interpreter,
            spec,
            k,
            links,
        }
    }

    /// Concepts generated for `text`, each with the number of contexts that
    /// produced it.
    pub fn generate(&self, text: &str) -> BTreeMap<ConceptId, u32> {
        let mut pooled = BTreeMap::new();
        if self.k == 0 {
            return pooled;
        }
        for context in segment(text, &self.spec, self.interpreter.stop_words()) {
            for (concept, _) in self.context_concepts(&context.tokens) {
                *pooled.entry(concept).or_insert(0) += 1;
            }
        }
        pooled
    }

    /// The set of concepts generated for `text`.
    pub fn generate_set(&self, text: &str) -> BTreeSet<ConceptId> {
        self.generate(text).into_keys().collect()
    }

    fn context_concepts(&self, tokens: &[crate::text::Token]) -> Vec<(ConceptId, f64)> {
        let top = self.interpreter.interpret_tokens(tokens).top_k(self.k);
        augment_with_links(&top, &self.interpreter.index().graph, &self.links, self.k)
    }
}

/// A categorization document as read from a labeled corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledDocument {
    pub id: String,
    pub title: String,
    pub text: String,
    pub labels: BTreeSet<String>,
}

/// Raw feature counts of one document before weighting.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DocumentFeatures {
    pub words: BTreeMap<String, u32>,
    /// Concept → number of contexts that generated it.
    pub concepts: BTreeMap<ConceptId, u32>,
}

/// Count words (title occurrences weighted by `title_weight`) and, when a
/// generator is given, generate concepts from the title and body.
pub fn document_features(
    doc: &LabeledDocument,
    stop_words: &StopWords,
    title_weight: u32,
    generator: Option<&FeatureGenerator<'_>>,
) -> DocumentFeatures {
    let mut words = stem_counts(&tokenize(&doc.text, stop_words));
    for (stem, count) in stem_counts(&tokenize(&doc.title, stop_words)) {
        *words.entry(stem).or_insert(0) += count * title_weight;
    }
    let concepts = match generator {
        Some(g) => {
            let mut text = String::with_capacity(doc.title.len() + doc.text.len() + 2);
            text.push_str(&doc.title);
            text.push_str("\n\n");
            text.push_str(&doc.text);
            g.generate(&text)
        }
        None => BTreeMap::new(),
    };
    DocumentFeatures { words, concepts }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(n: u32) -> ConceptId {
        ConceptId(n)
    }

    #[test]
    fn off_mode_is_identity() {
        let top = vec![(c(1), 0.5), (c(2), 0.25)];
        let g = ConceptGraph::new(vec![(c(1), c(3))], vec![]);
        assert_eq!(augment_with_links(&top, &g, &LinkOptions::default(), 10), top);
    }

    #[test]
    fn linked_concept_enters_only_under_all() {
        // c1 (few in-links) links to c9 (many) and c8 (few)
        let g = ConceptGraph::new(
            vec![(c(1), c(9)), (c(1), c(8)), (c(2), c(8))],
            vec![(c(1), 10), (c(2), 10), (c(8), 20), (c(9), 5000)],
        );
        let top = vec![(c(1), 0.6), (c(2), 0.5)];
        let all = LinkOptions { mode: LinkMode::All, alpha: 0.5 };
        let general = LinkOptions { mode: LinkMode::MoreGeneralOnly, alpha: 0.5 };
        // all: c8 = .3 + .25 = .55 outranks c9 = .3 and c2 = .5
        let a = augment_with_links(&top, &g, &all, 2);
        assert_eq!(a.iter().map(|e| e.0).collect::<Vec<_>>(), [c(1), c(8)]);
        let m = augment_with_links(&top, &g, &general, 3);
        assert_eq!(m.iter().map(|e| e.0).collect::<Vec<_>>(), [c(1), c(2), c(9)]);
        let a3: BTreeSet<_> = augment_with_links(&top, &g, &all, 10).into_iter().map(|e| e.0).collect();
        let m3: BTreeSet<_> = augment_with_links(&top, &g, &general, 10).into_iter().map(|e| e.0).collect();
        assert!(m3.is_subset(&a3));
    }

    #[test]
    fn title_words_count_double() {
        let doc = LabeledDocument {
            id: "d".into(),
            title: "Bananas".into(),
            text: "banana split".into(),
            labels: BTreeSet::new(),
        };
        let f = document_features(&doc, &StopWords::english(), 2, None);
        assert_eq!(f.words["banana"], 3);
        assert_eq!(f.words["split"], 1);
        assert!(f.concepts.is_empty());
    }

    #[test]
    fn link_mode_names() {
        for m in [LinkMode::Off, LinkMode::All, LinkMode::MoreGeneralOnly] {
            assert_eq!(LinkMode::parse(m.as_str()), Some(m));
        }
    }
}
