use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;

use super::DocumentFeatures;
use crate::index::term_frequency;
use crate::ConceptId;

/// Word and concept features live in separate namespaces.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Feature {
    Word(String),
    Concept(ConceptId),
}

/// A weighted document vector.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FeatureSet {
    weights: BTreeMap<Feature, f64>,
}

impl FeatureSet {
    /// Drops non-positive weights.
    pub fn from_weights<I: IntoIterator<Item = (Feature, f64)>>(weights: I) -> Self {
        FeatureSet {
            weights: weights.into_iter().filter(|&(_, w)| w > 0.0).collect(),
        }
    }

    pub fn get(&self, feature: &Feature) -> f64 {
        self.weights.get(feature).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Feature, f64)> {
        self.weights.iter().map(|(f, &w)| (f, w))
    }

    pub fn words(&self) -> impl Iterator<Item = (&str, f64)> {
        self.iter().filter_map(|(f, w)| match f {
            Feature::Word(s) => Some((s.as_str(), w)),
            Feature::Concept(_) => None,
        })
    }

    pub fn concepts(&self) -> impl Iterator<Item = (ConceptId, f64)> + '_ {
        self.iter().filter_map(|(f, w)| match f {
            Feature::Concept(c) => Some((*c, w)),
            Feature::Word(_) => None,
        })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.weights.values().map(|w| w * w).sum())
    }

    pub fn dot(&self, other: &FeatureSet) -> f64 {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        small.iter().map(|(f, w)| w * large.get(f)).sum()
    }

    pub fn cosine(&self, other: &FeatureSet) -> f64 {
        let denom = self.norm() * other.norm();
        if denom == 0.0 {
            0.0
        } else {
            self.dot(other) / denom
        }
    }

    /// Scaled to unit length; an all-zero set stays empty.
    pub fn normalized(mut self) -> Self {
        let norm = self.norm();
        if norm > 0.0 {
            for w in self.weights.values_mut() {
                *w /= norm;
            }
        }
        self
    }
}

/// Training-split document frequencies of every feature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureStats {
    n_docs: usize,
    df: BTreeMap<Feature, u32>,
    min_docs: u32,
}

impl FeatureStats {
    /// Features seen in fewer than `min_docs` training documents are dropped
    /// everywhere.
    pub fn fit(train: &[DocumentFeatures], min_docs: u32) -> Self {
        let mut df = BTreeMap::new();
        for doc in train {
            for w in doc.words.keys() {
                *df.entry(Feature::Word(w.clone())).or_insert(0) += 1;
            }
            for &c in doc.concepts.keys() {
                *df.entry(Feature::Concept(c)).or_insert(0) += 1;
            }
        }
        FeatureStats {
            n_docs: train.len(),
            df,
            min_docs,
        }
    }

    pub fn n_docs(&self) -> usize {
        self.n_docs
    }

    pub fn df(&self, feature: &Feature) -> u32 {
        self.df.get(feature).copied().unwrap_or(0)
    }

    pub fn retains(&self, feature: &Feature) -> bool {
        let df = self.df(feature);
        df > 0 && df >= self.min_docs
    }

    fn idf(&self, feature: &Feature) -> f64 {
        libm::log(self.n_docs as f64 / f64::from(self.df(feature)))
    }

    /// ltc weighting: `(1 + ln count) * ln(N / df)`, then cosine
    /// normalization of the combined word and concept vector. Only concepts in
    /// `selected` are used; the bag of words is kept whole apart from rare
    /// features.
    pub fn weight_document(&self, doc: &DocumentFeatures, selected: &BTreeSet<ConceptId>) -> FeatureSet {
        let words = doc.words.iter().map(|(w, &c)| (Feature::Word(w.clone()), c));
        let concepts = doc
            .concepts
            .iter()
            .filter(|(c, _)| selected.contains(c))
            .map(|(&c, &n)| (Feature::Concept(c), n));
        FeatureSet::from_weights(
            words
                .chain(concepts)
                .filter(|(f, _)| self.retains(f))
                .map(|(f, count)| {
                    let w = term_frequency(count) * self.idf(&f);
                    (f, w)
                }),
        )
        .normalized()
    }
}
