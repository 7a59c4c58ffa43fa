//! The weighted term → concept table, stored as an inverted index.
//!
//! Entry `(t, c)` is `tf(t, c) * ln(n / df(t))`, with `tf(k) = 1 + ln k` for
//! `k > 0`. By default each concept column is then scaled to unit Euclidean
//! norm so document length does not matter; [`Normalization::Term`] scales
//! each term row instead.

mod prune;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

pub use prune::{prune_postings, IndexPruneSpec, TermPruneStats};

use crate::corpus::Concept;
use crate::semantics::ConceptGraph;
use crate::text::Token;
use crate::{ConceptId, Error, Result};

/// Logarithmic term frequency: 0 for an absent term, `1 + ln(count)` otherwise.
pub fn term_frequency(count: u32) -> f64 {
    if count == 0 {
        0.0
    } else {
        1.0 + libm::log(f64::from(count))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// Unit-norm concept columns.
    #[default]
    Concept,
    /// Unit-norm term rows.
    Term,
}

impl Normalization {
    pub fn as_str(self) -> &'static str {
        match self {
            Normalization::Concept => "concept",
            Normalization::Term => "term",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "concept" => Some(Normalization::Concept),
            "term" => Some(Normalization::Term),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Posting {
    pub concept: ConceptId,
    pub weight: f64,
}

/// Postings order: weight descending, then concept id ascending.
pub fn posting_order(a: &Posting, b: &Posting) -> Ordering {
    b.weight.total_cmp(&a.weight).then(a.concept.cmp(&b.concept))
}

/// The processed text of one concept: stem counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptDocument {
    pub id: ConceptId,
    pub title: String,
    pub terms: BTreeMap<String, u32>,
}

impl ConceptDocument {
    pub fn from_tokens(id: ConceptId, title: impl Into<String>, tokens: &[Token]) -> Self {
        ConceptDocument {
            id,
            title: title.into(),
            terms: crate::text::stem_counts(tokens),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedTable {
    n_concepts: usize,
    normalization: Normalization,
    terms: Vec<String>,
    df: Vec<u32>,
    postings: Vec<Vec<Posting>>,
}

impl WeightedTable {
    /// Number of concepts (columns).
    pub fn n(&self) -> usize {
        self.n_concepts
    }

    /// Number of terms (rows).
    pub fn r(&self) -> usize {
        self.terms.len()
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn term_id(&self, term: &str) -> Option<usize> {
        self.terms.binary_search_by(|t| t.as_str().cmp(term)).ok()
    }

    pub fn postings(&self, term: &str) -> Option<&[Posting]> {
        self.term_id(term).map(|i| self.postings[i].as_slice())
    }

    pub fn row(&self, term_id: usize) -> &[Posting] {
        &self.postings[term_id]
    }

    pub fn df(&self, term_id: usize) -> u32 {
        self.df[term_id]
    }

    /// `T[term, concept]`, zero when absent.
    pub fn weight(&self, term: &str, concept: ConceptId) -> f64 {
        self.postings(term)
            .and_then(|p| p.iter().find(|p| p.concept == concept))
            .map_or(0.0, |p| p.weight)
    }

    pub fn rows(&self) -> impl Iterator<Item = (&str, u32, &[Posting])> {
        self.terms
            .iter()
            .zip(&self.df)
            .zip(&self.postings)
            .map(|((t, &df), p)| (t.as_str(), df, p.as_slice()))
    }

    pub fn total_postings(&self) -> usize {
        self.postings.iter().map(Vec::len).sum()
    }

    /// Truncate every posting list with the sliding-window rule.
    pub fn prune(&mut self, spec: &IndexPruneSpec) -> Vec<TermPruneStats> {
        let mut stats = Vec::with_capacity(self.terms.len());
        for (term, postings) in self.terms.iter().zip(self.postings.iter_mut()) {
            let total = postings.len();
            let kept = prune_postings(postings, spec);
            postings.truncate(kept);
            stats.push(TermPruneStats {
                term: term.clone(),
                total,
                kept,
            });
        }
        stats
    }

    /// Reassemble a table from stored rows, checking its invariants.
    pub fn from_rows(
        n_concepts: usize,
        normalization: Normalization,
        rows: Vec<(String, u32, Vec<Posting>)>,
    ) -> Result<Self> {
        let mut table = WeightedTable {
            n_concepts,
            normalization,
            terms: Vec::with_capacity(rows.len()),
            df: Vec::with_capacity(rows.len()),
            postings: Vec::with_capacity(rows.len()),
        };
        for (term, df, postings) in rows {
            if table.terms.last().is_some_and(|prev| *prev >= term) {
                return Err(Error::InvalidParameter(alloc::format!("terms not strictly sorted at {term:?}")));
            }
            if postings.iter().any(|p| !(p.weight > 0.0) || !p.weight.is_finite()) {
                return Err(Error::InvalidParameter(alloc::format!("non-positive weight for {term:?}")));
            }
            if postings.windows(2).any(|w| posting_order(&w[0], &w[1]) != Ordering::Less) {
                return Err(Error::InvalidParameter(alloc::format!("postings of {term:?} out of order")));
            }
            table.terms.push(term);
            table.df.push(df);
            table.postings.push(postings);
        }
        Ok(table)
    }
}

/// Build the weighted table over `documents`, counting only `vocabulary`
/// terms.
///
/// A concept whose column is entirely zero (every one of its terms occurs in
/// all concepts) has no postings; [`BuiltTable::degenerate`] lists such
/// concepts.
pub fn build_table(
    documents: &[ConceptDocument],
    vocabulary: &BTreeSet<String>,
    normalization: Normalization,
) -> Result<BuiltTable> {
    if documents.is_empty() {
        return Err(Error::NoConcepts);
    }
    let n = documents.len();
    let counts: Vec<Vec<(&str, u32)>> = documents
        .iter()
        .map(|d| {
            d.terms
                .iter()
                .filter(|&(t, &c)| c > 0 && vocabulary.contains(t))
                .map(|(t, &c)| (t.as_str(), c))
                .collect()
        })
        .collect();
    if let Some(i) = counts.iter().position(Vec::is_empty) {
        return Err(Error::EmptyConcept {
            id: documents[i].id,
            title: documents[i].title.clone(),
        });
    }

    let mut df: BTreeMap<&str, u32> = BTreeMap::new();
    for doc in &counts {
        for &(t, _) in doc {
            *df.entry(t).or_insert(0) += 1;
        }
    }
    let idf = |t: &str| libm::log(n as f64 / f64::from(df[t]));

    // raw tf-idf, column by column
    let columns: Vec<Vec<(&str, f64)>> = counts
        .iter()
        .map(|doc| doc.iter().map(|&(t, c)| (t, term_frequency(c) * idf(t))).collect())
        .collect();

    let mut rows: BTreeMap<&str, Vec<Posting>> = df.keys().map(|&t| (t, Vec::new())).collect();
    let mut degenerate = Vec::new();
    match normalization {
        Normalization::Concept => {
            for (doc, column) in documents.iter().zip(&columns) {
                let norm = libm::sqrt(column.iter().map(|(_, w)| w * w).sum::<f64>());
                if norm == 0.0 {
                    degenerate.push(doc.id);
                    continue;
                }
                for &(t, w) in column {
                    if w > 0.0 {
                        rows.get_mut(t).unwrap().push(Posting {
                            concept: doc.id,
                            weight: w / norm,
                        });
                    }
                }
            }
        }
        Normalization::Term => {
            for (doc, column) in documents.iter().zip(&columns) {
                if column.iter().all(|&(_, w)| w == 0.0) {
                    degenerate.push(doc.id);
                }
                for &(t, w) in column {
                    if w > 0.0 {
                        rows.get_mut(t).unwrap().push(Posting {
                            concept: doc.id,
                            weight: w,
                        });
                    }
                }
            }
            for postings in rows.values_mut() {
                let norm = libm::sqrt(postings.iter().map(|p| p.weight * p.weight).sum::<f64>());
                for p in postings.iter_mut() {
                    p.weight /= norm;
                }
            }
        }
    }

    let mut table = WeightedTable {
        n_concepts: n,
        normalization,
        terms: Vec::with_capacity(rows.len()),
        df: Vec::with_capacity(rows.len()),
        postings: Vec::with_capacity(rows.len()),
    };
    for (term, mut postings) in rows {
        postings.sort_by(posting_order);
        table.df.push(df[term]);
        table.terms.push(String::from(term));
        table.postings.push(postings);
    }
    Ok(BuiltTable { table, degenerate })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BuiltTable {
    pub table: WeightedTable,
    /// Concepts left without any positive weight.
    pub degenerate: Vec<ConceptId>,
}

/// Everything interpretation needs: the table, concept metadata and the
/// link structure among concepts.
#[derive(Debug, Clone, PartialEq)]
pub struct EsaIndex {
    pub table: WeightedTable,
    pub concepts: Vec<Concept>,
    pub graph: ConceptGraph,
}

impl EsaIndex {
    pub fn new(table: WeightedTable, mut concepts: Vec<Concept>, graph: ConceptGraph) -> Self {
        concepts.sort_by_key(|c| c.id);
        EsaIndex {
            table,
            concepts,
            graph,
        }
    }

    pub fn concept(&self, id: ConceptId) -> Option<&Concept> {
        self.concepts
            .binary_search_by_key(&id, |c| c.id)
            .ok()
            .map(|i| &self.concepts[i])
    }

    pub fn title(&self, id: ConceptId) -> Option<&str> {
        self.concept(id).map(|c| c.title.as_str())
    }
}
