//! Text normalization shared by index construction and interpretation.
//!
//! A token is a maximal run of alphanumeric characters, lowercased. Runs that
//! contain a digit (numbers, mixed alphanumerics) are dropped, as are stop
//! words; the rest are Porter-stemmed. Every other character separates tokens,
//! so hyphens and apostrophes split words.

mod porter;
mod segment;
mod stopwords;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

pub use porter::stem;
pub use segment::{segment, Context, Level, SegmentationSpec};
pub use stopwords::StopWords;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    /// Lowercased surface form.
    pub surface: String,
    pub stem: String,
    /// Ordinal among the tokens produced from the same source text.
    pub position: usize,
    /// Byte offset of the surface form in the source text.
    pub offset: usize,
}

/// Tokenize `text`, dropping numbers, mixed alphanumerics and stop words.
pub fn tokenize(text: &str, stop_words: &StopWords) -> Vec<Token> {
    let mut tokens = Vec::new();
    for (offset, run) in alphanumeric_runs(text) {
        if run.chars().any(|c| c.is_numeric()) {
            continue;
        }
        let surface = run.to_lowercase();
        if stop_words.contains(&surface) {
            continue;
        }
        let stem = stem(&surface);
        tokens.push(Token {
            position: tokens.len(),
            offset,
            surface,
            stem,
        });
    }
    tokens
}

/// Number of words in `text` that are not stop words. Numbers do not count.
pub fn count_non_stop_words(text: &str, stop_words: &StopWords) -> usize {
    alphanumeric_runs(text)
        .filter(|(_, run)| !run.chars().any(|c| c.is_numeric()))
        .filter(|(_, run)| !stop_words.contains(&run.to_lowercase()))
        .count()
}

fn alphanumeric_runs(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = text.char_indices().peekable();
    core::iter::from_fn(move || {
        while let Some(&(_, c)) = rest.peek() {
            if c.is_alphanumeric() {
                break;
            }
            rest.next();
        }
        let (start, _) = *rest.peek()?;
        let mut end = start;
        while let Some(&(i, c)) = rest.peek() {
            if !c.is_alphanumeric() {
                break;
            }
            end = i + c.len_utf8();
            rest.next();
        }
        Some((start, &text[start..end]))
    })
}

/// Occurrence count of each stem in a token sequence.
pub fn stem_counts<'a, I>(tokens: I) -> BTreeMap<String, u32>
where
    I: IntoIterator<Item = &'a Token>,
{
    let mut counts = BTreeMap::new();
    for t in tokens {
        *counts.entry(t.stem.clone()).or_insert(0) += 1;
    }
    counts
}

/// Keep the terms that occur in at least `min_articles` articles.
pub fn remove_rare_terms(
    article_frequency: &BTreeMap<String, u32>,
    min_articles: u32,
) -> BTreeSet<String> {
    article_frequency
        .iter()
        .filter(|&(_, &df)| df >= min_articles)
        .map(|(term, _)| term.clone())
        .collect()
}

/// Number of articles each term occurs in, given per-article term sets.
pub fn article_frequencies<'a, I, T>(articles: I) -> BTreeMap<String, u32>
where
    I: IntoIterator<Item = T>,
    T: IntoIterator<Item = &'a String>,
{
    let mut df = BTreeMap::new();
    for terms in articles {
        let distinct: BTreeSet<&String> = terms.into_iter().collect();
        for term in distinct {
            *df.entry(term.clone()).or_insert(0) += 1;
        }
    }
    df
}
