//! Partition a document into non-overlapping contexts at several resolutions.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::ops::Range;

use super::{tokenize, StopWords, Token};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    WordWindow,
    Sentence,
    Paragraph,
    Document,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentationSpec {
    levels: BTreeSet<Level>,
    window_length: usize,
}

impl SegmentationSpec {
    pub const DEFAULT_WINDOW: usize = 10;

    pub fn new<I: IntoIterator<Item = Level>>(levels: I, window_length: usize) -> Result<Self> {
        let levels: BTreeSet<Level> = levels.into_iter().collect();
        if levels.is_empty() {
            return Err(Error::InvalidParameter("segmentation needs at least one level".into()));
        }
        if window_length == 0 {
            return Err(Error::InvalidParameter("word window length must be positive".into()));
        }
        Ok(SegmentationSpec {
            levels,
            window_length,
        })
    }

    /// The whole document as a single context.
    pub fn whole_document() -> Self {
        Self::new([Level::Document], Self::DEFAULT_WINDOW).unwrap()
    }

    /// Paragraphs plus the whole document, for noisy text where sentence
    /// and word-window contexts are unreliable.
    pub fn noisy() -> Self {
        Self::new([Level::Paragraph, Level::Document], Self::DEFAULT_WINDOW).unwrap()
    }

    pub fn levels(&self) -> impl Iterator<Item = Level> + '_ {
        self.levels.iter().copied()
    }

    pub fn contains(&self, level: Level) -> bool {
        self.levels.contains(&level)
    }

    pub fn window_length(&self) -> usize {
        self.window_length
    }
}

impl Default for SegmentationSpec {
    /// Word windows of 10, sentences, paragraphs and the whole document.
    fn default() -> Self {
        Self::new(
            [Level::WordWindow, Level::Sentence, Level::Paragraph, Level::Document],
            Self::DEFAULT_WINDOW,
        )
        .unwrap()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    pub level: Level,
    pub tokens: Vec<Token>,
}

/// Segment `text` at every level of `spec`.
///
/// Contexts come grouped by level (in [`Level`] order) and in document order
/// within a level. Contexts without tokens are omitted, so concatenating the
/// contexts of one level reproduces the token sequence of the document.
pub fn segment(text: &str, spec: &SegmentationSpec, stop_words: &StopWords) -> Vec<Context> {
    let tokens = tokenize(text, stop_words);
    let mut contexts = Vec::new();
    for level in spec.levels() {
        match level {
            Level::WordWindow => {
                contexts.extend(tokens.chunks(spec.window_length).map(|chunk| Context {
                    level,
                    tokens: chunk.to_vec(),
                }));
            }
            Level::Sentence => push_spans(&mut contexts, level, &tokens, &sentence_spans(text)),
            Level::Paragraph => push_spans(&mut contexts, level, &tokens, &paragraph_spans(text)),
            Level::Document => {
                if !tokens.is_empty() {
                    contexts.push(Context {
                        level,
                        tokens: tokens.clone(),
                    });
                }
            }
        }
    }
    contexts
}

fn push_spans(out: &mut Vec<Context>, level: Level, tokens: &[Token], spans: &[Range<usize>]) {
    let mut rest = tokens;
    for span in spans {
        let inside = rest.iter().take_while(|t| t.offset < span.end).count();
        let (head, tail) = rest.split_at(inside);
        rest = tail;
        if !head.is_empty() {
            out.push(Context {
                level,
                tokens: head.to_vec(),
            });
        }
    }
    debug_assert!(rest.is_empty());
}

/// Sentences end at `.`, `?` or `!` followed by whitespace and then an
/// uppercase letter, or by the end of the text.
fn sentence_spans(text: &str) -> Vec<Range<usize>> {
    let mut spans = Vec::new();
    let mut start = 0;
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if !matches!(c, '.' | '?' | '!') {
            continue;
        }
        let end = i + c.len_utf8();
        let after = &text[end..];
        let trimmed = after.trim_start();
        let boundary = if trimmed.is_empty() {
            true
        } else if trimmed.len() < after.len() {
            trimmed.chars().next().is_some_and(char::is_uppercase)
        } else {
            false
        };
        if boundary {
            spans.push(start..end);
            start = end;
        }
    }
    if start < text.len() {
        spans.push(start..text.len());
    }
    spans
}

/// Paragraphs are separated by one or more blank lines.
fn paragraph_spans(text: &str) -> Vec<Range<usize>> {
    let mut spans = Vec::new();
    let mut start: Option<usize> = None;
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        if line.trim().is_empty() {
            if let Some(s) = start.take() {
                spans.push(s..offset);
            }
        } else if start.is_none() {
            start = Some(offset);
        }
        offset += line.len();
    }
    if let Some(s) = start {
        spans.push(s..text.len());
    }
    spans
}
