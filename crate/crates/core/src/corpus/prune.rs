use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use super::{ArticleKind, LinkGraph, ParsedArticle};
use crate::text::{count_non_stop_words, StopWords};
use crate::ConceptId;

/// An article promoted to an interpretation dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Concept {
    pub id: ConceptId,
    pub title: String,
    pub non_stop_word_count: usize,
    pub inlinks: u32,
    pub outlinks: u32,
}

/// Title shapes that mark an article as describing a date.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DateRule {
    /// `1984`, `44 BC`, `AD 79`
    Year,
    /// `1990s`
    Decade,
    /// `March 15`
    MonthDay,
    /// `15 March`
    DayMonth,
    /// `March 1984`
    MonthYear,
}

impl DateRule {
    pub const ALL: [DateRule; 5] = [
        DateRule::Year,
        DateRule::Decade,
        DateRule::MonthDay,
        DateRule::DayMonth,
        DateRule::MonthYear,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DateRule::Year => "year",
            DateRule::Decade => "decade",
            DateRule::MonthDay => "month-day",
            DateRule::DayMonth => "day-month",
            DateRule::MonthYear => "month-year",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|r| r.as_str() == s)
    }

    pub fn matches(self, title: &str) -> bool {
        let words: Vec<&str> = title.split_whitespace().collect();
        match (self, words.as_slice()) {
            (DateRule::Year, [y]) => is_year(y),
            (DateRule::Year, [a, b]) => (is_year(a) && is_era(b)) || (is_era(a) && is_year(b)),
            (DateRule::Decade, [d]) => d
                .strip_suffix('s')
                .is_some_and(|y| is_year(y) && y.ends_with('0')),
            (DateRule::MonthDay, [m, d]) => is_month(m) && is_day(d),
            (DateRule::DayMonth, [d, m]) => is_day(d) && is_month(m),
            (DateRule::MonthYear, [m, y]) => is_month(m) && is_year(y) && y.len() >= 3,
            _ => false,
        }
    }
}

const MONTHS: [&str; 12] = [
    "january", "february", "march", "april", "may", "june", "july", "august", "september",
    "october", "november", "december",
];

fn is_month(word: &str) -> bool {
    MONTHS.iter().any(|m| m.eq_ignore_ascii_case(word))
}

fn is_number(word: &str, max_len: usize) -> bool {
    !word.is_empty() && word.len() <= max_len && word.bytes().all(|b| b.is_ascii_digit())
}

fn is_year(word: &str) -> bool {
    is_number(word, 4)
}

fn is_day(word: &str) -> bool {
    is_number(word, 2) && matches!(word.parse::<u8>(), Ok(1..=31))
}

fn is_era(word: &str) -> bool {
    matches!(word, "BC" | "AD" | "BCE" | "CE")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PruningPolicy {
    /// Inclusive lower bound on non-stop words.
    pub min_non_stop_words: usize,
    /// Inclusive lower bound on incoming plus outgoing links.
    pub min_total_links: u32,
    pub drop_kinds: BTreeSet<ArticleKind>,
    /// Titles matching any of these are treated as [`ArticleKind::Date`].
    pub date_rules: BTreeSet<DateRule>,
}

impl Default for PruningPolicy {
    fn default() -> Self {
        PruningPolicy {
            min_non_stop_words: 100,
            min_total_links: 5,
            drop_kinds: [
                ArticleKind::Disambiguation,
                ArticleKind::Date,
                ArticleKind::Category,
                ArticleKind::OtherMeta,
                ArticleKind::Template,
            ]
            .into_iter()
            .collect(),
            date_rules: DateRule::ALL.into_iter().collect(),
        }
    }
}

impl PruningPolicy {
    /// Keeps every regular article regardless of size or links.
    pub fn permissive() -> Self {
        PruningPolicy {
            min_non_stop_words: 0,
            min_total_links: 0,
            ..Self::default()
        }
    }

    pub fn effective_kind(&self, article: &ParsedArticle) -> ArticleKind {
        if article.kind == ArticleKind::Regular
            && self.date_rules.iter().any(|r| r.matches(&article.title))
        {
            ArticleKind::Date
        } else {
            article.kind
        }
    }
}

/// Article counts at each pruning stage. Each article is charged to the
/// first rule that removes it.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PruneReport {
    pub considered: usize,
    pub dropped_kind: usize,
    pub dropped_short: usize,
    pub dropped_links: usize,
    pub kept: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pruned {
    pub concepts: Vec<Concept>,
    pub report: PruneReport,
}

/// Select the articles that become concepts. Link counts come from the graph
/// over all canonical articles, before any of them are pruned.
pub fn prune_articles(
    articles: &[ParsedArticle],
    graph: &LinkGraph,
    policy: &PruningPolicy,
    stop_words: &StopWords,
) -> Pruned {
    let mut report = PruneReport {
        considered: articles.len(),
        ..PruneReport::default()
    };
    let mut concepts = Vec::new();
    for article in articles {
        if policy.drop_kinds.contains(&policy.effective_kind(article)) {
            report.dropped_kind += 1;
            continue;
        }
        let words = count_non_stop_words(&article.text, stop_words);
        if words < policy.min_non_stop_words {
            report.dropped_short += 1;
            continue;
        }
        let inlinks = graph.in_degree(article.id);
        let outlinks = graph.out_degree(article.id);
        if inlinks + outlinks < policy.min_total_links {
            report.dropped_links += 1;
            continue;
        }
        concepts.push(Concept {
            id: article.id,
            title: article.title.clone(),
            non_stop_word_count: words,
            inlinks,
            outlinks,
        });
    }
    report.kept = concepts.len();
    Pruned { concepts, report }
}
