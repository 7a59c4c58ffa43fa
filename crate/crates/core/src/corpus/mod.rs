//! Concept corpus preparation: redirects, templates, links and pruning.

mod links;
mod prune;
mod redirects;
mod templates;

use alloc::string::String;
use core::fmt;
use core::str::FromStr;

pub use links::{build_link_graph, parse_markup, Link, LinkGraph, LinkGraphBuilder, LinkStats, ParsedArticle};
pub use prune::{prune_articles, Concept, DateRule, PruneReport, Pruned, PruningPolicy};
pub use redirects::{resolve_redirects, RedirectResolution, RedirectWarnings, TitleMap};
pub use templates::{resolve_templates, Expansion, TemplateStore, MAX_TEMPLATE_DEPTH};

use crate::ArticleId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum ArticleKind {
    #[default]
    Regular,
    Disambiguation,
    Date,
    Category,
    OtherMeta,
    Template,
}

impl ArticleKind {
    pub const ALL: [ArticleKind; 6] = [
        ArticleKind::Regular,
        ArticleKind::Disambiguation,
        ArticleKind::Date,
        ArticleKind::Category,
        ArticleKind::OtherMeta,
        ArticleKind::Template,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ArticleKind::Regular => "regular",
            ArticleKind::Disambiguation => "disambiguation",
            ArticleKind::Date => "date",
            ArticleKind::Category => "category",
            ArticleKind::OtherMeta => "other-meta",
            ArticleKind::Template => "template",
        }
    }
}

impl fmt::Display for ArticleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ArticleKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ArticleKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| crate::Error::InvalidParameter(alloc::format!("unknown article kind {s:?}")))
    }
}

/// One record of the concept corpus, before any processing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawArticle {
    pub id: ArticleId,
    pub title: String,
    pub body: String,
    pub redirect_target: Option<String>,
    pub kind: ArticleKind,
}

impl RawArticle {
    pub fn new(id: u32, title: impl Into<String>, body: impl Into<String>) -> Self {
        RawArticle {
            id: ArticleId(id),
            title: title.into(),
            body: body.into(),
            redirect_target: None,
            kind: ArticleKind::Regular,
        }
    }

    pub fn redirect(id: u32, title: impl Into<String>, target: impl Into<String>) -> Self {
        RawArticle {
            redirect_target: Some(target.into()),
            ..RawArticle::new(id, title, "")
        }
    }

    pub fn with_kind(mut self, kind: ArticleKind) -> Self {
        self.kind = kind;
        self
    }
}

/// Canonical form of a title for lookups: underscores read as spaces,
/// whitespace collapsed, first letter uppercased.
pub fn normalize_title(title: &str) -> String {
    let mut out = String::with_capacity(title.len());
    for word in title.split(|c: char| c == '_' || c.is_whitespace()).filter(|w| !w.is_empty()) {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(word);
    }
    let mut chars = out.chars();
    match chars.next() {
        Some(first) if first.is_lowercase() => first.to_uppercase().chain(chars).collect(),
        _ => out,
    }
}
