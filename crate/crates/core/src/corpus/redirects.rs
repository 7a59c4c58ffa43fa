use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use super::{normalize_title, ArticleKind, RawArticle};
use crate::ArticleId;

/// Normalized title → id of the canonical article it denotes.
pub type TitleMap = BTreeMap<String, ArticleId>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RedirectWarnings {
    /// Redirects whose chain ends at a title with no article.
    pub missing_target: usize,
    /// Redirects whose chain loops.
    pub cycles: usize,
    /// Canonical articles whose title was already taken by an earlier one.
    pub duplicate_titles: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RedirectResolution {
    pub titles: TitleMap,
    /// Non-redirect, non-template articles in input order.
    pub canonical: Vec<RawArticle>,
    pub warnings: RedirectWarnings,
}

impl RedirectResolution {
    pub fn lookup(&self, title: &str) -> Option<ArticleId> {
        self.titles.get(&normalize_title(title)).copied()
    }
}

/// Follow every redirect chain to a canonical article.
///
/// Redirects that end at a missing title or loop are dropped and counted.
pub fn resolve_redirects(articles: &[RawArticle]) -> RedirectResolution {
    let mut warnings = RedirectWarnings::default();
    let mut titles = TitleMap::new();
    let mut canonical = Vec::new();
    let mut redirects: BTreeMap<String, String> = BTreeMap::new();

    for article in articles {
        if article.kind == ArticleKind::Template {
            continue;
        }
        let title = normalize_title(&article.title);
        match &article.redirect_target {
            Some(target) => {
                redirects.insert(title, normalize_title(target));
            }
            None => {
                if titles.contains_key(&title) {
                    warnings.duplicate_titles += 1;
                } else {
                    titles.insert(title, article.id);
                }
                canonical.push(article.clone());
            }
        }
    }

    let mut resolved = Vec::new();
    for (source, first) in &redirects {
        if titles.contains_key(source) {
            // a real article shadows the redirect
            continue;
        }
        let mut seen = BTreeSet::new();
        seen.insert(source.as_str());
        let mut current = first.as_str();
        loop {
            if let Some(&id) = titles.get(current) {
                resolved.push((source.clone(), id));
                break;
            }
            match redirects.get(current) {
                Some(next) if seen.insert(current) => current = next,
                Some(_) => {
                    warnings.cycles += 1;
                    break;
                }
                None => {
                    warnings.missing_target += 1;
                    break;
                }
            }
        }
    }
    titles.extend(resolved);

    RedirectResolution {
        titles,
        canonical,
        warnings,
    }
}
