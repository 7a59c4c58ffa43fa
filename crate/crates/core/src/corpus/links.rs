use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{normalize_title, ArticleKind, RawArticle, TitleMap};
use crate::ArticleId;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Link {
    pub target: String,
    pub anchor: String,
}

/// An article after template expansion, with its links pulled out of the
/// markup and rendered as their anchor text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedArticle {
    pub id: ArticleId,
    pub title: String,
    pub kind: ArticleKind,
    pub text: String,
    pub links: Vec<Link>,
}

/// Split `[[Target]]` / `[[Target|anchor]]` links out of `body`.
pub fn parse_markup(article: &RawArticle, body: &str) -> ParsedArticle {
    let mut text = String::with_capacity(body.len());
    let mut links = Vec::new();
    let mut rest = body;
    while let Some(open) = rest.find("[[") {
        text.push_str(&rest[..open]);
        let after = &rest[open + 2..];
        let Some(close) = after.find("]]") else {
            text.push_str(&rest[open..]);
            rest = "";
            break;
        };
        let inner = &after[..close];
        let (target, anchor) = match inner.split_once('|') {
            Some((t, a)) => (t, a.trim()),
            None => (inner, inner.trim()),
        };
        let target = target.split('#').next().unwrap_or("").trim();
        text.push_str(anchor);
        if !target.is_empty() {
            links.push(Link {
                target: target.to_string(),
                anchor: anchor.to_string(),
            });
        }
        rest = &after[close + 2..];
    }
    text.push_str(rest);
    ParsedArticle {
        id: article.id,
        title: article.title.clone(),
        kind: article.kind,
        text,
        links,
    }
}

/// Directed links between resolved articles, with anchor texts per target.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinkGraph {
    edges: BTreeSet<(ArticleId, ArticleId)>,
    in_degree: BTreeMap<ArticleId, u32>,
    out_degree: BTreeMap<ArticleId, u32>,
    anchors: BTreeMap<ArticleId, Vec<String>>,
}

impl LinkGraph {
    pub fn edges(&self) -> &BTreeSet<(ArticleId, ArticleId)> {
        &self.edges
    }

    pub fn in_degree(&self, id: ArticleId) -> u32 {
        self.in_degree.get(&id).copied().unwrap_or(0)
    }

    pub fn out_degree(&self, id: ArticleId) -> u32 {
        self.out_degree.get(&id).copied().unwrap_or(0)
    }

    /// Every anchor phrase used to link to `id`, duplicates included.
    pub fn anchors(&self, id: ArticleId) -> &[String] {
        self.anchors.get(&id).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn targets(&self, source: ArticleId) -> impl Iterator<Item = ArticleId> + '_ {
        self.edges
            .range((source, ArticleId(0))..=(source, ArticleId(u32::MAX)))
            .map(|&(_, t)| t)
    }
}

/// Accumulates links; partial builders over disjoint article batches can be
/// merged in any order with the same result.
#[derive(Debug, Clone, Default)]
pub struct LinkGraphBuilder {
    edges: BTreeSet<(ArticleId, ArticleId)>,
    // (source, occurrence index) keeps anchor order independent of merge order
    anchors: BTreeMap<ArticleId, BTreeMap<(ArticleId, usize), String>>,
    stats: LinkStats,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LinkStats {
    pub links: usize,
    pub missing_target: usize,
    pub self_links: usize,
}

impl LinkGraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_article(&mut self, article: &ParsedArticle, titles: &TitleMap) {
        for (occurrence, link) in article.links.iter().enumerate() {
            self.stats.links += 1;
            match titles.get(&normalize_title(&link.target)) {
                None => self.stats.missing_target += 1,
                Some(&target) if target == article.id => self.stats.self_links += 1,
                Some(&target) => {
                    self.edges.insert((article.id, target));
                    self.anchors
                        .entry(target)
                        .or_default()
                        .insert((article.id, occurrence), link.anchor.clone());
                }
            }
        }
    }

    pub fn add_edge(&mut self, source: ArticleId, target: ArticleId) {
        self.edges.insert((source, target));
    }

    pub fn merge(&mut self, other: LinkGraphBuilder) {
        self.edges.extend(other.edges);
        for (target, anchors) in other.anchors {
            self.anchors.entry(target).or_default().extend(anchors);
        }
        self.stats.links += other.stats.links;
        self.stats.missing_target += other.stats.missing_target;
        self.stats.self_links += other.stats.self_links;
    }

    pub fn finish(self) -> (LinkGraph, LinkStats) {
        let mut in_degree = BTreeMap::new();
        let mut out_degree = BTreeMap::new();
        for &(s, t) in &self.edges {
            *out_degree.entry(s).or_insert(0) += 1;
            *in_degree.entry(t).or_insert(0) += 1;
        }
        let anchors = self
            .anchors
            .into_iter()
            .map(|(t, a)| (t, a.into_values().collect()))
            .collect();
        let graph = LinkGraph {
            edges: self.edges,
            in_degree,
            out_degree,
            anchors,
        };
        (graph, self.stats)
    }
}

/// Build the link graph of the canonical articles. Links to titles that do
/// not resolve, and links of an article to itself, are counted and skipped.
pub fn build_link_graph(articles: &[ParsedArticle], titles: &TitleMap) -> (LinkGraph, LinkStats) {
    let mut builder = LinkGraphBuilder::new();
    for article in articles {
        builder.add_article(article, titles);
    }
    builder.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::resolve_redirects;
    use alloc::vec;

    fn parse_all(raw: &[RawArticle]) -> (Vec<ParsedArticle>, TitleMap) {
        let r = resolve_redirects(raw);
        let parsed = r.canonical.iter().map(|a| parse_markup(a, &a.body)).collect();
        (parsed, r.titles)
    }

    #[test]
    fn markup_renders_anchor_text() {
        let a = RawArticle::new(1, "X", "the [[Federal Reserve|Fed]] and [[Cat]] and [[Dog#Diet|food]] [[broken");
        let p = parse_markup(&a, &a.body);
        assert_eq!(p.text, "the Fed and Cat and food [[broken");
        assert_eq!(p.links.len(), 3);
        assert_eq!(p.links[2].target, "Dog");
    }

    #[test]
    fn no_links_no_edges() {
        let (parsed, titles) = parse_all(&[RawArticle::new(1, "A", "a"), RawArticle::new(2, "B", "b")]);
        let (g, stats) = build_link_graph(&parsed, &titles);
        assert!(g.edges().is_empty());
        assert_eq!(g.in_degree(ArticleId(1)), 0);
        assert_eq!(g.out_degree(ArticleId(2)), 0);
        assert_eq!(stats.links, 0);
    }

    #[test]
    fn duplicate_links_collapse_but_anchors_stay() {
        let (parsed, titles) = parse_all(&[
            RawArticle::new(1, "A", "the [[Federal Reserve|Fed]] and [[Federal Reserve|Federal Reserve Bank]]"),
            RawArticle::new(2, "Federal Reserve", "central bank"),
        ]);
        let (g, _) = build_link_graph(&parsed, &titles);
        assert_eq!(g.edges().len(), 1);
        assert_eq!(g.anchors(ArticleId(2)), ["Fed", "Federal Reserve Bank"]);
        assert_eq!(g.in_degree(ArticleId(2)), 1);
    }

    #[test]
    fn links_through_redirects_and_missing_targets() {
        let (parsed, titles) = parse_all(&[
            RawArticle::new(1, "A", "[[USA]] [[Nowhere]] [[A]]"),
            RawArticle::redirect(2, "USA", "United States"),
            RawArticle::new(3, "United States", "x"),
        ]);
        let (g, stats) = build_link_graph(&parsed, &titles);
        assert_eq!(g.targets(ArticleId(1)).collect::<Vec<_>>(), [ArticleId(3)]);
        assert_eq!(stats.missing_target, 1);
        assert_eq!(stats.self_links, 1);
    }

    #[test]
    fn three_cycle_degrees() {
        let (parsed, titles) = parse_all(&[
            RawArticle::new(1, "A", "[[B]]"),
            RawArticle::new(2, "B", "[[C]]"),
            RawArticle::new(3, "C", "[[A]]"),
        ]);
        let (g, _) = build_link_graph(&parsed, &titles);
        for id in 1..=3 {
            assert_eq!(g.in_degree(ArticleId(id)), 1);
            assert_eq!(g.out_degree(ArticleId(id)), 1);
        }
    }

    #[test]
    fn partitioned_merge_matches_sequential() {
        let raw = vec![
            RawArticle::new(1, "A", "[[B|bee]] [[C]]"),
            RawArticle::new(2, "B", "[[C|sea]] [[A]]"),
            RawArticle::new(3, "C", "[[B|b]] [[B|bee]]"),
        ];
        let (parsed, titles) = parse_all(&raw);
        let whole = build_link_graph(&parsed, &titles);
        let mut left = LinkGraphBuilder::new();
        left.add_article(&parsed[2], &titles);
        let mut right = LinkGraphBuilder::new();
        right.add_article(&parsed[0], &titles);
        right.add_article(&parsed[1], &titles);
        left.merge(right);
        assert_eq!(left.finish(), whole);
    }
}
