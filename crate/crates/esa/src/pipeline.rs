//! Corpus-to-index build.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use esa_core::corpus::{
    parse_markup, prune_articles, resolve_redirects, resolve_templates, LinkGraphBuilder, LinkStats, ParsedArticle,
    PruneReport, RawArticle, RedirectWarnings, TemplateStore,
};
use esa_core::index::{build_table, ConceptDocument, EsaIndex, TermPruneStats};
use esa_core::semantics::ConceptGraph;
use esa_core::text::{article_frequencies, remove_rare_terms, tokenize, StopWords};
use esa_core::ConceptId;
use rayon::prelude::*;

use crate::config::Config;
use crate::error::{Error, Result};

/// Counts from every stage of a build.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BuildReport {
    pub records: usize,
    pub redirects: usize,
    pub templates: usize,
    pub redirect_warnings: RedirectWarnings,
    pub unknown_templates: usize,
    pub template_depth_exceeded: usize,
    pub links: LinkStats,
    pub edges: usize,
    pub pruning: PruneReport,
    pub terms_seen: usize,
    pub terms_kept: usize,
    /// Concepts left with no vocabulary term after rare-term removal.
    pub empty_concepts: usize,
    /// Concepts whose every term occurs in all concepts.
    pub degenerate_concepts: Vec<ConceptId>,
    pub concepts: usize,
    pub postings_before_pruning: usize,
    pub postings_after_pruning: usize,
    pub term_pruning: Vec<TermPruneStats>,
}

impl BuildReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let p = &self.pruning;
        let w = &self.redirect_warnings;
        let _ = writeln!(s, "records read                 {}", self.records);
        let _ = writeln!(s, "  redirects                  {}", self.redirects);
        let _ = writeln!(s, "  templates                  {}", self.templates);
        let _ = writeln!(s, "  redirects to missing title {}", w.missing_target);
        let _ = writeln!(s, "  redirects in cycles        {}", w.cycles);
        let _ = writeln!(s, "  duplicate titles           {}", w.duplicate_titles);
        let _ = writeln!(s, "unknown template references  {}", self.unknown_templates);
        let _ = writeln!(s, "template depth exceeded      {}", self.template_depth_exceeded);
        let _ = writeln!(s, "links                        {}", self.links.links);
        let _ = writeln!(s, "  to missing titles          {}", self.links.missing_target);
        let _ = writeln!(s, "  self links                 {}", self.links.self_links);
        let _ = writeln!(s, "  distinct edges             {}", self.edges);
        let _ = writeln!(s, "canonical articles           {}", p.considered);
        let _ = writeln!(s, "  dropped by kind            {}", p.dropped_kind);
        let _ = writeln!(s, "  dropped as too short       {}", p.dropped_short);
        let _ = writeln!(s, "  dropped for too few links  {}", p.dropped_links);
        let _ = writeln!(s, "  kept                       {}", p.kept);
        let _ = writeln!(s, "  empty after rare-term cut  {}", self.empty_concepts);
        let _ = writeln!(s, "concepts                     {}", self.concepts);
        let _ = writeln!(s, "  degenerate (no weights)    {}", self.degenerate_concepts.len());
        let _ = writeln!(s, "terms seen                   {}", self.terms_seen);
        let _ = writeln!(s, "terms kept                   {}", self.terms_kept);
        let _ = writeln!(s, "postings before pruning      {}", self.postings_before_pruning);
        let _ = writeln!(s, "postings after pruning       {}", self.postings_after_pruning);
        s
    }

    /// Per-term `term,total,kept` rows with a header.
    pub fn term_pruning_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["term", "total", "kept"])?;
        for t in &self.term_pruning {
            w.write_record([t.term.as_str(), &t.total.to_string(), &t.kept.to_string()])?;
        }
        w.into_inner().map_err(|e| Error::Csv(e.into_error().into()))
    }
}

#[derive(Debug, Clone)]
pub struct Built {
    pub index: EsaIndex,
    pub report: BuildReport,
}

/// Redirects, templates, links, pruning, vocabulary, weighting and posting
/// pruning, in that order.
pub fn build_index(articles: &[RawArticle], config: &Config, stop_words: &StopWords) -> Result<Built> {
    config.validate()?;
    let policy = config.pruning_policy()?;
    let mut report = BuildReport {
        records: articles.len(),
        redirects: articles.iter().filter(|a| a.redirect_target.is_some()).count(),
        ..BuildReport::default()
    };

    let resolution = resolve_redirects(articles);
    report.redirect_warnings = resolution.warnings;
    let templates = TemplateStore::from_articles(articles);
    report.templates = templates.len();

    let depth = config.corpus.max_template_depth;
    let expanded: Vec<(ParsedArticle, usize, usize)> = resolution
        .canonical
        .par_iter()
        .map(|a| {
            let e = resolve_templates(&a.body, &templates, depth);
            (parse_markup(a, &e.text), e.unknown_templates, e.depth_exceeded)
        })
        .collect();
    let mut parsed = Vec::with_capacity(expanded.len());
    for (p, unknown, exceeded) in expanded {
        report.unknown_templates += unknown;
        report.template_depth_exceeded += exceeded;
        parsed.push(p);
    }

    let titles = &resolution.titles;
    let (graph, link_stats) = parsed
        .par_chunks(256)
        .map(|chunk| {
            let mut b = LinkGraphBuilder::new();
            for a in chunk {
                b.add_article(a, titles);
            }
            b
        })
        .reduce(LinkGraphBuilder::new, |mut a, b| {
            a.merge(b);
            a
        })
        .finish();
    report.links = link_stats;
    report.edges = graph.edges().len();

    let pruned = prune_articles(&parsed, &graph, &policy, stop_words);
    report.pruning = pruned.report;
    let by_id: std::collections::BTreeMap<ConceptId, &ParsedArticle> = parsed.iter().map(|a| (a.id, a)).collect();
    let anchor_text = config.corpus.anchor_text;
    let documents: Vec<ConceptDocument> = pruned
        .concepts
        .par_iter()
        .map(|c| {
            let mut tokens = tokenize(&by_id[&c.id].text, stop_words);
            if anchor_text {
                for anchor in graph.anchors(c.id) {
                    tokens.extend(tokenize(anchor, stop_words));
                }
            }
            ConceptDocument::from_tokens(c.id, c.title.clone(), &tokens)
        })
        .collect();

    let df = article_frequencies(documents.iter().map(|d| d.terms.keys()));
    let vocabulary = remove_rare_terms(&df, config.index.min_term_articles);
    report.terms_seen = df.len();
    report.terms_kept = vocabulary.len();

    let keep: BTreeSet<ConceptId> = documents
        .iter()
        .filter(|d| d.terms.keys().any(|t| vocabulary.contains(t)))
        .map(|d| d.id)
        .collect();
    report.empty_concepts = documents.len() - keep.len();
    if keep.is_empty() {
        return Err(Error::NoConcepts);
    }
    let documents: Vec<ConceptDocument> = documents.into_iter().filter(|d| keep.contains(&d.id)).collect();
    let concepts: Vec<_> = pruned.concepts.into_iter().filter(|c| keep.contains(&c.id)).collect();
    report.concepts = concepts.len();

    let built = build_table(&documents, &vocabulary, config.normalization()?)?;
    report.degenerate_concepts = built.degenerate;
    let mut table = built.table;
    report.postings_before_pruning = table.total_postings();
    if config.index.prune {
        report.term_pruning = table.prune(&config.index_prune_spec()?);
    }
    report.postings_after_pruning = table.total_postings();

    let concept_graph = ConceptGraph::from_link_graph(&graph, &concepts);
    Ok(Built {
        index: EsaIndex::new(table, concepts, concept_graph),
        report,
    })
}
