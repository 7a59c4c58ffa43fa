//! TOML configuration. Every key is optional, so an empty file gives the
//! default settings.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use esa_core::corpus::{ArticleKind, DateRule, PruningPolicy, MAX_TEMPLATE_DEPTH};
use esa_core::features::{CategorizationConfig, LinkMode, LinkOptions, DEFAULT_TOP_K};
use esa_core::index::{IndexPruneSpec, Normalization};
use esa_core::semantics::{Order, RelatednessOptions, DEFAULT_ALPHA};
use esa_core::text::{Level, SegmentationSpec, StopWords};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Stop-word file; the bundled English list when absent.
    pub stop_words: Option<PathBuf>,
    pub corpus: CorpusConfig,
    pub index: IndexConfig,
    pub relatedness: RelatednessConfig,
    pub features: FeaturesConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CorpusConfig {
    pub min_non_stop_words: usize,
    pub min_total_links: u32,
    pub drop_kinds: Vec<String>,
    pub date_rules: Vec<String>,
    pub max_template_depth: usize,
    /// Append incoming anchor texts to each concept's text.
    pub anchor_text: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IndexConfig {
    /// Terms must occur in at least this many concepts.
    pub min_term_articles: u32,
    /// `concept` (unit-norm columns) or `term` (unit-norm rows).
    pub normalization: String,
    pub prune: bool,
    pub prune_window: usize,
    pub prune_fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RelatednessConfig {
    /// `first` or `second`.
    pub order: String,
    pub alpha: f64,
    pub generality_only: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FeaturesConfig {
    pub top_k: usize,
    pub levels: Vec<String>,
    pub window: usize,
    /// Restrict contexts to paragraphs and the whole document.
    pub noisy: bool,
    /// `off`, `all` or `more-general-only`.
    pub link_mode: String,
    pub link_alpha: f64,
    pub ig_keep: usize,
    pub min_feature_docs: u32,
    pub title_weight: u32,
    pub beta: f64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            stop_words: None,
            corpus: CorpusConfig::default(),
            index: IndexConfig::default(),
            relatedness: RelatednessConfig::default(),
            features: FeaturesConfig::default(),
        }
    }
}

impl Default for CorpusConfig {
    fn default() -> Self {
        let policy = PruningPolicy::default();
        CorpusConfig {
            min_non_stop_words: policy.min_non_stop_words,
            min_total_links: policy.min_total_links,
            drop_kinds: policy.drop_kinds.iter().map(|k| k.as_str().to_string()).collect(),
            date_rules: policy.date_rules.iter().map(|r| r.as_str().to_string()).collect(),
            max_template_depth: MAX_TEMPLATE_DEPTH,
            anchor_text: true,
        }
    }
}

impl Default for IndexConfig {
    fn default() -> Self {
        let spec = IndexPruneSpec::default();
        IndexConfig {
            min_term_articles: 3,
            normalization: Normalization::Concept.as_str().to_string(),
            prune: true,
            prune_window: spec.window(),
            prune_fraction: spec.drop_fraction(),
        }
    }
}

impl Default for RelatednessConfig {
    fn default() -> Self {
        RelatednessConfig {
            order: "first".into(),
            alpha: DEFAULT_ALPHA,
            generality_only: false,
        }
    }
}

impl Default for FeaturesConfig {
    fn default() -> Self {
        let cat = CategorizationConfig::default();
        FeaturesConfig {
            top_k: DEFAULT_TOP_K,
            levels: ["word-window", "sentence", "paragraph", "document"].map(String::from).to_vec(),
            window: SegmentationSpec::DEFAULT_WINDOW,
            noisy: false,
            link_mode: LinkMode::Off.as_str().to_string(),
            link_alpha: DEFAULT_ALPHA,
            ig_keep: cat.ig_keep,
            min_feature_docs: cat.min_feature_docs,
            title_weight: 2,
            beta: cat.beta,
        }
    }
}

fn bad(message: impl Into<String>) -> Error {
    Error::Config(message.into())
}

fn parse_level(s: &str) -> Result<Level> {
    match s {
        "word-window" => Ok(Level::WordWindow),
        "sentence" => Ok(Level::Sentence),
        "paragraph" => Ok(Level::Paragraph),
        "document" => Ok(Level::Document),
        _ => Err(bad(format!("features.levels: unknown level {s:?}"))),
    }
}

fn parse_order(s: &str) -> Result<Order> {
    match s {
        "first" => Ok(Order::First),
        "second" => Ok(Order::Second),
        _ => Err(bad(format!("relatedness.order: expected \"first\" or \"second\", got {s:?}"))),
    }
}

impl Config {
    pub fn from_toml(source: &str) -> Result<Self> {
        let config: Config = toml::from_str(source).map_err(|e| bad(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let source = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut config = Self::from_toml(&source)?;
        // stop-word paths are relative to the config file
        if let (Some(sw), Some(dir)) = (&config.stop_words, path.parent()) {
            if sw.is_relative() {
                config.stop_words = Some(dir.join(sw));
            }
        }
        Ok(config)
    }

    /// Check every field, so later conversions cannot fail.
    pub fn validate(&self) -> Result<()> {
        self.pruning_policy()?;
        self.index_prune_spec()?;
        self.normalization()?;
        self.relatedness_options()?;
        self.segmentation()?;
        self.link_options()?;
        if self.corpus.max_template_depth == 0 {
            return Err(bad("corpus.max_template_depth must be at least 1"));
        }
        if !(self.features.beta >= 0.0) || !self.features.beta.is_finite() {
            return Err(bad("features.beta must be a non-negative number"));
        }
        if self.features.title_weight == 0 {
            return Err(bad("features.title_weight must be at least 1"));
        }
        Ok(())
    }

    pub fn pruning_policy(&self) -> Result<PruningPolicy> {
        let drop_kinds = self
            .corpus
            .drop_kinds
            .iter()
            .map(|k| k.parse::<ArticleKind>().map_err(|_| bad(format!("corpus.drop_kinds: unknown kind {k:?}"))))
            .collect::<Result<BTreeSet<_>>>()?;
        let date_rules = self
            .corpus
            .date_rules
            .iter()
            .map(|r| DateRule::parse(r).ok_or_else(|| bad(format!("corpus.date_rules: unknown rule {r:?}"))))
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(PruningPolicy {
            min_non_stop_words: self.corpus.min_non_stop_words,
            min_total_links: self.corpus.min_total_links,
            drop_kinds,
            date_rules,
        })
    }

    pub fn index_prune_spec(&self) -> Result<IndexPruneSpec> {
        IndexPruneSpec::new(self.index.prune_window, self.index.prune_fraction)
            .map_err(|e| bad(format!("index: {e}")))
    }

    pub fn normalization(&self) -> Result<Normalization> {
        Normalization::parse(&self.index.normalization).ok_or_else(|| {
            bad(format!(
                "index.normalization: expected \"concept\" or \"term\", got {:?}",
                self.index.normalization
            ))
        })
    }

    pub fn relatedness_options(&self) -> Result<RelatednessOptions> {
        let r = &self.relatedness;
        if !(r.alpha >= 0.0) || !r.alpha.is_finite() {
            return Err(bad("relatedness.alpha must be a non-negative number"));
        }
        Ok(RelatednessOptions {
            order: parse_order(&r.order)?,
            alpha: r.alpha,
            generality_only: r.generality_only,
        })
    }

    pub fn segmentation(&self) -> Result<SegmentationSpec> {
        let f = &self.features;
        let levels: Vec<Level> = if f.noisy {
            vec![Level::Paragraph, Level::Document]
        } else {
            f.levels.iter().map(|l| parse_level(l)).collect::<Result<_>>()?
        };
        SegmentationSpec::new(levels, f.window).map_err(|e| bad(format!("features: {e}")))
    }

    pub fn link_options(&self) -> Result<LinkOptions> {
        let f = &self.features;
        let mode = LinkMode::parse(&f.link_mode).ok_or_else(|| {
            bad(format!(
                "features.link_mode: expected \"off\", \"all\" or \"more-general-only\", got {:?}",
                f.link_mode
            ))
        })?;
        if !(f.link_alpha >= 0.0) || !f.link_alpha.is_finite() {
            return Err(bad("features.link_alpha must be a non-negative number"));
        }
        Ok(LinkOptions {
            mode,
            alpha: f.link_alpha,
        })
    }

    pub fn categorization(&self, use_concepts: bool) -> CategorizationConfig {
        CategorizationConfig {
            min_feature_docs: self.features.min_feature_docs,
            ig_keep: self.features.ig_keep,
            beta: self.features.beta,
            use_concepts,
        }
    }

    pub fn stop_words(&self) -> Result<StopWords> {
        match &self.stop_words {
            None => Ok(StopWords::english()),
            Some(path) => {
                let source = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
                Ok(StopWords::parse(&source))
            }
        }
    }

    /// Canonical TOML rendering, used to record build parameters.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        let c = Config::from_toml("").unwrap();
        assert_eq!(c, Config::default());
        let p = c.pruning_policy().unwrap();
        assert_eq!((p.min_non_stop_words, p.min_total_links), (100, 5));
        let s = c.index_prune_spec().unwrap();
        assert_eq!((s.window(), s.drop_fraction()), (100, 0.05));
        assert_eq!(c.relatedness.alpha, 0.5);
        assert_eq!(c.features.top_k, 10);
        assert_eq!(c.features.ig_keep, 200);
        assert_eq!(c.index.min_term_articles, 3);
        assert_eq!(c.normalization().unwrap(), Normalization::Concept);
        assert_eq!(c.segmentation().unwrap(), SegmentationSpec::default());
        assert_eq!(c.link_options().unwrap().mode, LinkMode::Off);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(Config::from_toml("colour = 1").is_err());
        assert!(Config::from_toml("[index]\nwindow = 3").is_err());
    }

    #[test]
    fn invalid_values_rejected() {
        for bad in [
            "[index]\nprune_window = 1",
            "[index]\nprune_fraction = 1.5",
            "[index]\nnormalization = \"rows\"",
            "[relatedness]\norder = \"third\"",
            "[relatedness]\nalpha = -1.0",
            "[features]\nlevels = []",
            "[features]\nlevels = [\"chapter\"]",
            "[features]\nlink_mode = \"some\"",
            "[corpus]\ndrop_kinds = [\"stub\"]",
            "[corpus]\ndate_rules = [\"century\"]",
        ] {
            assert!(Config::from_toml(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn noisy_mode_restricts_levels() {
        let c = Config::from_toml("[features]\nnoisy = true").unwrap();
        assert_eq!(c.segmentation().unwrap(), SegmentationSpec::noisy());
    }

    #[test]
    fn round_trips_through_toml() {
        let c = Config::from_toml("[index]\nprune_window = 3\n[features]\nlink_mode = \"more-general-only\"").unwrap();
        assert_eq!(Config::from_toml(&c.to_toml()).unwrap(), c);
    }
}
