use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use super::{select_concepts, DocumentFeatures, Feature, FeatureSet, FeatureStats};
use crate::eval::{micro_macro_bep, BepSummary, CategoryScores};
use crate::{ConceptId, Error, Result};

/// Centroid scorer: cosine to `positive centroid - beta * negative centroid`,
/// negative entries clipped to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct CentroidClassifier {
    prototype: FeatureSet,
}

impl CentroidClassifier {
    pub const DEFAULT_BETA: f64 = 0.25;

    pub fn train(docs: &[FeatureSet], positive: &[bool], beta: f64) -> Result<Self> {
        let mut pos: BTreeMap<Feature, f64> = BTreeMap::new();
        let mut neg: BTreeMap<Feature, f64> = BTreeMap::new();
        let (mut n_pos, mut n_neg) = (0usize, 0usize);
        for (doc, &is_pos) in docs.iter().zip(positive) {
            let (sum, count) = if is_pos { (&mut pos, &mut n_pos) } else { (&mut neg, &mut n_neg) };
            *count += 1;
            for (f, w) in doc.iter() {
                *sum.entry(f.clone()).or_insert(0.0) += w;
            }
        }
        if n_pos == 0 {
            return Err(Error::EmptyClass("positive"));
        }
        if n_neg == 0 {
            return Err(Error::EmptyClass("negative"));
        }
        for (f, w) in neg {
            *pos.entry(f).or_insert(0.0) -= beta * w / n_neg as f64 * n_pos as f64;
        }
        let prototype = FeatureSet::from_weights(pos.into_iter().map(|(f, w)| (f, w / n_pos as f64)));
        Ok(CentroidClassifier { prototype })
    }

    pub fn score(&self, doc: &FeatureSet) -> f64 {
        self.prototype.cosine(doc)
    }

    pub fn prototype(&self) -> &FeatureSet {
        &self.prototype
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CategorizationConfig {
    /// Features in fewer training documents are removed.
    pub min_feature_docs: u32,
    /// Generated features kept by information gain.
    pub ig_keep: usize,
    pub beta: f64,
    /// Use generated concept features next to the bag of words.
    pub use_concepts: bool,
}

impl Default for CategorizationConfig {
    fn default() -> Self {
        CategorizationConfig {
            min_feature_docs: 3,
            ig_keep: 200,
            beta: CentroidClassifier::DEFAULT_BETA,
            use_concepts: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CategorizationOutcome {
    pub summary: BepSummary,
    pub selected: BTreeSet<ConceptId>,
}

/// Train one centroid classifier per training category and report micro
/// and macro BEP on the test documents. Feature statistics and selection use
/// the training documents only.
pub fn evaluate_categorization(
    train: &[DocumentFeatures],
    train_labels: &[BTreeSet<String>],
    test: &[DocumentFeatures],
    test_labels: &[BTreeSet<String>],
    config: &CategorizationConfig,
) -> Result<CategorizationOutcome> {
    let categories: Vec<String> = train_labels.iter().flatten().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let stats = FeatureStats::fit(train, config.min_feature_docs);
    let selected = if config.use_concepts {
        select_concepts(train, train_labels, &categories, &stats, config.ig_keep)
    } else {
        BTreeSet::new()
    };
    let train_vectors: Vec<FeatureSet> = train.iter().map(|d| stats.weight_document(d, &selected)).collect();
    let test_vectors: Vec<FeatureSet> = test.iter().map(|d| stats.weight_document(d, &selected)).collect();

    let mut per_category = Vec::new();
    for cat in &categories {
        let positive: Vec<bool> = train_labels.iter().map(|l| l.contains(cat)).collect();
        let classifier = CentroidClassifier::train(&train_vectors, &positive, config.beta)?;
        let scored = test_vectors
            .iter()
            .zip(test_labels)
            .map(|(v, l)| (classifier.score(v), l.contains(cat)))
            .collect();
        per_category.push(CategoryScores {
            name: cat.clone(),
            scored,
        });
    }
    Ok(CategorizationOutcome {
        summary: micro_macro_bep(&per_category)?,
        selected,
    })
}
