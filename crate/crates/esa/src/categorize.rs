//! Concept features for labeled corpora.

use std::collections::{BTreeMap, BTreeSet};

use esa_core::features::{
    document_features, evaluate_categorization, select_concepts, DocumentFeatures, Feature, FeatureGenerator,
    FeatureSet, FeatureStats, LabeledDocument,
};
use esa_core::eval::BepSummary;
use esa_core::semantics::Interpreter;
use esa_core::ConceptId;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::Config;
use crate::error::Result;

/// Raw word and concept counts of every train and test document.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureRun {
    pub train: Vec<DocumentFeatures>,
    pub test: Vec<DocumentFeatures>,
}

/// Count features for both splits. Concepts are generated only when `k > 0`.
pub fn generate(
    esa: &Interpreter<'_>,
    config: &Config,
    train: &[LabeledDocument],
    test: &[LabeledDocument],
) -> Result<FeatureRun> {
    let generator = FeatureGenerator::new(*esa, config.segmentation()?, config.features.top_k, config.link_options()?);
    let generator = (config.features.top_k > 0).then_some(&generator);
    let title_weight = config.features.title_weight;
    let run = |docs: &[LabeledDocument]| -> Vec<DocumentFeatures> {
        docs.par_iter()
            .map(|d| document_features(d, esa.stop_words(), title_weight, generator))
            .collect()
    };
    Ok(FeatureRun {
        train: run(train),
        test: run(test),
    })
}

fn labels(docs: &[LabeledDocument]) -> Vec<BTreeSet<String>> {
    docs.iter().map(|d| d.labels.clone()).collect()
}

/// Concepts chosen by information gain on the training split.
pub fn selected_concepts(run: &FeatureRun, train: &[LabeledDocument], config: &Config) -> BTreeSet<ConceptId> {
    let train_labels = labels(train);
    let categories: Vec<String> = train_labels.iter().flatten().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let stats = FeatureStats::fit(&run.train, config.features.min_feature_docs);
    select_concepts(&run.train, &train_labels, &categories, &stats, config.features.ig_keep)
}

/// Weighted feature vectors of both splits, with statistics from training.
pub fn weight(run: &FeatureRun, selected: &BTreeSet<ConceptId>, config: &Config) -> (Vec<FeatureSet>, Vec<FeatureSet>) {
    let stats = FeatureStats::fit(&run.train, config.features.min_feature_docs);
    let w = |docs: &[DocumentFeatures]| docs.iter().map(|d| stats.weight_document(d, selected)).collect();
    (w(&run.train), w(&run.test))
}

/// BEP of the reference classifier with words only and with words plus
/// generated concepts.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub words: BepSummary,
    pub with_concepts: BepSummary,
}

impl Comparison {
    /// `features,category,bep` rows, micro and macro first.
    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["features", "category", "bep"])?;
        for (name, s) in [("words", &self.words), ("words+concepts", &self.with_concepts)] {
            w.write_record([name, "micro", &s.micro.to_string()])?;
            w.write_record([name, "macro", &s.macro_.to_string()])?;
            for (cat, b) in &s.per_category {
                w.write_record([name, cat.as_str(), &b.to_string()])?;
            }
        }
        w.into_inner().map_err(|e| crate::Error::Csv(e.into_error().into()))
    }
}

pub fn compare(run: &FeatureRun, train: &[LabeledDocument], test: &[LabeledDocument], config: &Config) -> Result<Comparison> {
    let (train_labels, test_labels) = (labels(train), labels(test));
    let words = evaluate_categorization(&run.train, &train_labels, &run.test, &test_labels, &config.categorization(false))?;
    let with_concepts =
        evaluate_categorization(&run.train, &train_labels, &run.test, &test_labels, &config.categorization(true))?;
    Ok(Comparison {
        words: words.summary,
        with_concepts: with_concepts.summary,
    })
}

#[derive(Serialize)]
struct ConceptFeature<'a> {
    id: u32,
    title: &'a str,
    weight: f64,
}

#[derive(Serialize)]
struct OutputDocument<'a> {
    id: &'a str,
    labels: &'a BTreeSet<String>,
    words: BTreeMap<&'a str, f64>,
    concepts: Vec<ConceptFeature<'a>>,
}

/// One JSON object per document: id, labels, weighted words and weighted
/// concepts with titles.
pub fn to_jsonl(esa: &Interpreter<'_>, docs: &[LabeledDocument], vectors: &[FeatureSet]) -> Vec<u8> {
    let mut out = Vec::new();
    for (doc, v) in docs.iter().zip(vectors) {
        let record = OutputDocument {
            id: &doc.id,
            labels: &doc.labels,
            words: v.words().collect(),
            concepts: v
                .iter()
                .filter_map(|(f, w)| match f {
                    Feature::Concept(c) => Some(ConceptFeature {
                        id: c.0,
                        title: esa.index().title(*c).unwrap_or(""),
                        weight: w,
                    }),
                    Feature::Word(_) => None,
                })
                .collect(),
        };
        serde_json::to_writer(&mut out, &record).expect("serializes");
        out.push(b'\n');
    }
    out
}
