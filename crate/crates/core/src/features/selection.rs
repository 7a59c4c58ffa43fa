use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use super::{DocumentFeatures, Feature, FeatureStats};
use crate::ConceptId;

/// Shannon entropy in bits of a distribution given by counts.
pub fn entropy(counts: &[usize]) -> f64 {
    let total: usize = counts.iter().sum();
    if total == 0 {
        return 0.0;
    }
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / total as f64;
            -p * libm::log2(p)
        })
        .sum()
}

/// `H(C) - H(C | F)` in bits for a binary feature and a binary class.
pub fn information_gain(present: &[bool], positive: &[bool]) -> f64 {
    let mut joint = [[0usize; 2]; 2];
    for (&f, &c) in present.iter().zip(positive) {
        joint[usize::from(f)][usize::from(c)] += 1;
    }
    let n = present.len().min(positive.len());
    if n == 0 {
        return 0.0;
    }
    let class = entropy(&[joint[0][0] + joint[1][0], joint[0][1] + joint[1][1]]);
    let conditional: f64 = joint
        .iter()
        .map(|row| (row[0] + row[1]) as f64 / n as f64 * entropy(row))
        .sum();
    (class - conditional).max(0.0)
}

/// The `keep` generated concepts with the highest information gain on the
/// training documents, taking each concept's best gain over all categories.
/// Concepts below the rare-feature threshold are not candidates.
pub fn select_concepts(
    train: &[DocumentFeatures],
    labels: &[BTreeSet<String>],
    categories: &[String],
    stats: &FeatureStats,
    keep: usize,
) -> BTreeSet<ConceptId> {
    let mut candidates: BTreeMap<ConceptId, Vec<bool>> = BTreeMap::new();
    for (i, doc) in train.iter().enumerate() {
        for &c in doc.concepts.keys() {
            if stats.retains(&Feature::Concept(c)) {
                candidates.entry(c).or_insert_with(|| alloc::vec![false; train.len()])[i] = true;
            }
        }
    }
    let class_columns: Vec<Vec<bool>> = categories
        .iter()
        .map(|cat| labels.iter().map(|l| l.contains(cat)).collect())
        .collect();
    let mut scored: Vec<(ConceptId, f64)> = candidates
        .into_iter()
        .map(|(c, present)| {
            let best = class_columns
                .iter()
                .map(|y| information_gain(&present, y))
                .fold(0.0, f64::max);
            (c, best)
        })
        .collect();
    scored.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    scored.into_iter().take(keep).map(|(c, _)| c).collect()
}
