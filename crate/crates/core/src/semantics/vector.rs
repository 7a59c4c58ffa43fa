use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::ConceptId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Order {
    /// Built from article text alone.
    #[default]
    First,
    /// Expanded through inter-concept links.
    Second,
}

/// Sparse non-negative weights over concepts, sorted by concept id.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct InterpretationVector {
    entries: Vec<(ConceptId, f64)>,
    order: Order,
}

impl InterpretationVector {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Zero and non-finite weights are dropped; repeated ids are summed.
    pub fn from_map(weights: BTreeMap<ConceptId, f64>, order: Order) -> Self {
        InterpretationVector {
            entries: weights
                .into_iter()
                .filter(|&(_, w)| w > 0.0 && w.is_finite())
                .collect(),
            order,
        }
    }

    pub fn from_entries<I: IntoIterator<Item = (ConceptId, f64)>>(entries: I) -> Self {
        let mut map = BTreeMap::new();
        for (c, w) in entries {
            *map.entry(c).or_insert(0.0) += w;
        }
        Self::from_map(map, Order::First)
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(ConceptId, f64)] {
        &self.entries
    }

    pub fn get(&self, concept: ConceptId) -> f64 {
        self.entries
            .binary_search_by_key(&concept, |&(c, _)| c)
            .map_or(0.0, |i| self.entries[i].1)
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.entries.iter().map(|(_, w)| w * w).sum())
    }

    pub fn dot(&self, other: &Self) -> f64 {
        let (mut i, mut j, mut sum) = (0, 0, 0.0);
        while i < self.entries.len() && j < other.entries.len() {
            let (a, wa) = self.entries[i];
            let (b, wb) = other.entries[j];
            match a.cmp(&b) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    sum += wa * wb;
                    i += 1;
                    j += 1;
                }
            }
        }
        sum
    }

    pub fn scaled(&self, factor: f64) -> Self {
        InterpretationVector {
            entries: self.entries.iter().map(|&(c, w)| (c, w * factor)).collect(),
            order: self.order,
        }
    }

    /// The `k` heaviest entries, ties broken by ascending concept id.
    pub fn top_k(&self, k: usize) -> Vec<(ConceptId, f64)> {
        top_k(self.entries.iter().copied(), k)
    }
}

/// Sort by weight descending then id ascending, keep `k`.
pub fn top_k<I: IntoIterator<Item = (ConceptId, f64)>>(entries: I, k: usize) -> Vec<(ConceptId, f64)> {
    let mut all: Vec<_> = entries.into_iter().collect();
    all.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    all.truncate(k);
    all
}

/// Cosine of two non-negative vectors, clamped to `[0, 1]`; zero when
/// either vector is empty.
pub fn cosine(a: &InterpretationVector, b: &InterpretationVector) -> f64 {
    let denom = a.norm() * b.norm();
    if denom == 0.0 {
        return 0.0;
    }
    (a.dot(b) / denom).clamp(0.0, 1.0)
}
