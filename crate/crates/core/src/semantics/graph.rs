use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::corpus::{Concept, LinkGraph};
use crate::ConceptId;

/// Links among concepts plus each concept's incoming-link count in the full
/// corpus.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConceptGraph {
    out: BTreeMap<ConceptId, Vec<ConceptId>>,
    inlinks: BTreeMap<ConceptId, u32>,
}

impl ConceptGraph {
    pub fn new<E, I>(edges: E, inlinks: I) -> Self
    where
        E: IntoIterator<Item = (ConceptId, ConceptId)>,
        I: IntoIterator<Item = (ConceptId, u32)>,
    {
        let edges: BTreeSet<_> = edges.into_iter().filter(|(s, t)| s != t).collect();
        let mut out: BTreeMap<ConceptId, Vec<ConceptId>> = BTreeMap::new();
        for (s, t) in edges {
            out.entry(s).or_default().push(t);
        }
        ConceptGraph {
            out,
            inlinks: inlinks.into_iter().collect(),
        }
    }

    /// Keep the edges whose endpoints are both concepts; in-link counts are
    /// taken from the concept records.
    pub fn from_link_graph(graph: &LinkGraph, concepts: &[Concept]) -> Self {
        let ids: BTreeSet<ConceptId> = concepts.iter().map(|c| c.id).collect();
        Self::new(
            graph
                .edges()
                .iter()
                .copied()
                .filter(|(s, t)| ids.contains(s) && ids.contains(t)),
            concepts.iter().map(|c| (c.id, c.inlinks)),
        )
    }

    pub fn targets(&self, source: ConceptId) -> &[ConceptId] {
        self.out.get(&source).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn inlinks(&self, concept: ConceptId) -> u32 {
        self.inlinks.get(&concept).copied().unwrap_or(0)
    }

    pub fn edges(&self) -> impl Iterator<Item = (ConceptId, ConceptId)> + '_ {
        self.out.iter().flat_map(|(&s, ts)| ts.iter().map(move |&t| (s, t)))
    }

    pub fn edge_count(&self) -> usize {
        self.out.values().map(Vec::len).sum()
    }
}

/// `a` is more general than `b` when it has over ten times as many incoming
/// links: `log10(inlinks(a)) - log10(inlinks(b)) > 1`. Counts below one are
/// read as one.
pub fn is_more_general(a: ConceptId, b: ConceptId, graph: &ConceptGraph) -> bool {
    let log_inlinks = |c| libm::log10(f64::from(graph.inlinks(c).max(1)));
    log_inlinks(a) - log_inlinks(b) > 1.0
}
