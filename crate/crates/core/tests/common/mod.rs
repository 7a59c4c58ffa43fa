#![allow(dead_code)]

use std::collections::BTreeSet;

use esa_core::index::{build_table, ConceptDocument, EsaIndex, Normalization};
use esa_core::corpus::Concept;
use esa_core::semantics::ConceptGraph;
use esa_core::text::{tokenize, StopWords};
use esa_core::ConceptId;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const PETSHOP: [&str; 4] = [
    "cat cat feline pet",
    "mouse rodent pet",
    "mouse computer screen click",
    "screen computer display",
];

pub fn petshop_documents() -> Vec<ConceptDocument> {
    PETSHOP
        .iter()
        .enumerate()
        .map(|(i, text)| {
            ConceptDocument::from_tokens(
                ConceptId(i as u32 + 1),
                format!("C{}", i + 1),
                &tokenize(text, &StopWords::english()),
            )
        })
        .collect()
}

pub fn petshop_stems() -> Vec<Vec<String>> {
    PETSHOP
        .iter()
        .map(|t| tokenize(t, &StopWords::english()).into_iter().map(|t| t.stem).collect())
        .collect()
}

pub fn full_vocabulary(docs: &[ConceptDocument]) -> BTreeSet<String> {
    docs.iter().flat_map(|d| d.terms.keys().cloned()).collect()
}

/// PETSHOP with the cat article linking to the rodent article.
pub fn petshop_index() -> EsaIndex {
    let docs = petshop_documents();
    let table = build_table(&docs, &full_vocabulary(&docs), Normalization::Concept)
        .unwrap()
        .table;
    let concepts = docs
        .iter()
        .map(|d| Concept {
            id: d.id,
            title: d.title.clone(),
            non_stop_word_count: d.terms.values().sum::<u32>() as usize,
            inlinks: u32::from(d.id == ConceptId(2)),
            outlinks: u32::from(d.id == ConceptId(1)),
        })
        .collect();
    let graph = ConceptGraph::new([(ConceptId(1), ConceptId(2))], [(ConceptId(2), 1)]);
    EsaIndex::new(table, concepts, graph)
}

/// Random corpus of up to `max_concepts` token lists over up to `max_terms`
/// synthetic terms.
pub fn random_corpus(rng: &mut ChaCha8Rng, max_concepts: usize, max_terms: usize) -> Vec<Vec<String>> {
    let n = rng.gen_range(1..=max_concepts);
    let r = rng.gen_range(1..=max_terms);
    (0..n)
        .map(|_| {
            let len = rng.gen_range(1..=30);
            (0..len).map(|_| format!("t{}", rng.gen_range(0..r))).collect()
        })
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn documents_from_stems(stems: &[Vec<String>]) -> Vec<ConceptDocument> {
    stems
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let mut terms = std::collections::BTreeMap::new();
            for t in s {
                *terms.entry(t.clone()).or_insert(0u32) += 1;
            }
            ConceptDocument {
                id: ConceptId(i as u32),
                title: format!("c{i}"),
                terms,
            }
        })
        .collect()
}
