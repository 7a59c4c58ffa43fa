//! On-disk index directory.
//!
//! | file            | content                                                        |
//! |-----------------|----------------------------------------------------------------|
//! | `manifest.json` | format version, n, r, build parameters, SHA-256 of every file  |
//! | `vocab.tsv`     | `term  term_id  df  kept` (kept = postings after pruning)      |
//! | `postings.bin`  | per term: `u32` term id, `u32` count, then `(u32, f64)` pairs  |
//! | `concepts.tsv`  | `id  title  inlinks  outlinks  non_stop_words`                 |
//! | `links.tsv`     | `source  target`, links between concepts                       |
//! | `stopwords.txt` | the stop-word list the index was built with                    |
//!
//! All integers and floats in `postings.bin` are little-endian.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use esa_core::corpus::Concept;
use esa_core::index::{EsaIndex, Normalization, Posting, WeightedTable};
use esa_core::semantics::ConceptGraph;
use esa_core::text::StopWords;
use esa_core::ConceptId;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::Config;
use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

const VOCAB: &str = "vocab.tsv";
const POSTINGS: &str = "postings.bin";
const CONCEPTS: &str = "concepts.tsv";
const LINKS: &str = "links.tsv";
const STOP_WORDS: &str = "stopwords.txt";
const MANIFEST: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub format_version: u32,
    pub n: usize,
    pub r: usize,
    pub normalization: String,
    pub corpus_sha256: String,
    pub build: Config,
    pub files: BTreeMap<String, String>,
}

#[derive(Debug, Clone)]
pub struct LoadedIndex {
    pub index: EsaIndex,
    pub stop_words: StopWords,
    pub manifest: Manifest,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn tsv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new().delimiter(b'\t').from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<Vec<u8>> {
    w.into_inner().map_err(|e| Error::Csv(e.into_error().into()))
}

fn encode(index: &EsaIndex, stop_words: &StopWords) -> Result<Vec<(&'static str, Vec<u8>)>> {
    let table = &index.table;
    let mut vocab = tsv_writer();
    vocab.write_record(["term", "term_id", "df", "kept"])?;
    let mut postings = Vec::new();
    for (id, (term, df, row)) in table.rows().enumerate() {
        vocab.write_record([term, &id.to_string(), &df.to_string(), &row.len().to_string()])?;
        postings.extend_from_slice(&(id as u32).to_le_bytes());
        postings.extend_from_slice(&(row.len() as u32).to_le_bytes());
        for p in row {
            postings.extend_from_slice(&p.concept.0.to_le_bytes());
            postings.extend_from_slice(&p.weight.to_le_bytes());
        }
    }

    let mut concepts = tsv_writer();
    concepts.write_record(["id", "title", "inlinks", "outlinks", "non_stop_words"])?;
    for c in &index.concepts {
        concepts.write_record([
            &c.id.to_string(),
            c.title.as_str(),
            &c.inlinks.to_string(),
            &c.outlinks.to_string(),
            &c.non_stop_word_count.to_string(),
        ])?;
    }

    let mut links = tsv_writer();
    links.write_record(["source", "target"])?;
    for (s, t) in index.graph.edges() {
        links.write_record([s.to_string(), t.to_string()])?;
    }

    let mut words = String::new();
    for w in stop_words.iter() {
        words.push_str(w);
        words.push('\n');
    }

    Ok(vec![
        (VOCAB, finish(vocab)?),
        (POSTINGS, postings),
        (CONCEPTS, finish(concepts)?),
        (LINKS, finish(links)?),
        (STOP_WORDS, words.into_bytes()),
    ])
}

/// Write the index directory, creating it if needed.
pub fn save_index(
    index: &EsaIndex,
    stop_words: &StopWords,
    config: &Config,
    corpus_sha256: &str,
    dir: &Path,
) -> Result<Manifest> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let files = encode(index, stop_words)?;
    let mut checksums = BTreeMap::new();
    for (name, bytes) in &files {
        let path = dir.join(name);
        fs::write(&path, bytes).map_err(|e| Error::io(&path, e))?;
        checksums.insert(name.to_string(), sha256_hex(bytes));
    }
    let manifest = Manifest {
        format_version: FORMAT_VERSION,
        n: index.table.n(),
        r: index.table.r(),
        normalization: index.table.normalization().as_str().to_string(),
        corpus_sha256: corpus_sha256.to_string(),
        build: config.clone(),
        files: checksums,
    };
    let mut json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    json.push('\n');
    let path = dir.join(MANIFEST);
    fs::write(&path, json).map_err(|e| Error::io(&path, e))?;
    Ok(manifest)
}

fn read_checked(dir: &Path, name: &str, manifest: &Manifest) -> Result<Vec<u8>> {
    let path = dir.join(name);
    let bytes = fs::read(&path).map_err(|e| Error::io(&path, e))?;
    let expected = manifest
        .files
        .get(name)
        .ok_or_else(|| Error::format(MANIFEST, format!("no checksum for {name}")))?;
    if sha256_hex(&bytes) != *expected {
        return Err(Error::Checksum { file: name.to_string() });
    }
    Ok(bytes)
}

fn tsv_rows(name: &str, bytes: &[u8], columns: usize) -> Result<Vec<csv::StringRecord>> {
    let mut reader = csv::ReaderBuilder::new().delimiter(b'\t').from_reader(bytes);
    let mut rows = Vec::new();
    for row in reader.records() {
        let row = row?;
        if row.len() != columns {
            return Err(Error::format(name, format!("expected {columns} columns, found {}", row.len())));
        }
        rows.push(row);
    }
    Ok(rows)
}

fn field<T: std::str::FromStr>(name: &str, row: &csv::StringRecord, i: usize) -> Result<T> {
    row[i]
        .parse()
        .map_err(|_| Error::format(name, format!("bad value {:?} in column {}", &row[i], i + 1)))
}

struct Cursor<'a> {
    bytes: &'a [u8],
}

impl Cursor<'_> {
    fn take<const N: usize>(&mut self) -> Result<[u8; N]> {
        if self.bytes.len() < N {
            return Err(Error::format(POSTINGS, "unexpected end of file"));
        }
        let (head, rest) = self.bytes.split_at(N);
        self.bytes = rest;
        Ok(head.try_into().unwrap())
    }

    fn u32(&mut self) -> Result<u32> {
        self.take().map(u32::from_le_bytes)
    }

    fn f64(&mut self) -> Result<f64> {
        self.take().map(f64::from_le_bytes)
    }
}

pub fn read_manifest(dir: &Path) -> Result<Manifest> {
    let path = dir.join(MANIFEST);
    let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::format(MANIFEST, e.to_string()))?;
    let version = value
        .get("format_version")
        .and_then(serde_json::Value::as_u64)
        .ok_or_else(|| Error::format(MANIFEST, "missing format_version"))?;
    if version != u64::from(FORMAT_VERSION) {
        return Err(Error::Version {
            found: u32::try_from(version).unwrap_or(u32::MAX),
            expected: FORMAT_VERSION,
        });
    }
    serde_json::from_value(value).map_err(|e| Error::format(MANIFEST, e.to_string()))
}

pub fn load_index(dir: &Path) -> Result<LoadedIndex> {
    let manifest = read_manifest(dir)?;
    let normalization = Normalization::parse(&manifest.normalization)
        .ok_or_else(|| Error::format(MANIFEST, format!("unknown normalization {:?}", manifest.normalization)))?;

    let vocab = tsv_rows(VOCAB, &read_checked(dir, VOCAB, &manifest)?, 4)?;
    if vocab.len() != manifest.r {
        return Err(Error::format(VOCAB, format!("{} terms, manifest says {}", vocab.len(), manifest.r)));
    }
    let postings = read_checked(dir, POSTINGS, &manifest)?;
    let mut cursor = Cursor { bytes: &postings };
    let mut rows = Vec::with_capacity(vocab.len());
    for (i, v) in vocab.iter().enumerate() {
        let id: usize = field(VOCAB, v, 1)?;
        let kept: usize = field(VOCAB, v, 3)?;
        let stored_id = cursor.u32()? as usize;
        let count = cursor.u32()? as usize;
        if id != i || stored_id != i || count != kept {
            return Err(Error::format(POSTINGS, format!("term {i} does not match the vocabulary")));
        }
        let mut row = Vec::with_capacity(count);
        for _ in 0..count {
            let concept = ConceptId(cursor.u32()?);
            let weight = cursor.f64()?;
            row.push(Posting { concept, weight });
        }
        rows.push((v[0].to_string(), field(VOCAB, v, 2)?, row));
    }
    if !cursor.bytes.is_empty() {
        return Err(Error::format(POSTINGS, "trailing bytes"));
    }
    let table = WeightedTable::from_rows(manifest.n, normalization, rows)?;

    let concepts = tsv_rows(CONCEPTS, &read_checked(dir, CONCEPTS, &manifest)?, 5)?
        .iter()
        .map(|row| {
            Ok(Concept {
                id: ConceptId(field(CONCEPTS, row, 0)?),
                title: row[1].to_string(),
                inlinks: field(CONCEPTS, row, 2)?,
                outlinks: field(CONCEPTS, row, 3)?,
                non_stop_word_count: field(CONCEPTS, row, 4)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if concepts.len() != manifest.n {
        return Err(Error::format(CONCEPTS, format!("{} concepts, manifest says {}", concepts.len(), manifest.n)));
    }
    let edges = tsv_rows(LINKS, &read_checked(dir, LINKS, &manifest)?, 2)?
        .iter()
        .map(|row| Ok((ConceptId(field(LINKS, row, 0)?), ConceptId(field(LINKS, row, 1)?))))
        .collect::<Result<Vec<_>>>()?;
    let graph = ConceptGraph::new(edges, concepts.iter().map(|c| (c.id, c.inlinks)));

    let words = read_checked(dir, STOP_WORDS, &manifest)?;
    let words = String::from_utf8(words).map_err(|_| Error::format(STOP_WORDS, "not UTF-8"))?;
    let stop_words = StopWords::from_words(words.lines());

    Ok(LoadedIndex {
        index: EsaIndex::new(table, concepts, graph),
        stop_words,
        manifest,
    })
}
