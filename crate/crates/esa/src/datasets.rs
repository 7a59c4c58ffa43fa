//! Evaluation datasets: judged word pairs, judged document pairs and
//! labeled categorization corpora.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use esa_core::features::LabeledDocument;
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct JudgedPair {
    pub a: String,
    pub b: String,
    pub score: f64,
}

/// Pairs with their human scores, optional per-judge scores and any extra
/// numeric columns, kept as named baselines.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PairDataset {
    pub pairs: Vec<JudgedPair>,
    /// `judges[p][j]`; empty when the file has no judge columns.
    pub judges: Vec<Vec<Option<f64>>>,
    pub judge_names: Vec<String>,
    pub baselines: BTreeMap<String, Vec<f64>>,
}

impl PairDataset {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn human_scores(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.score).collect()
    }
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::io(path, e))
}

fn dataset_error(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Dataset {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

fn parse_number(path: &Path, line: usize, column: &str, s: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| dataset_error(path, line, format!("{column}: {s:?} is not a number")))?;
    if !v.is_finite() {
        return Err(dataset_error(path, line, format!("{column}: value must be finite")));
    }
    Ok(v)
}

/// Read a pair CSV whose first two key columns are `key_a` and `key_b`.
/// `judgeN` columns become per-judge scores; other columns are baselines.
fn read_pairs<R: Read>(reader: R, path: &Path, key_a: &str, key_b: &str, score_range: Option<(f64, f64)>) -> Result<PairDataset> {
    let mut csv = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = csv
        .headers()
        .map_err(|e| dataset_error(path, 1, e.to_string()))?
        .clone();
    if headers.is_empty() {
        return Err(Error::EmptyDataset(path.to_path_buf()));
    }
    let find = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| dataset_error(path, 1, format!("missing column {name:?}")))
    };
    let (ia, ib, is) = (find(key_a)?, find(key_b)?, find("score")?);
    let mut judge_cols = Vec::new();
    let mut baseline_cols = Vec::new();
    for (i, h) in headers.iter().enumerate() {
        if i == ia || i == ib || i == is {
            continue;
        }
        match h.strip_prefix("judge").and_then(|n| n.parse::<u32>().ok()) {
            Some(n) => judge_cols.push((n, i, h.to_string())),
            None => baseline_cols.push((i, h.to_string())),
        }
    }
    judge_cols.sort();

    let mut data = PairDataset {
        judge_names: judge_cols.iter().map(|j| j.2.clone()).collect(),
        baselines: baseline_cols.iter().map(|(_, h)| (h.clone(), Vec::new())).collect(),
        ..PairDataset::default()
    };
    for record in csv.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            dataset_error(path, line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let score = parse_number(path, line, "score", &record[is])?;
        if let Some((lo, hi)) = score_range {
            if !(lo..=hi).contains(&score) {
                return Err(dataset_error(path, line, format!("score {score} outside [{lo}, {hi}]")));
            }
        }
        if record[ia].is_empty() || record[ib].is_empty() {
            return Err(dataset_error(path, line, "empty pair item"));
        }
        let judges = judge_cols
            .iter()
            .map(|(_, i, name)| match &record[*i] {
                "" => Ok(None),
                s => parse_number(path, line, name, s).map(Some),
            })
            .collect::<Result<Vec<_>>>()?;
        if !judge_cols.is_empty() {
            data.judges.push(judges);
        }
        for (i, name) in &baseline_cols {
            let v = parse_number(path, line, name, &record[*i])?;
            data.baselines.get_mut(name).unwrap().push(v);
        }
        data.pairs.push(JudgedPair {
            a: record[ia].to_string(),
            b: record[ib].to_string(),
            score,
        });
    }
    if data.pairs.is_empty() {
        return Err(Error::EmptyDataset(path.to_path_buf()));
    }
    Ok(data)
}

/// Word-pair CSV: `word1,word2,score` with scores in [0, 10], optional
/// `judge1..judgeK` columns and optional baseline columns.
pub fn load_word_pairs(path: &Path) -> Result<PairDataset> {
    read_pairs(open(path)?, path, "word1", "word2", Some((0.0, 10.0)))
}

pub fn parse_word_pairs<R: Read>(reader: R, path: &Path) -> Result<PairDataset> {
    read_pairs(reader, path, "word1", "word2", Some((0.0, 10.0)))
}

/// Document pairs whose items have been replaced by document texts.
#[derive(Debug, Clone, PartialEq)]
pub struct DocPairs {
    pub documents: BTreeMap<String, String>,
    pub data: PairDataset,
}

/// Document-pair CSV `doc_id_a,doc_id_b,score` plus a JSONL file of
/// `{id, text}` documents. Every referenced id must exist.
pub fn load_doc_pairs(pairs_path: &Path, docs_path: &Path) -> Result<DocPairs> {
    let documents = load_documents(docs_path)?;
    let data = read_pairs(open(pairs_path)?, pairs_path, "doc_id_a", "doc_id_b", None)?;
    for (i, p) in data.pairs.iter().enumerate() {
        for id in [&p.a, &p.b] {
            if !documents.contains_key(id) {
                return Err(dataset_error(pairs_path, i + 2, format!("unknown document id {id:?}")));
            }
        }
    }
    Ok(DocPairs { documents, data })
}

fn json_lines(path: &Path) -> Result<Vec<(usize, serde_json::Map<String, Value>)>> {
    let mut out = Vec::new();
    for (i, line) in BufReader::new(open(path)?).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str(&line) {
            Ok(Value::Object(obj)) => out.push((i + 1, obj)),
            Ok(_) => return Err(dataset_error(path, i + 1, "expected a JSON object")),
            Err(e) => return Err(dataset_error(path, i + 1, e.to_string())),
        }
    }
    if out.is_empty() {
        return Err(Error::EmptyDataset(path.to_path_buf()));
    }
    Ok(out)
}

/// Ids may be JSON strings or integers; both are kept as text.
fn id_field(path: &Path, line: usize, obj: &serde_json::Map<String, Value>) -> Result<String> {
    match obj.get("id") {
        Some(Value::String(s)) => Ok(s.clone()),
        Some(Value::Number(n)) => Ok(n.to_string()),
        _ => Err(dataset_error(path, line, "id: expected a string or integer")),
    }
}

fn str_field(path: &Path, line: usize, obj: &serde_json::Map<String, Value>, name: &str, required: bool) -> Result<String> {
    match obj.get(name) {
        Some(Value::String(s)) => Ok(s.clone()),
        None if !required => Ok(String::new()),
        _ => Err(dataset_error(path, line, format!("{name}: expected a string"))),
    }
}

pub fn load_documents(path: &Path) -> Result<BTreeMap<String, String>> {
    let mut docs = BTreeMap::new();
    for (line, obj) in json_lines(path)? {
        let id = id_field(path, line, &obj)?;
        let text = str_field(path, line, &obj, "text", true)?;
        if docs.insert(id.clone(), text).is_some() {
            return Err(dataset_error(path, line, format!("duplicate id {id:?}")));
        }
    }
    Ok(docs)
}

/// Labeled corpus: JSONL with `id`, `title`, `text` and `labels`.
pub fn load_labeled(path: &Path) -> Result<Vec<LabeledDocument>> {
    let mut docs = Vec::new();
    let mut seen = BTreeSet::new();
    for (line, obj) in json_lines(path)? {
        let id = id_field(path, line, &obj)?;
        if !seen.insert(id.clone()) {
            return Err(dataset_error(path, line, format!("duplicate id {id:?}")));
        }
        let labels = match obj.get("labels") {
            Some(Value::Array(items)) => items
                .iter()
                .map(|v| {
                    v.as_str()
                        .map(String::from)
                        .ok_or_else(|| dataset_error(path, line, "labels: expected strings"))
                })
                .collect::<Result<BTreeSet<_>>>()?,
            _ => return Err(dataset_error(path, line, "labels: expected an array")),
        };
        docs.push(LabeledDocument {
            id,
            title: str_field(path, line, &obj, "title", false)?,
            text: str_field(path, line, &obj, "text", true)?,
            labels,
        });
    }
    Ok(docs)
}
