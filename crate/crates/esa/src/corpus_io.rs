//! Line-delimited JSON corpus reader.

use std::collections::BTreeSet;
use std::io::BufRead;
use std::str::FromStr;

use esa_core::corpus::{ArticleKind, RawArticle};
use esa_core::ArticleId;
use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// Read one article per non-blank line. Records are numbered from 1 in
/// errors.
pub fn parse_corpus<R: BufRead>(reader: R) -> Result<Vec<RawArticle>> {
    let mut articles = Vec::new();
    let mut seen = BTreeSet::new();
    let mut record = 0;
    for line in reader.lines() {
        let line = line.map_err(|e| Error::Record {
            record: record + 1,
            field: "line",
            message: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        record += 1;
        let article = parse_record(&line, record)?;
        if !seen.insert(article.id) {
            return Err(Error::DuplicateId {
                record,
                id: article.id.0,
            });
        }
        articles.push(article);
    }
    Ok(articles)
}

fn parse_record(line: &str, record: usize) -> Result<RawArticle> {
    let err = |field, message: String| Error::Record { record, field, message };
    let value: Value = serde_json::from_str(line).map_err(|e| err("json", e.to_string()))?;
    let Value::Object(obj) = value else {
        return Err(err("json", "expected an object".into()));
    };
    let id = obj
        .get("id")
        .ok_or_else(|| err("id", "missing".into()))?
        .as_u64()
        .and_then(|n| u32::try_from(n).ok())
        .ok_or_else(|| err("id", "expected an unsigned 32-bit integer".into()))?;
    let title = required_str(&obj, "title", record)?;
    let text = optional_str(&obj, "text", record)?.unwrap_or_default();
    let redirect = optional_str(&obj, "redirect", record)?;
    let kind = match optional_str(&obj, "kind", record)? {
        Some(k) => ArticleKind::from_str(&k).map_err(|_| err("kind", format!("unknown kind {k:?}")))?,
        None => ArticleKind::Regular,
    };
    if redirect.is_none() && !obj.contains_key("text") {
        return Err(err("text", "missing".into()));
    }
    Ok(RawArticle {
        id: ArticleId(id),
        title,
        body: text,
        redirect_target: redirect,
        kind,
    })
}

fn required_str(obj: &Map<String, Value>, field: &'static str, record: usize) -> Result<String> {
    optional_str(obj, field, record)?.ok_or_else(|| Error::Record {
        record,
        field,
        message: "missing".into(),
    })
}

fn optional_str(obj: &Map<String, Value>, field: &'static str, record: usize) -> Result<Option<String>> {
    match obj.get(field) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => Ok(Some(s.clone())),
        Some(_) => Err(Error::Record {
            record,
            field,
            message: "expected a string".into(),
        }),
    }
}
