//! Template inclusion: `{{Name|arg|key=value}}` with `{{{1}}}` / `{{{key|default}}}`
//! parameter references inside template bodies.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{normalize_title, ArticleKind, RawArticle};

/// Nesting limit for template expansion.
pub const MAX_TEMPLATE_DEPTH: usize = 8;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TemplateStore {
    bodies: BTreeMap<String, String>,
}

impl TemplateStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Collect every `template`-kind record. A `Template:` title prefix is
    /// optional.
    pub fn from_articles<'a, I: IntoIterator<Item = &'a RawArticle>>(articles: I) -> Self {
        let mut store = Self::new();
        for a in articles.into_iter().filter(|a| a.kind == ArticleKind::Template) {
            store.insert(&a.title, a.body.clone());
        }
        store
    }

    pub fn insert(&mut self, name: &str, body: impl Into<String>) {
        self.bodies.insert(template_key(name), body.into());
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.bodies.get(&template_key(name)).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.bodies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bodies.is_empty()
    }
}

fn template_key(name: &str) -> String {
    let name = name.trim();
    let name = name.strip_prefix("Template:").unwrap_or(name);
    normalize_title(name)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Expansion {
    pub text: String,
    pub unknown_templates: usize,
    pub depth_exceeded: usize,
}

/// Expand every template reference in `body`, at most `max_depth` levels deep.
///
/// Unknown templates expand to nothing; references past the depth limit are
/// left verbatim. Both are counted in the result.
pub fn resolve_templates(body: &str, store: &TemplateStore, max_depth: usize) -> Expansion {
    let mut ex = Expander {
        store,
        max_depth,
        unknown: 0,
        exceeded: 0,
    };
    let text = ex.expand(body, None, 0);
    Expansion {
        text,
        unknown_templates: ex.unknown,
        depth_exceeded: ex.exceeded,
    }
}

#[derive(Debug, Default)]
struct Args {
    positional: Vec<String>,
    named: BTreeMap<String, String>,
}

impl Args {
    fn get(&self, key: &str) -> Option<&str> {
        if let Ok(n) = key.parse::<usize>() {
            if n >= 1 {
                if let Some(v) = self.positional.get(n - 1) {
                    return Some(v);
                }
            }
        }
        self.named.get(key).map(String::as_str)
    }
}

struct Expander<'a> {
    store: &'a TemplateStore,
    max_depth: usize,
    unknown: usize,
    exceeded: usize,
}

impl Expander<'_> {
    fn expand(&mut self, text: &str, args: Option<&Args>, depth: usize) -> String {
        let mut out = String::with_capacity(text.len());
        let mut pos = 0;
        while pos < text.len() {
            let rest = &text[pos..];
            if rest.starts_with("{{{") {
                if let Some(end) = find_close(text, pos) {
                    let inner = &text[pos + 3..end - 3];
                    out.push_str(&self.parameter(inner, &text[pos..end], args, depth));
                    pos = end;
                    continue;
                }
            } else if rest.starts_with("{{") {
                if let Some(end) = find_close(text, pos) {
                    if depth >= self.max_depth {
                        self.exceeded += 1;
                        out.push_str(&text[pos..end]);
                    } else {
                        let inner = &text[pos + 2..end - 2];
                        out.push_str(&self.include(inner, args, depth));
                    }
                    pos = end;
                    continue;
                }
            }
            let c = rest.chars().next().unwrap();
            out.push(c);
            pos += c.len_utf8();
        }
        out
    }

    fn parameter(&mut self, inner: &str, verbatim: &str, args: Option<&Args>, depth: usize) -> String {
        let (name, default) = match split_top_level(inner).split_first() {
            Some((name, rest)) if !rest.is_empty() => (name.to_string(), Some(rest.join("|"))),
            _ => (inner.to_string(), None),
        };
        let name = name.trim();
        if let Some(value) = args.and_then(|a| a.get(name)) {
            return value.to_string();
        }
        match default {
            Some(d) => self.expand(&d, args, depth),
            None => verbatim.to_string(),
        }
    }

    fn include(&mut self, inner: &str, args: Option<&Args>, depth: usize) -> String {
        let parts = split_top_level(inner);
        let name = self.expand(parts[0], args, depth);
        let mut call_args = Args::default();
        for part in &parts[1..] {
            let value = self.expand(part, args, depth);
            match named_arg(&value) {
                Some((k, v)) => {
                    call_args.named.insert(k.to_string(), v.to_string());
                }
                None => call_args.positional.push(value),
            }
        }
        match self.store.get(&name) {
            Some(body) => self.expand(body, Some(&call_args), depth + 1),
            None => {
                self.unknown += 1;
                String::new()
            }
        }
    }
}

fn named_arg(value: &str) -> Option<(&str, &str)> {
    let (k, v) = value.split_once('=')?;
    let k = k.trim();
    if k.is_empty() || !k.chars().all(|c| c.is_alphanumeric() || c == '_' || c == ' ') {
        return None;
    }
    Some((k, v.trim()))
}

/// Byte index just past the construct opening at `start` (`{{{`, `{{` or `[[`).
fn find_close(text: &str, start: usize) -> Option<usize> {
    let rest = &text[start..];
    let (open_len, close) = if rest.starts_with("{{{") {
        (3, "}}}")
    } else if rest.starts_with("{{") {
        (2, "}}")
    } else if rest.starts_with("[[") {
        (2, "]]")
    } else {
        return None;
    };
    let mut pos = start + open_len;
    while pos < text.len() {
        let rest = &text[pos..];
        if rest.starts_with(close) {
            return Some(pos + close.len());
        }
        if rest.starts_with("{{") || rest.starts_with("[[") {
            pos = find_close(text, pos)?;
            continue;
        }
        pos += rest.chars().next().unwrap().len_utf8();
    }
    None
}

/// Split at `|` characters that are not nested inside braces or links.
fn split_top_level(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut start = 0;
    let mut pos = 0;
    while pos < text.len() {
        let rest = &text[pos..];
        if rest.starts_with("{{") || rest.starts_with("[[") {
            if let Some(end) = find_close(text, pos) {
                pos = end;
                continue;
            }
        }
        let c = rest.chars().next().unwrap();
        if c == '|' {
            parts.push(&text[start..pos]);
            start = pos + 1;
        }
        pos += c.len_utf8();
    }
    parts.push(&text[start..]);
    parts
}
