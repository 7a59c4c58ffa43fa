use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Norm {
    /// Unit-length columns (one per concept).
    Columns,
    /// Unit-length rows (one per term).
    Rows,
}

/// Dense term × concept table.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseTable {
    pub terms: Vec<String>,
    /// `weights[term][concept]`
    pub weights: Vec<Vec<f64>>,
}

impl DenseTable {
    pub fn row(&self, term: &str) -> Option<&[f64]> {
        self.terms.iter().position(|t| t == term).map(|i| self.weights[i].as_slice())
    }

    pub fn n_concepts(&self) -> usize {
        self.weights.first().map_or(0, Vec::len)
    }

    /// Centroid of the rows of `tokens`, unknown tokens counting toward the
    /// divisor.
    pub fn centroid(&self, tokens: &[&str]) -> Vec<f64> {
        let mut v = vec![0.0; self.n_concepts()];
        if tokens.is_empty() {
            return v;
        }
        for t in tokens {
            if let Some(row) = self.row(t) {
                for (j, w) in row.iter().enumerate() {
                    v[j] += w;
                }
            }
        }
        for x in v.iter_mut() {
            *x /= tokens.len() as f64;
        }
        v
    }
}

/// TF-IDF by direct triple loop over terms, documents and tokens.
///
/// `docs[j]` is the token list of concept `j`; only `vocabulary` terms count.
pub fn oracle_tfidf(docs: &[Vec<String>], vocabulary: &BTreeSet<String>, norm: Norm) -> DenseTable {
    let n = docs.len();
    let terms: Vec<String> = vocabulary
        .iter()
        .filter(|t| docs.iter().any(|d| d.contains(t)))
        .cloned()
        .collect();
    let mut weights = vec![vec![0.0; n]; terms.len()];
    for (i, term) in terms.iter().enumerate() {
        let mut df = 0;
        for doc in docs {
            if doc.iter().any(|t| t == term) {
                df += 1;
            }
        }
        for (j, doc) in docs.iter().enumerate() {
            let mut count = 0;
            for t in doc {
                if t == term {
                    count += 1;
                }
            }
            let tf = if count > 0 { 1.0 + (count as f64).ln() } else { 0.0 };
            weights[i][j] = tf * (n as f64 / df as f64).ln();
        }
    }
    match norm {
        Norm::Columns => {
            for j in 0..n {
                let mut s = 0.0;
                for row in &weights {
                    s += row[j] * row[j];
                }
                let len = s.sqrt();
                if len > 0.0 {
                    for row in weights.iter_mut() {
                        row[j] /= len;
                    }
                }
            }
        }
        Norm::Rows => {
            for row in weights.iter_mut() {
                let len = row.iter().map(|w| w * w).sum::<f64>().sqrt();
                if len > 0.0 {
                    for w in row.iter_mut() {
                        *w /= len;
                    }
                }
            }
        }
    }
    DenseTable { terms, weights }
}

/// Number of postings kept by the sliding-window rule, checking every start
/// index explicitly. The top posting always survives.
pub fn oracle_prune(weights: &[f64], window: usize, fraction: f64) -> usize {
    if weights.len() < window {
        return weights.len();
    }
    let top = weights[0];
    let mut start = 0;
    while start + window <= weights.len() {
        let first = weights[start];
        let last = weights[start + window - 1];
        if first - last < fraction * top {
            return if start == 0 { 1 } else { start };
        }
        start += 1;
    }
    weights.len()
}

/// Dense second-order expansion: `w2[i] = w1[i] + alpha * sum of w1[j]` over
/// links `j -> i` that pass `keep`.
pub fn second_order(
    w1: &[f64],
    links: &[(usize, usize)],
    alpha: f64,
    keep: impl Fn(usize, usize) -> bool,
) -> Vec<f64> {
    let mut w2 = w1.to_vec();
    for i in 0..w1.len() {
        for &(j, target) in links {
            if target == i && keep(j, i) {
                w2[i] += alpha * w1[j];
            }
        }
    }
    w2
}

pub fn cosine(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        dot / (na * nb)
    }
}
