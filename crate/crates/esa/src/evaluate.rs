//! Correlation of relatedness scores with human judgments.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use esa_core::eval::{fisher_z, pearson, spearman, split_judge_agreement, FisherZ, SplitAgreement};
use esa_core::semantics::{relatedness, InterpretationVector, Interpreter, RelatednessOptions};
use rayon::prelude::*;

use crate::datasets::{DocPairs, PairDataset};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Correlation {
    Spearman,
    Pearson,
}

impl Correlation {
    pub fn as_str(self) -> &'static str {
        match self {
            Correlation::Spearman => "spearman",
            Correlation::Pearson => "pearson",
        }
    }

    pub fn compute(self, xs: &[f64], ys: &[f64]) -> Result<f64> {
        Ok(match self {
            Correlation::Spearman => spearman(xs, ys)?,
            Correlation::Pearson => pearson(xs, ys)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineComparison {
    pub name: String,
    pub correlation: f64,
    /// `None` when either correlation is exactly -1 or 1.
    pub test: Option<FisherZ>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub method: Correlation,
    pub pairs: usize,
    /// Pairs where at least one item matched no concept; scored 0.
    pub empty: usize,
    pub correlation: f64,
    pub baselines: Vec<BaselineComparison>,
    pub judge_agreement: Option<SplitAgreement>,
    pub scores: Vec<f64>,
}

/// Score every pair, correlate with the human scores and compare with each
/// baseline column by Fisher's z test.
fn report(method: Correlation, data: &PairDataset, scored: Vec<(f64, bool)>) -> Result<EvalReport> {
    let scores: Vec<f64> = scored.iter().map(|s| s.0).collect();
    let human = data.human_scores();
    let correlation = method.compute(&scores, &human)?;
    let n = data.len();
    let mut baselines = Vec::new();
    for (name, values) in &data.baselines {
        let r = method.compute(values, &human)?;
        let test = match fisher_z(correlation, r, n, n) {
            Ok(t) => Some(t),
            Err(esa_core::Error::CorrelationOutOfRange(_)) => None,
            Err(e) => return Err(e.into()),
        };
        baselines.push(BaselineComparison {
            name: name.clone(),
            correlation: r,
            test,
        });
    }
    let judge_agreement = if data.judge_names.len() >= 2 {
        let half = data.judge_names.len() / 2;
        let split: Vec<bool> = (0..data.judge_names.len()).map(|j| j < half).collect();
        Some(split_judge_agreement(&data.judges, &split)?)
    } else {
        None
    };
    Ok(EvalReport {
        method,
        pairs: n,
        empty: scored.iter().filter(|s| s.1).count(),
        correlation,
        baselines,
        judge_agreement,
        scores,
    })
}

/// Word pairs, correlated by Spearman's rho.
pub fn eval_words(esa: &Interpreter<'_>, data: &PairDataset, options: &RelatednessOptions) -> Result<EvalReport> {
    let scored = data
        .pairs
        .par_iter()
        .map(|p| esa.relatedness(&p.a, &p.b, options).map(|r| (r.score, r.empty)))
        .collect::<Result<Vec<_>, _>>()?;
    report(Correlation::Spearman, data, scored)
}

/// Document pairs, correlated by Pearson's r. Each document is interpreted
/// once.
pub fn eval_docs(esa: &Interpreter<'_>, docs: &DocPairs, options: &RelatednessOptions) -> Result<EvalReport> {
    let ids: Vec<&String> = docs.documents.keys().collect();
    let vectors = ids
        .par_iter()
        .map(|id| esa.interpret_with(&docs.documents[*id], options))
        .collect::<Result<Vec<_>, _>>()?;
    let vectors: BTreeMap<&str, InterpretationVector> =
        ids.iter().map(|s| s.as_str()).zip(vectors).collect();
    let scored = docs
        .data
        .pairs
        .iter()
        .map(|p| {
            let r = relatedness(&vectors[p.a.as_str()], &vectors[p.b.as_str()]);
            (r.score, r.empty)
        })
        .collect();
    report(Correlation::Pearson, &docs.data, scored)
}

impl EvalReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "pairs        {}", self.pairs);
        let _ = writeln!(s, "empty        {}", self.empty);
        let _ = writeln!(s, "{:<12} {:.6}", self.method.as_str(), self.correlation);
        if let Some(a) = &self.judge_agreement {
            let _ = writeln!(s, "judge split  {:.6} ({} pairs excluded)", a.rho, a.excluded);
        }
        for b in &self.baselines {
            let _ = write!(s, "baseline {}: {} {:.6}", b.name, self.method.as_str(), b.correlation);
            let _ = match &b.test {
                Some(t) => writeln!(
                    s,
                    ", z {:.4}, p two-sided {:.3e}, p one-sided {:.3e}",
                    t.z, t.p_two_sided, t.p_one_sided
                ),
                None => writeln!(s, ", no z test (perfect correlation)"),
            };
        }
        s
    }

    /// One summary row for ESA and one per baseline.
    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["system", "method", "correlation", "pairs", "empty", "z", "p_two_sided", "p_one_sided"])?;
        let method = self.method.as_str();
        w.write_record([
            "esa",
            method,
            &self.correlation.to_string(),
            &self.pairs.to_string(),
            &self.empty.to_string(),
            "",
            "",
            "",
        ])?;
        for b in &self.baselines {
            let test = |f: fn(&FisherZ) -> f64| b.test.as_ref().map(|t| f(t).to_string()).unwrap_or_default();
            w.write_record([
                b.name.as_str(),
                method,
                &b.correlation.to_string(),
                &self.pairs.to_string(),
                "",
                &test(|t| t.z),
                &test(|t| t.p_two_sided),
                &test(|t| t.p_one_sided),
            ])?;
        }
        w.into_inner().map_err(|e| Error::Csv(e.into_error().into()))
    }

    /// Per-pair scores next to the human judgments.
    pub fn scores_csv(&self, data: &PairDataset) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["a", "b", "human", "esa"])?;
        for (p, s) in data.pairs.iter().zip(&self.scores) {
            w.write_record([p.a.as_str(), p.b.as_str(), &p.score.to_string(), &s.to_string()])?;
        }
        w.into_inner().map_err(|e| Error::Csv(e.into_error().into()))
    }
}
