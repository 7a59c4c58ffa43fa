use alloc::vec::Vec;

use crate::{Error, Result};

fn check_pair(xs: &[f64], ys: &[f64]) -> Result<()> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch {
            left: xs.len(),
            right: ys.len(),
        });
    }
    if xs.len() < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: xs.len(),
        });
    }
    Ok(())
}

/// Pearson product-moment correlation.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    check_pair(xs, ys)?;
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::ConstantSequence);
    }
    Ok((sxy / libm::sqrt(sxx * syy)).clamp(-1.0, 1.0))
}

/// 1-based ranks; tied values share the mean of their positions.
pub fn ranks(xs: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut ranks = alloc::vec![0.0; xs.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && xs[order[j + 1]] == xs[order[i]] {
            j += 1;
        }
        let mean = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = mean;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman rank correlation: Pearson correlation of tie-averaged ranks.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Result<f64> {
    check_pair(xs, ys)?;
    pearson(&ranks(xs), &ranks(ys))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Tail {
    #[default]
    TwoSided,
    /// Upper tail beyond the observed |z|: half the two-sided value.
    OneSided,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FisherZ {
    /// Standardized difference of the transformed correlations.
    pub z: f64,
    pub p_two_sided: f64,
    pub p_one_sided: f64,
}

/// Compare two independent correlations through `atanh`, each with variance
/// `1 / (n - 3)`.
pub fn fisher_z(r1: f64, r2: f64, n1: usize, n2: usize) -> Result<FisherZ> {
    for r in [r1, r2] {
        if !(r.abs() < 1.0) {
            return Err(Error::CorrelationOutOfRange(r));
        }
    }
    for n in [n1, n2] {
        if n <= 3 {
            return Err(Error::SampleTooSmall(n));
        }
    }
    let se = libm::sqrt(1.0 / (n1 - 3) as f64 + 1.0 / (n2 - 3) as f64);
    let z = (libm::atanh(r1) - libm::atanh(r2)) / se;
    let p_two_sided = libm::erfc(libm::fabs(z) / core::f64::consts::SQRT_2);
    Ok(FisherZ {
        z,
        p_two_sided,
        p_one_sided: p_two_sided / 2.0,
    })
}

pub fn fisher_z_pvalue(r1: f64, r2: f64, n1: usize, n2: usize, tail: Tail) -> Result<f64> {
    let f = fisher_z(r1, r2, n1, n2)?;
    Ok(match tail {
        Tail::TwoSided => f.p_two_sided,
        Tail::OneSided => f.p_one_sided,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SplitAgreement {
    pub rho: f64,
    /// Pairs with no judgment in one of the halves.
    pub excluded: usize,
}

/// Spearman correlation between the mean scores of two groups of judges.
///
/// `scores[p][j]` is judge `j`'s score for pair `p` (absent when the judge
/// did not score it); `in_first_half[j]` assigns judge `j` to a group.
pub fn split_judge_agreement(scores: &[Vec<Option<f64>>], in_first_half: &[bool]) -> Result<SplitAgreement> {
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut excluded = 0;
    for row in scores {
        let mean = |half: bool| {
            let vals: Vec<f64> = row
                .iter()
                .zip(in_first_half)
                .filter(|(_, &h)| h == half)
                .filter_map(|(s, _)| *s)
                .collect();
            (!vals.is_empty()).then(|| vals.iter().sum::<f64>() / vals.len() as f64)
        };
        match (mean(true), mean(false)) {
            (Some(x), Some(y)) => {
                a.push(x);
                b.push(y);
            }
            _ => excluded += 1,
        }
    }
    Ok(SplitAgreement {
        rho: spearman(&a, &b)?,
        excluded,
    })
}
