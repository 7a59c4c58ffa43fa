use alloc::string::String;
use alloc::vec::Vec;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrPoint {
    pub precision: f64,
    pub recall: f64,
}

impl PrPoint {
    pub fn new(precision: f64, recall: f64) -> Self {
        PrPoint { precision, recall }
    }

    fn gap(&self) -> f64 {
        self.precision - self.recall
    }
}

/// One precision-recall point per distinct score, thresholds descending.
///
/// At threshold `s` every item scoring `>= s` is predicted positive.
/// Thresholds above the first true positive are skipped: their point is
/// (0, 0), which sits on the diagonal without being a break-even point.
pub fn pr_curve(scored: &[(f64, bool)]) -> Result<Vec<PrPoint>> {
    let positives = scored.iter().filter(|(_, y)| *y).count();
    if positives == 0 {
        return Err(Error::NoPositives(String::from("score list")));
    }
    let mut sorted: Vec<(f64, bool)> = scored.to_vec();
    sorted.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut points = Vec::new();
    let (mut predicted, mut hits) = (0usize, 0usize);
    let mut i = 0;
    while i < sorted.len() {
        let threshold = sorted[i].0;
        while i < sorted.len() && sorted[i].0 == threshold {
            predicted += 1;
            hits += usize::from(sorted[i].1);
            i += 1;
        }
        if hits > 0 {
            points.push(PrPoint::new(hits as f64 / predicted as f64, hits as f64 / positives as f64));
        }
    }
    Ok(points)
}

/// Where the line through `a` and `b` crosses precision = recall.
fn crossing(a: PrPoint, b: PrPoint) -> Option<f64> {
    let (ga, gb) = (a.gap(), b.gap());
    if ga == gb {
        return None;
    }
    let t = ga / (ga - gb);
    Some(a.precision + t * (b.precision - a.precision))
}

/// Break-even point of a sequence of points ordered by threshold.
///
/// An exact crossing is returned as is; otherwise the first adjacent pair on
/// opposite sides of the diagonal is interpolated linearly. If every point is
/// on the same side, the line through the two points closest to the diagonal
/// is extrapolated.
pub fn bep(points: &[PrPoint]) -> Result<f64> {
    if let Some(p) = points.iter().find(|p| p.gap() == 0.0) {
        return Ok(p.precision);
    }
    if let Some(w) = points.windows(2).find(|w| (w[0].gap() > 0.0) != (w[1].gap() > 0.0)) {
        return crossing(w[0], w[1]).ok_or(Error::NoBreakEven);
    }
    if points.len() < 2 {
        return Err(Error::NoBreakEven);
    }
    let mut by_distance: Vec<&PrPoint> = points.iter().collect();
    by_distance.sort_by(|a, b| libm::fabs(a.gap()).total_cmp(&libm::fabs(b.gap())));
    crossing(*by_distance[0], *by_distance[1])
        .map(|v| v.clamp(0.0, 1.0))
        .ok_or(Error::NoBreakEven)
}

/// Classifier scores of the test documents for one category, with their
/// true membership.
#[derive(Debug, Clone, PartialEq)]
pub struct CategoryScores {
    pub name: String,
    pub scored: Vec<(f64, bool)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BepSummary {
    pub micro: f64,
    pub macro_: f64,
    pub per_category: Vec<(String, f64)>,
    /// Categories with no positive test documents, left out of the macro mean.
    pub excluded: Vec<String>,
}

/// Micro BEP pools every document-category decision into one curve; macro
/// BEP averages the per-category values.
pub fn micro_macro_bep(categories: &[CategoryScores]) -> Result<BepSummary> {
    let mut per_category = Vec::new();
    let mut excluded = Vec::new();
    for cat in categories {
        if !cat.scored.iter().any(|(_, y)| *y) {
            excluded.push(cat.name.clone());
            continue;
        }
        per_category.push((cat.name.clone(), bep(&pr_curve(&cat.scored)?)?));
    }
    if per_category.is_empty() {
        return Err(Error::NoPositives(String::from("every category")));
    }
    let pooled: Vec<(f64, bool)> = categories.iter().flat_map(|c| c.scored.iter().copied()).collect();
    let micro = bep(&pr_curve(&pooled)?)?;
    let macro_ = per_category.iter().map(|(_, b)| b).sum::<f64>() / per_category.len() as f64;
    Ok(BepSummary {
        micro,
        macro_,
        per_category,
        excluded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn leading_negatives_do_not_count_as_break_even() {
        let scored = [(0.9, false), (0.8, true), (0.7, false), (0.6, true)];
        let curve = pr_curve(&scored).unwrap();
        assert_eq!(curve[0], PrPoint::new(0.5, 0.5));
        assert_eq!(curve.len(), 3);
        assert_eq!(bep(&curve).unwrap(), 0.5);
    }

    #[test]
    fn exact_crossing() {
        assert_eq!(bep(&[PrPoint::new(0.9, 0.3), PrPoint::new(0.7, 0.7)]).unwrap(), 0.7);
    }

    #[test]
    fn symmetric_midpoint() {
        let v = bep(&[PrPoint::new(0.8, 0.6), PrPoint::new(0.6, 0.8)]).unwrap();
        assert!((v - 0.7).abs() < 1e-15);
    }

    #[test]
    fn interpolates_bracketing_pair() {
        let pts = [PrPoint::new(0.9, 0.5), PrPoint::new(0.8, 0.6), PrPoint::new(0.55, 0.75)];
        // gaps .2 and -.2: halfway between the last two points
        assert!((bep(&pts).unwrap() - 0.675).abs() < 1e-12);
    }

    #[test]
    fn extrapolates_one_sided_points() {
        let pts = [PrPoint::new(0.9, 0.3), PrPoint::new(0.8, 0.5)];
        // gaps .6 and .3 -> t = 2 -> precision 0.7, recall 0.7
        assert!((bep(&pts).unwrap() - 0.7).abs() < 1e-12);
        assert_eq!(bep(&[PrPoint::new(0.9, 0.3)]), Err(Error::NoBreakEven));
    }

    #[test]
    fn curve_from_scores() {
        let pts = pr_curve(&[(0.9, true), (0.8, false), (0.8, true), (0.1, false)]).unwrap();
        assert_eq!(pts, [PrPoint::new(1.0, 0.5), PrPoint::new(2.0 / 3.0, 1.0), PrPoint::new(0.5, 1.0)]);
        assert!(pr_curve(&[(0.3, false)]).is_err());
    }

    #[test]
    fn single_category_micro_equals_macro() {
        let cat = CategoryScores {
            name: "a".into(),
            scored: vec![(0.9, true), (0.7, false), (0.6, true), (0.2, false), (0.1, true)],
        };
        let s = micro_macro_bep(&[cat.clone()]).unwrap();
        assert_eq!(s.micro, s.macro_);
        assert_eq!(s.micro, bep(&pr_curve(&cat.scored).unwrap()).unwrap());
    }

    #[test]
    fn empty_category_excluded_from_macro() {
        let cats = [
            CategoryScores { name: "a".into(), scored: vec![(0.9, true), (0.1, false)] },
            CategoryScores { name: "b".into(), scored: vec![(0.5, false)] },
        ];
        let s = micro_macro_bep(&cats).unwrap();
        assert_eq!(s.excluded, ["b"]);
        assert_eq!(s.macro_, 1.0);
    }
}
