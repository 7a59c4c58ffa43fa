/// Intersection of the line through `(r1, p1)` and `(r2, p2)` with the
/// diagonal `p = r`, by Cramer's rule on the two line equations.
pub fn line_intersection((p1, r1): (f64, f64), (p2, r2): (f64, f64)) -> f64 {
    // line: (p2 - p1) * (r - r1) - (r2 - r1) * (p - p1) = 0, with p = r = x
    // => x * ((p2 - p1) - (r2 - r1)) = (p2 - p1) * r1 - (r2 - r1) * p1
    let a = (p2 - p1) - (r2 - r1);
    let c = (p2 - p1) * r1 - (r2 - r1) * p1;
    c / a
}

/// `(precision, recall)` at every distinct threshold with at least one true
/// positive, counted from scratch.
pub fn pooled_curve(scored: &[(f64, bool)]) -> Vec<(f64, f64)> {
    let mut thresholds: Vec<f64> = scored.iter().map(|s| s.0).collect();
    thresholds.sort_by(|a, b| b.partial_cmp(a).unwrap());
    thresholds.dedup();
    let positives = scored.iter().filter(|s| s.1).count() as f64;
    let mut curve = Vec::new();
    for &t in &thresholds {
        let tp = scored.iter().filter(|s| s.0 >= t && s.1).count() as f64;
        let predicted = scored.iter().filter(|s| s.0 >= t).count() as f64;
        if tp > 0.0 {
            curve.push((tp / predicted, tp / positives));
        }
    }
    curve
}

/// Break-even of a curve: exact crossing or interpolation across the first
/// sign change of precision - recall.
pub fn curve_bep(curve: &[(f64, f64)]) -> Option<f64> {
    for &(p, r) in curve {
        if p == r {
            return Some(p);
        }
    }
    for k in 1..curve.len() {
        let d0 = curve[k - 1].0 - curve[k - 1].1;
        let d1 = curve[k].0 - curve[k].1;
        if (d0 > 0.0) != (d1 > 0.0) {
            return Some(line_intersection(curve[k - 1], curve[k]));
        }
    }
    None
}
