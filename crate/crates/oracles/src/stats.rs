/// Ranks by counting: 1 + #smaller + (#equal - 1) / 2.
pub fn ranks(xs: &[f64]) -> Vec<f64> {
    xs.iter()
        .map(|&x| {
            let smaller = xs.iter().filter(|&&y| y < x).count() as f64;
            let equal = xs.iter().filter(|&&y| y == x).count() as f64;
            1.0 + smaller + (equal - 1.0) / 2.0
        })
        .collect()
}

/// Computational form of the product-moment correlation.
pub fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let syy: f64 = ys.iter().map(|y| y * y).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    (n * sxy - sx * sy) / ((n * sxx - sx * sx) * (n * syy - sy * sy)).sqrt()
}

pub fn spearman(xs: &[f64], ys: &[f64]) -> f64 {
    pearson(&ranks(xs), &ranks(ys))
}

/// Information gain as the mutual information of feature and class,
/// summed over the four joint cells, in bits.
pub fn information_gain(present: &[bool], positive: &[bool]) -> f64 {
    let n = present.len() as f64;
    let mut mi = 0.0;
    for f in [false, true] {
        for c in [false, true] {
            let joint = present.iter().zip(positive).filter(|(&a, &b)| a == f && b == c).count() as f64;
            if joint == 0.0 {
                continue;
            }
            let pf = present.iter().filter(|&&a| a == f).count() as f64 / n;
            let pc = positive.iter().filter(|&&b| b == c).count() as f64 / n;
            let pj = joint / n;
            mi += pj * (pj / (pf * pc)).log2();
        }
    }
    mi
}

/// Standard normal upper tail by Simpson integration of the density from
/// `z` to `z + 40`.
pub fn normal_upper_tail(z: f64) -> f64 {
    let steps = 200_000;
    let (a, b) = (z, z + 40.0);
    let h = (b - a) / steps as f64;
    let pdf = |x: f64| (-x * x / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let mut s = pdf(a) + pdf(b);
    for k in 1..steps {
        let x = a + k as f64 * h;
        s += if k % 2 == 1 { 4.0 } else { 2.0 } * pdf(x);
    }
    s * h / 3.0
}
