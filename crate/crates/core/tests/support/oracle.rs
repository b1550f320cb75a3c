// Brute-force evaluation of min E[Φ(Π)] over distributions with mean r and
// variance v. Kept independent of the library solver: the two-point family is
// scanned on a dense linear-plus-logarithmic grid in p, and the three-point
// family is scanned over (p1, p3, d1) with d3 recovered from the variance
// equation.

#![allow(dead_code)]

use mv_awgn::special::norm_cdf;

pub fn two_point_grid(r: f64, v: f64) -> f64 {
    let mut best = norm_cdf(r);
    let mut ps: Vec<f64> = (1..20_000).map(|k| k as f64 / 20_000.0).collect();
    for e in 0..400 {
        let small = 10f64.powf(-9.0 + 5.0 * e as f64 / 400.0);
        ps.push(small);
        ps.push(1.0 - small);
    }
    for p in ps {
        let hi = r + (v * (1.0 - p) / p).sqrt();
        let lo = r - (v * p / (1.0 - p)).sqrt();
        let val = p * norm_cdf(hi) + (1.0 - p) * norm_cdf(lo);
        if val < best {
            best = val;
        }
    }
    best
}

pub fn three_point_grid(r: f64, v: f64) -> f64 {
    let s = v.sqrt();
    let mut best = f64::INFINITY;
    let probs: Vec<f64> = (0..30).map(|k| 10f64.powf(-4.0 + 3.9 * k as f64 / 29.0)).collect();
    for &p1 in &probs {
        for &p3 in &probs {
            let p2 = 1.0 - p1 - p3;
            if p2 <= 1e-9 {
                continue;
            }
            for k in 0..60 {
                let d1 = -s * 10f64.powf(-2.0 + 3.5 * k as f64 / 59.0);
                // p1 d1² + p3 d3² + (p1 d1 + p3 d3)² / p2 = v, solved for d3.
                let a = p3 + p3 * p3 / p2;
                let b = 2.0 * p1 * p3 * d1 / p2;
                let c = p1 * d1 * d1 + p1 * p1 * d1 * d1 / p2 - v;
                let disc = b * b - 4.0 * a * c;
                if disc < 0.0 {
                    continue;
                }
                for d3 in [(-b + disc.sqrt()) / (2.0 * a), (-b - disc.sqrt()) / (2.0 * a)] {
                    let d2 = -(p1 * d1 + p3 * d3) / p2;
                    let val = p1 * norm_cdf(r + d1) + p2 * norm_cdf(r + d2) + p3 * norm_cdf(r + d3);
                    if val < best {
                        best = val;
                    }
                }
            }
        }
    }
    best
}

/// Grid-search value of K(r, v).
pub fn k_brute_force(r: f64, v: f64) -> f64 {
    if v == 0.0 {
        return norm_cdf(r);
    }
    two_point_grid(r, v).min(three_point_grid(r, v))
}
