//! `ln I_ν(x)` for the modified Bessel function of the first kind.
//!
//! Three regimes:
//!
//! * `ν ≥ 50`: the uniform asymptotic expansion in `z = x/ν`,
//!   `ln I_ν(νz) ≈ νη − ½ln(2πν) − ¼ln(1+z²) + ln(1 + u₁(t)/ν)` with
//!   `η = √(1+z²) + ln(z / (1 + √(1+z²)))`, `t = (1+z²)^{-1/2}` and
//!   `u₁(t) = (3t − 5t³)/24`; the `u₂` and `u₃` Debye terms are added as
//!   well, which brings the error at `ν = 50` below `1e-6` in absolute terms
//!   (the `u₁` term alone leaves about `1e-5` near `z = 1`);
//! * `ν < 50`, `x ≤ 5000`: the ascending series
//!   `Σ_k (x/2)^{ν+2k} / (k! Γ(ν+k+1))`, summed relative to its largest term;
//! * `ν < 50`, `x > 5000`: the large-argument Hankel expansion.

use std::f64::consts::PI;

use crate::error::{invalid, Result};
use crate::special::ln_gamma;

/// Order at and above which the uniform asymptotic expansion is used.
pub const ASYMPTOTIC_ORDER: f64 = 50.0;

const SERIES_MAX_X: f64 = 5000.0;
const SERIES_MAX_TERMS: usize = 10_000;
const SERIES_REL_EPS: f64 = 1e-18;

/// `ln I_ν(x)` for `ν > −1`, `x > 0`.
pub fn log_bessel_i(nu: f64, x: f64) -> Result<f64> {
    if !(nu.is_finite() && nu > -1.0) {
        return Err(invalid(format!("Bessel order must be finite and > -1, got {nu}")));
    }
    if !(x.is_finite() && x > 0.0) {
        return Err(invalid(format!("Bessel argument must be positive, got {x}")));
    }
    Ok(if nu >= ASYMPTOTIC_ORDER {
        log_bessel_i_uniform(nu, x)
    } else if x <= SERIES_MAX_X {
        log_bessel_i_series(nu, x)
    } else {
        log_bessel_i_hankel(nu, x)
    })
}

/// Uniform asymptotic expansion with the `u₁`, `u₂` and `u₃` corrections.
pub fn log_bessel_i_uniform(nu: f64, x: f64) -> f64 {
    log_bessel_i_uniform_terms(nu, x, 3)
}

/// Uniform asymptotic expansion keeping the first `terms` (0 to 3) Debye
/// corrections `u_k(t) / ν^k`.
pub fn log_bessel_i_uniform_terms(nu: f64, x: f64, terms: usize) -> f64 {
    let z = x / nu;
    let t = 1.0 / (1.0 + z * z).sqrt();
    let t2 = t * t;
    let u = [
        t * (3.0 - 5.0 * t2) / 24.0,
        t2 * (81.0 + t2 * (-462.0 + t2 * 385.0)) / 1152.0,
        t * t2 * (30375.0 + t2 * (-369_603.0 + t2 * (765_765.0 - t2 * 425_425.0))) / 414_720.0,
    ];
    let mut corr = 0.0;
    let mut pow = 1.0;
    for uk in u.iter().take(terms.min(3)) {
        pow /= nu;
        corr += uk * pow;
    }
    log_bessel_i_uniform_leading(nu, x) + corr.ln_1p()
}

/// Leading term only, `νη − ½ln(2πν) − ¼ln(1+z²)`.
pub fn log_bessel_i_uniform_leading(nu: f64, x: f64) -> f64 {
    let z = x / nu;
    let sq = (1.0 + z * z).sqrt();
    let eta = sq + (z / (1.0 + sq)).ln();
    nu * eta - 0.5 * (2.0 * PI * nu).ln() - 0.5 * sq.ln()
}

/// Ascending series, summed outward from its largest term.
pub fn log_bessel_i_series(nu: f64, x: f64) -> f64 {
    let half = 0.5 * x;
    let q = half * half;
    // Largest term: ratio term_{k+1}/term_k = q / ((k+1)(ν+k+1)) crosses 1.
    let k0 = ((-(nu + 2.0) + (nu * nu + 4.0 * q).sqrt()) / 2.0).max(0.0).round() as usize;
    let k0f = k0 as f64;
    let log_peak = (nu + 2.0 * k0f) * half.ln() - ln_gamma(k0f + 1.0) - ln_gamma(nu + k0f + 1.0);

    let mut sum = 1.0;
    let mut used = 1;
    let mut term = 1.0;
    let mut k = k0;
    while used < SERIES_MAX_TERMS {
        let kf = k as f64;
        term *= q / ((kf + 1.0) * (nu + kf + 1.0));
        sum += term;
        used += 1;
        k += 1;
        if term < SERIES_REL_EPS * sum {
            break;
        }
    }
    term = 1.0;
    k = k0;
    while k > 0 && used < SERIES_MAX_TERMS {
        let kf = k as f64;
        term *= kf * (nu + kf) / q;
        sum += term;
        used += 1;
        k -= 1;
        if term < SERIES_REL_EPS * sum {
            break;
        }
    }
    log_peak + sum.ln()
}

/// `I_ν(x) ~ eˣ/√(2πx) Σ_k (−1)^k a_k(ν) / x^k`, truncated at the smallest term.
pub fn log_bessel_i_hankel(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut sum = 1.0;
    let mut term: f64 = 1.0;
    for k in 1..60 {
        let kf = k as f64;
        let next = -term * (mu - (2.0 * kf - 1.0).powi(2)) / (8.0 * kf * x);
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-17 {
            break;
        }
    }
    x - 0.5 * (2.0 * PI * x).ln() + sum.ln()
}
