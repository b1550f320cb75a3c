//! Output densities of the AWGN channel for inputs uniform on a sphere,
//! evaluated in the log domain, and the typical shell on which their log
//! ratios are controlled.

mod bessel;
pub mod verify;

pub use bessel::{
    log_bessel_i, log_bessel_i_hankel, log_bessel_i_series, log_bessel_i_uniform, log_bessel_i_uniform_leading,
    log_bessel_i_uniform_terms, ASYMPTOTIC_ORDER,
};

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::special::{ln_gamma, ln_pi, log_sum_exp, HALF_LN_2PI};

/// Density of `Y = X + Z` with `X` uniform on the `(n−1)`-sphere of radius
/// `R` and `Z ~ N(0, N Iₙ)`. It depends on `y` only through `‖y‖²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShellOutputDensity {
    blocklength: usize,
    radius: f64,
    noise_variance: f64,
}

impl ShellOutputDensity {
    pub fn new(blocklength: usize, radius: f64, noise_variance: f64) -> Result<Self> {
        if blocklength == 0 {
            return Err(invalid("blocklength must be at least 1"));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(invalid(format!("shell radius must be positive, got {radius}")));
        }
        if !(noise_variance.is_finite() && noise_variance > 0.0) {
            return Err(invalid(format!("noise variance must be positive, got {noise_variance}")));
        }
        Ok(Self { blocklength, radius, noise_variance })
    }

    /// Shell of radius `√(nΓ)`.
    pub fn with_power(blocklength: usize, power: f64, noise_variance: f64) -> Result<Self> {
        if !(power > 0.0) {
            return Err(invalid(format!("shell power must be positive, got {power}")));
        }
        Self::new(blocklength, (blocklength as f64 * power).sqrt(), noise_variance)
    }

    pub fn blocklength(&self) -> usize {
        self.blocklength
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn noise_variance(&self) -> f64 {
        self.noise_variance
    }

    /// `ln Q^cc(y)` at `‖y‖² = y_norm_sq`:
    ///
    /// `ln Γ(n/2) − ln 2 − (n/2) ln(πN) − (R² + ‖y‖²)/(2N)
    ///  + (n/2 − 1) ln(N / (R‖y‖)) + ln I_{n/2−1}(R‖y‖/N)`.
    pub fn log_density(&self, y_norm_sq: f64) -> Result<f64> {
        if !(y_norm_sq.is_finite() && y_norm_sq > 0.0) {
            return Err(invalid(format!("squared norm must be positive, got {y_norm_sq}")));
        }
        let half_n = 0.5 * self.blocklength as f64;
        let nu = half_n - 1.0;
        let (r, nv) = (self.radius, self.noise_variance);
        let y_norm = y_norm_sq.sqrt();
        let arg = r * y_norm / nv;
        Ok(ln_gamma(half_n) - std::f64::consts::LN_2 - half_n * (ln_pi() + nv.ln()) - (r * r + y_norm_sq) / (2.0 * nv)
            + nu * (nv.ln() - r.ln() - y_norm.ln())
            + log_bessel_i(nu, arg)?)
    }

    /// Draws `Y = X + Z`: a uniform point on the shell (normalised Gaussian
    /// vector scaled to `R`) plus channel noise.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, buf: &mut Vec<f64>) {
        sample_on_sphere(self.blocklength, self.radius, rng, buf);
        let sd = self.noise_variance.sqrt();
        for y in buf.iter_mut() {
            let z: f64 = rng.sample(StandardNormal);
            *y += sd * z;
        }
    }
}

/// Fills `buf` with a point uniform on the `(n−1)`-sphere of radius `radius`.
pub fn sample_on_sphere<R: Rng + ?Sized>(n: usize, radius: f64, rng: &mut R, buf: &mut Vec<f64>) {
    buf.clear();
    loop {
        buf.extend((0..n).map(|_| rng.sample::<f64, _>(StandardNormal)));
        let norm_sq = sum_sq(buf);
        if norm_sq > 0.0 {
            let scale = radius / norm_sq.sqrt();
            buf.iter_mut().for_each(|x| *x *= scale);
            return;
        }
        buf.clear();
    }
}

/// `Σ x²`, with Neumaier compensation for long vectors.
pub fn sum_sq(xs: &[f64]) -> f64 {
    if xs.len() < 100_000 {
        return xs.iter().map(|x| x * x).sum();
    }
    let mut sum = 0.0;
    let mut comp = 0.0;
    for &x in xs {
        let v = x * x;
        let t = sum + v;
        if sum >= v {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// `ln Q*(y)` for `Q* = N(0, (Γ + N) Iₙ)` at `‖y‖² = y_norm_sq`.
pub fn log_qstar(gamma: f64, noise_variance: f64, n: usize, y_norm_sq: f64) -> f64 {
    let s2 = gamma + noise_variance;
    -(n as f64) * (HALF_LN_2PI + 0.5 * s2.ln()) - y_norm_sq / (2.0 * s2)
}

/// `ln Σ_j p_j Q_j^cc(y)` over components sharing blocklength and noise.
pub fn log_mixture_output(components: &[(f64, ShellOutputDensity)], y_norm_sq: f64) -> Result<f64> {
    check_mixture(components)?;
    let terms = components.iter().map(|(w, d)| Ok(w.ln() + d.log_density(y_norm_sq)?)).collect::<Result<Vec<f64>>>()?;
    Ok(log_sum_exp(&terms))
}

pub(crate) fn check_mixture(components: &[(f64, ShellOutputDensity)]) -> Result<()> {
    let Some((_, first)) = components.first() else {
        return Err(invalid("mixture needs at least one component"));
    };
    if components.iter().any(|(w, _)| !(w.is_finite() && *w > 0.0)) {
        return Err(invalid("mixture weights must be positive"));
    }
    let total: f64 = components.iter().map(|(w, _)| w).sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(invalid(format!("mixture weights sum to {total}, not 1")));
    }
    for (_, d) in components {
        if d.blocklength != first.blocklength || d.noise_variance != first.noise_variance {
            return Err(Error::MismatchedComponents(format!(
                "(n={}, N={}) vs (n={}, N={})",
                first.blocklength, first.noise_variance, d.blocklength, d.noise_variance
            )));
        }
    }
    Ok(())
}

/// `{y : |‖y‖²/n − (Γ + N)| ≤ Δ}`
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TypicalShellSet {
    pub gamma_plus_noise: f64,
    pub delta: f64,
    pub blocklength: usize,
}

impl TypicalShellSet {
    pub fn new(gamma_plus_noise: f64, delta: f64, blocklength: usize) -> Result<Self> {
        if !(gamma_plus_noise > 0.0 && delta >= 0.0 && blocklength > 0) {
            return Err(invalid("typical set needs Γ+N > 0, Δ ≥ 0 and n ≥ 1"));
        }
        Ok(Self { gamma_plus_noise, delta, blocklength })
    }

    /// The set used with `Δ = √(ln n / n)`.
    pub fn log_rate(gamma_plus_noise: f64, blocklength: usize) -> Result<Self> {
        let n = blocklength as f64;
        Self::new(gamma_plus_noise, (n.ln().max(0.0) / n).sqrt(), blocklength)
    }

    pub fn contains(&self, y_norm_sq: f64) -> bool {
        (y_norm_sq / self.blocklength as f64 - self.gamma_plus_noise).abs() <= self.delta
    }

    /// Extreme squared norms `n(Γ + N ∓ Δ)` (lower one floored just above 0).
    pub fn norm_sq_bounds(&self) -> (f64, f64) {
        let n = self.blocklength as f64;
        let lo = (n * (self.gamma_plus_noise - self.delta)).max(f64::MIN_POSITIVE);
        (lo, n * (self.gamma_plus_noise + self.delta))
    }
}
