//! Closed-form AWGN channel quantities under a quadratic cost, and exact
//! sampling of the centered information-density sum.
//!
//! All logarithms are natural; rates are in nats per channel use.

use rand::Rng;
use rand_distr::{ChiSquared, Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::special::HALF_LN_2PI;

/// AWGN channel with noise variance `N` under the cost budget `(Γ, V)`:
/// `E[c(X)] ≤ Γ` and `Var(c(X)) ≤ V / n`, with `c(x) = ‖x‖² / n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelSpec {
    noise_variance: f64,
    gamma: f64,
    var_budget: f64,
}

impl ChannelSpec {
    pub fn new(noise_variance: f64, gamma: f64, var_budget: f64) -> Result<Self> {
        if !(noise_variance.is_finite() && noise_variance > 0.0) {
            return Err(invalid(format!("noise variance must be positive, got {noise_variance}")));
        }
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(invalid(format!("cost budget gamma must be positive, got {gamma}")));
        }
        if !(var_budget.is_finite() && var_budget >= 0.0) {
            return Err(invalid(format!("variance budget must be nonnegative, got {var_budget}")));
        }
        Ok(Self { noise_variance, gamma, var_budget })
    }

    pub fn noise_variance(&self) -> f64 {
        self.noise_variance
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn var_budget(&self) -> f64 {
        self.var_budget
    }

    /// Same channel and mean budget with a different variance budget.
    pub fn with_var_budget(&self, var_budget: f64) -> Result<Self> {
        Self::new(self.noise_variance, self.gamma, var_budget)
    }

    /// Capacity-cost function `C(Γ) = ½ ln(1 + Γ/N)`.
    pub fn capacity(&self) -> f64 {
        0.5 * (self.gamma / self.noise_variance).ln_1p()
    }

    /// `C'(Γ) = 1 / (2(Γ + N))`.
    pub fn capacity_derivative(&self) -> f64 {
        0.5 / (self.gamma + self.noise_variance)
    }

    /// Dispersion `V(Γ) = (Γ² + 2ΓN) / (2(Γ + N)²)`, the variance of the
    /// information density under the capacity-achieving input.
    pub fn dispersion(&self) -> f64 {
        let (g, n) = (self.gamma, self.noise_variance);
        (g * g + 2.0 * g * n) / (2.0 * (g + n) * (g + n))
    }

    /// Conditional variance of the per-letter information density at input `x`.
    pub fn nu_x(&self, x: f64) -> f64 {
        let (g, n) = (self.gamma, self.noise_variance);
        (g * g + 2.0 * x * x * n) / (2.0 * (g + n) * (g + n))
    }

    /// Per-letter information density `ln W(y|x) / Q*(y)` with
    /// `Q* = N(0, Γ + N)`.
    pub fn info_density(&self, x: f64, y: f64) -> f64 {
        let (g, n) = (self.gamma, self.noise_variance);
        self.capacity() - (y - x).powi(2) / (2.0 * n) + y * y / (2.0 * (g + n))
    }

    /// Mean of the `n`-letter information-density sum for any input of cost
    /// `cost`: `n (C(Γ) − C'(Γ)(Γ − cost))`.
    pub fn info_density_mean(&self, cost: f64, n: usize) -> f64 {
        n as f64 * (self.capacity() - self.capacity_derivative() * (self.gamma - cost))
    }

    /// Exact variance of the centered `n`-letter sum for an input of cost `cost`.
    pub fn info_density_sum_variance(&self, cost: f64, n: usize) -> f64 {
        let (g, nv) = (self.gamma, self.noise_variance);
        let nf = n as f64;
        (nf * g * g + 2.0 * nv * nf * cost) / (2.0 * (g + nv) * (g + nv))
    }

    /// Draws the centered information-density sum `Σ T_i` for an input of
    /// cost `cost` through
    /// `−Γ/(2(Γ+N)) Λ + N n c/(2Γ(Γ+N)) + nΓ/(2(Γ+N))`,
    /// `Λ ~ χ²_n(N n c / Γ²)`.
    pub fn sample_info_density_sum<R: Rng + ?Sized>(
        &self,
        cost: f64,
        n: usize,
        rng: &mut R,
    ) -> Result<InfoDensitySumSample> {
        check_cost_n(cost, n)?;
        let (g, nv) = (self.gamma, self.noise_variance);
        let nf = n as f64;
        let lambda = nv * nf * cost / (g * g);
        let big_lambda = sample_noncentral_chi2(n, lambda, rng);
        let value =
            -g / (2.0 * (g + nv)) * big_lambda + nv * nf * cost / (2.0 * g * (g + nv)) + nf * g / (2.0 * (g + nv));
        Ok(InfoDensitySumSample { value, blocklength: n, cost })
    }

    /// Centered information-density sum computed letter by letter for a
    /// given input vector: draws `Y = x + Z` and sums
    /// `ln W(Y_i|x_i)/Q*(Y_i) − E[·]`.
    pub fn info_density_sum_direct<R: Rng + ?Sized>(&self, x: &[f64], rng: &mut R) -> f64 {
        let (g, nv) = (self.gamma, self.noise_variance);
        let sd = nv.sqrt();
        x.iter()
            .map(|&xi| {
                let z: f64 = rng.sample(StandardNormal);
                let y = xi + sd * z;
                y * y / (2.0 * (g + nv)) - (y - xi).powi(2) / (2.0 * nv) + (g - xi * xi) / (2.0 * (g + nv))
            })
            .sum()
    }

    /// `ln W(y|x)` summed over letters, given `‖y − x‖²`.
    pub fn log_channel_density(&self, noise_norm_sq: f64, n: usize) -> f64 {
        let nv = self.noise_variance;
        -(n as f64) * (HALF_LN_2PI + 0.5 * nv.ln()) - noise_norm_sq / (2.0 * nv)
    }
}

fn check_cost_n(cost: f64, n: usize) -> Result<()> {
    if n == 0 {
        return Err(invalid("blocklength must be at least 1"));
    }
    if !(cost.is_finite() && cost >= 0.0) {
        return Err(invalid(format!("cost must be nonnegative, got {cost}")));
    }
    Ok(())
}

/// One draw of `Σ T_i`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InfoDensitySumSample {
    /// Value in nats.
    pub value: f64,
    pub blocklength: usize,
    pub cost: f64,
}

/// `χ²_k(λ)` as `(G + √λ)² + χ²_{k−1}`.
pub fn sample_noncentral_chi2<R: Rng + ?Sized>(k: usize, lambda: f64, rng: &mut R) -> f64 {
    debug_assert!(k >= 1 && lambda >= 0.0);
    let g: f64 = rng.sample(StandardNormal);
    let head = (g + lambda.sqrt()).powi(2);
    if k == 1 {
        head
    } else {
        // k - 1 >= 1, always a valid shape
        head + ChiSquared::new((k - 1) as f64).unwrap().sample(rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeedStream;

    fn spec(g: f64, n: f64) -> ChannelSpec {
        ChannelSpec::new(n, g, 1.0).unwrap()
    }

    #[test]
    fn rejects_invalid_specs() {
        assert!(ChannelSpec::new(0.0, 1.0, 0.0).is_err());
        assert!(ChannelSpec::new(1.0, -1.0, 0.0).is_err());
        assert!(ChannelSpec::new(1.0, 1.0, -1e-3).is_err());
        assert!(ChannelSpec::new(1.0, f64::NAN, 0.0).is_err());
        assert!(ChannelSpec::new(1.0, 1.0, 0.0).is_ok());
    }

    #[test]
    fn closed_forms_at_reference_points() {
        let s = spec(2.0, 1.0);
        assert!((s.capacity() - 0.5 * 3f64.ln()).abs() < 1e-15);
        assert!((spec(3.0, 1.0).capacity() - 2f64.ln()).abs() < 1e-15);
        assert!(spec(1e-300, 1.0).capacity() < 1e-299);
        assert!((s.capacity_derivative() - 1.0 / 6.0).abs() < 1e-16);
        assert!((spec(1.0, 1.0).capacity_derivative() - 0.25).abs() < 1e-16);
        assert!((s.dispersion() - 4.0 / 9.0).abs() < 1e-15);
        assert!((spec(1e9, 1.0).dispersion() - 0.5).abs() < 1e-8);
        assert!((s.nu_x(0.0) - 2.0 / 9.0).abs() < 1e-15);
        assert!((s.nu_x(2f64.sqrt()) - 4.0 / 9.0).abs() < 1e-15);
        assert!((s.info_density_mean(0.0, 1) - (0.5 * 3f64.ln() - 1.0 / 3.0)).abs() < 1e-15);
        assert!((s.info_density_sum_variance(2.0, 100) - 400.0 / 9.0).abs() < 1e-12);
        assert!((s.info_density_sum_variance(0.0, 10) - 10.0 * 4.0 / 18.0).abs() < 1e-14);
    }

    #[test]
    fn dispersion_is_nu_at_root_gamma() {
        for &(g, n) in &[(0.3, 2.0), (2.0, 1.0), (17.0, 0.1)] {
            let s = spec(g, n);
            assert_eq!(s.dispersion(), s.nu_x(g.sqrt()).max(s.dispersion()));
            assert!((s.dispersion() - s.nu_x(g.sqrt())).abs() <= 1e-16);
            assert_eq!(s.info_density_mean(g, 7), 7.0 * s.capacity());
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let s = spec(2.0, 1.0);
        let h = 1e-5;
        let up = ChannelSpec::new(1.0, 2.0 + h, 0.0).unwrap().capacity();
        let dn = ChannelSpec::new(1.0, 2.0 - h, 0.0).unwrap().capacity();
        let fd = (up - dn) / (2.0 * h);
        assert!((fd - s.capacity_derivative()).abs() / s.capacity_derivative() < 1e-8);
    }

    #[test]
    fn sampler_rejects_zero_blocklength() {
        let s = spec(2.0, 1.0);
        let mut rng = SeedStream::new(1).rng(0);
        assert!(s.sample_info_density_sum(1.0, 0, &mut rng).is_err());
        assert!(s.sample_info_density_sum(-1.0, 4, &mut rng).is_err());
    }

    #[test]
    fn sampler_is_deterministic_given_seed() {
        let s = spec(2.0, 1.0);
        let a = s.sample_info_density_sum(1.5, 64, &mut SeedStream::new(9).rng(0)).unwrap();
        let b = s.sample_info_density_sum(1.5, 64, &mut SeedStream::new(9).rng(0)).unwrap();
        assert_eq!(a, b);
    }
}
