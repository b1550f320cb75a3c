//! Shell-mixture achievability scheme and Monte Carlo estimation of its
//! information-density error functional.
//!
//! The input is a mixture of at most three uniform distributions on
//! concentric spheres. Shell powers are the atoms of the K-function
//! minimizer mapped through `Γ_j = Γ + (r − √V(Γ) π_j) / (C'(Γ) √n)`, so the
//! mixture meets the mean cost exactly and the variance budget by
//! construction. No codebook is stored; the simulator measures the
//! probability that the normalised log-likelihood ratio falls below the rate.

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::awgn::ChannelSpec;
use crate::error::{invalid, Error, Result};
use crate::kfunc::{k_arguments, KSolver, PointMassDistribution};
use crate::rng::{batches, SeedStream, DEFAULT_BATCH};
use crate::special::norm_cdf;
use crate::sphere::{log_mixture_output, sample_on_sphere, sum_sq, ShellOutputDensity};
use crate::stats::{ks_distance_sorted, ks_two_sample_pvalue, ks_two_sample_sorted, mean_var, wilson_interval, Z_975};

/// Tolerance on the mixture mean cost.
pub const MEAN_COST_TOL: f64 = 1e-9;
/// Tolerance on the mixture cost variance above `V/n`.
pub const VAR_COST_TOL: f64 = 1e-12;
/// Fewest trials accepted by the error-functional estimators.
pub const MIN_TRIALS: usize = 1000;
/// Fewest trials accepted by [`empirical_cdf_info_density`].
pub const MIN_CDF_TRIALS: usize = 10_000;
/// Default exponent `ϑ` of the threshold slack `θ = n^{−ϑ}`.
pub const DEFAULT_THETA_EXPONENT: f64 = 0.6;

/// One sphere of the mixture input.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Shell {
    /// Per-letter power `Γ_j`.
    pub gamma_j: f64,
    /// Radius `√(n Γ_j)`.
    pub radius_j: f64,
    /// Mixture weight `p_j`.
    pub weight_j: f64,
    /// The minimizer atom `π_j` this shell came from.
    pub pi_j: f64,
}

/// Random-coding input distribution: a weighted mixture of shells.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphereMixtureCode {
    pub blocklength: usize,
    /// Shells in increasing power.
    pub shells: Vec<Shell>,
    /// Second-order rate offset `r` (nats·√n).
    pub rate_offset: f64,
    /// Error probability the code was built for.
    pub eps_target: f64,
}

impl SphereMixtureCode {
    /// Mean and variance of the per-letter cost `‖X‖²/n`.
    pub fn cost_moments(&self) -> (f64, f64) {
        let mean: f64 = self.shells.iter().map(|s| s.weight_j * s.gamma_j).sum();
        let var = self.shells.iter().map(|s| s.weight_j * (s.gamma_j - mean).powi(2)).sum();
        (mean, var)
    }

    /// Checks both cost constraints of `spec` analytically.
    pub fn check_costs(&self, spec: &ChannelSpec) -> Result<()> {
        let (mean, var) = self.cost_moments();
        if (mean - spec.gamma()).abs() > MEAN_COST_TOL * spec.gamma().max(1.0) {
            return Err(invalid(format!("mixture mean cost {mean} differs from {}", spec.gamma())));
        }
        let budget = spec.var_budget() / self.blocklength as f64;
        if var > budget + VAR_COST_TOL {
            return Err(invalid(format!("mixture cost variance {var} exceeds V/n = {budget}")));
        }
        Ok(())
    }

    /// Per-shell output densities paired with their weights.
    pub fn output_components(&self, noise_variance: f64) -> Result<Vec<(f64, ShellOutputDensity)>> {
        self.shells
            .iter()
            .map(|s| Ok((s.weight_j, ShellOutputDensity::new(self.blocklength, s.radius_j, noise_variance)?)))
            .collect()
    }

    /// Rate `C(Γ) + r/√n` in nats per letter.
    pub fn rate(&self, spec: &ChannelSpec) -> f64 {
        spec.capacity() + self.rate_offset / (self.blocklength as f64).sqrt()
    }

    /// Index of the shell selected by uniform variate `u ∈ [0, 1)`.
    fn pick(&self, u: f64) -> usize {
        let mut acc = 0.0;
        for (j, s) in self.shells.iter().enumerate() {
            acc += s.weight_j;
            if u < acc {
                return j;
            }
        }
        self.shells.len() - 1
    }
}

/// Builds the mixture input for rate offset `r` at blocklength `n`.
pub fn build_mixture(spec: &ChannelSpec, eps: f64, n: usize, r: f64) -> Result<SphereMixtureCode> {
    build_mixture_with(&KSolver::default(), spec, eps, n, r)
}

pub fn build_mixture_with(
    solver: &KSolver,
    spec: &ChannelSpec,
    eps: f64,
    n: usize,
    r: f64,
) -> Result<SphereMixtureCode> {
    if n == 0 {
        return Err(invalid("blocklength must be at least 1"));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(invalid(format!("eps must lie in (0, 1), got {eps}")));
    }
    if !r.is_finite() {
        return Err(invalid(format!("rate offset must be finite, got {r}")));
    }
    let (r_norm, v_norm) = k_arguments(spec, r);
    let minimizer = if v_norm > 0.0 {
        solver.evaluate(r_norm, v_norm)?.minimizer
    } else {
        PointMassDistribution::point_mass(r_norm)
    };

    let scale = 1.0 / (spec.capacity_derivative() * (n as f64).sqrt());
    let disp_sqrt = spec.dispersion().sqrt();
    let shells = minimizer
        .descending()
        .into_iter()
        .enumerate()
        .map(|(atom, (pi, p))| {
            let gamma_j = spec.gamma() + (r - disp_sqrt * pi) * scale;
            if !(gamma_j > 0.0) {
                return Err(Error::BlocklengthTooSmall { n, atom, pi, gamma_j });
            }
            Ok(Shell { gamma_j, radius_j: (n as f64 * gamma_j).sqrt(), weight_j: p, pi_j: pi })
        })
        .collect::<Result<Vec<_>>>()?;

    let code = SphereMixtureCode { blocklength: n, shells, rate_offset: r, eps_target: eps };
    code.check_costs(spec)?;
    Ok(code)
}

/// Draws a codeword: a shell by weight, then a uniform point on it.
pub fn sample_codeword<R: Rng + ?Sized>(code: &SphereMixtureCode, rng: &mut R) -> Vec<f64> {
    let mut buf = Vec::with_capacity(code.blocklength);
    let j = code.pick(rng.random::<f64>());
    sample_on_sphere(code.blocklength, code.shells[j].radius_j, rng, &mut buf);
    buf
}

/// A Monte Carlo probability with its 95% Wilson interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloEstimate {
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub trials: usize,
    pub seed: u64,
}

impl MonteCarloEstimate {
    fn from_count(hits: usize, trials: usize, seed: u64) -> Self {
        let (ci_low, ci_high) = wilson_interval(hits as u64, trials as u64, Z_975);
        Self { estimate: hits as f64 / trials as f64, ci_low, ci_high, trials, seed }
    }

    /// Whether `target` lies within the interval widened to at least `±slack`.
    pub fn covers(&self, target: f64, slack: f64) -> bool {
        let lo = self.ci_low.min(self.estimate - slack);
        let hi = self.ci_high.max(self.estimate + slack);
        lo <= target && target <= hi
    }
}

/// Per-trial normalised log-likelihood ratios
/// `(1/n)[ln W(Y|X) − ln PW(Y)]` for `X` drawn from the mixture.
///
/// Trials run in batches of [`DEFAULT_BATCH`], batch `b` on stream `b` of
/// `seed`; the output order is fixed by the batch layout.
pub fn sample_log_ratios(
    code: &SphereMixtureCode,
    spec: &ChannelSpec,
    trials: usize,
    seed: SeedStream,
) -> Result<Vec<f64>> {
    let n = code.blocklength;
    let nv = spec.noise_variance();
    let components = code.output_components(nv)?;
    // Validate once so the per-trial evaluations below cannot fail on shape.
    log_mixture_output(&components, n as f64 * (spec.gamma() + nv))?;
    let sd = nv.sqrt();
    let chunks = batches(trials, DEFAULT_BATCH)
        .into_par_iter()
        .map(|(b, size)| -> Result<Vec<f64>> {
            let mut rng = seed.rng(b);
            let mut x = Vec::with_capacity(n);
            let mut out = Vec::with_capacity(size);
            for _ in 0..size {
                let j = code.pick(rng.random::<f64>());
                sample_on_sphere(n, code.shells[j].radius_j, &mut rng, &mut x);
                let mut noise_sq = 0.0;
                for xi in x.iter_mut() {
                    let z = sd * rng.sample::<f64, _>(StandardNormal);
                    noise_sq += z * z;
                    *xi += z;
                }
                let y_sq = sum_sq(&x);
                let log_w = spec.log_channel_density(noise_sq, n);
                let log_pw = log_mixture_output(&components, y_sq)?;
                out.push((log_w - log_pw) / n as f64);
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(chunks.concat())
}

fn check_trials(trials: usize, min: usize) -> Result<()> {
    if trials < min {
        return Err(invalid(format!("need at least {min} trials, got {trials}")));
    }
    Ok(())
}

/// Probability that the normalised log ratio does not exceed `C(Γ) + r/√n`.
pub fn estimate_epsilon_n(
    code: &SphereMixtureCode,
    spec: &ChannelSpec,
    trials: usize,
    seed: SeedStream,
) -> Result<MonteCarloEstimate> {
    check_trials(trials, MIN_TRIALS)?;
    let ratios = sample_log_ratios(code, spec, trials, seed)?;
    let rate = code.rate(spec);
    let hits = ratios.iter().filter(|&&v| v <= rate).count();
    Ok(MonteCarloEstimate::from_count(hits, trials, seed.root()))
}

/// Slack `e^{−n^{1−ϑ}}` added by the random-coding bound.
pub fn achievability_slack(n: usize, theta_exponent: f64) -> f64 {
    (-(n as f64).powf(1.0 - theta_exponent)).exp()
}

/// Full random-coding upper bound on the average error probability:
/// `P((1/n) log ratio ≤ R + θ) + e^{−n^{1−ϑ}}` with `θ = n^{−ϑ}`.
///
/// Uses the same trials as [`estimate_epsilon_n`] for equal seeds, so the
/// bound never falls below that estimate.
pub fn achievability_error_bound(
    code: &SphereMixtureCode,
    spec: &ChannelSpec,
    trials: usize,
    theta_exponent: f64,
    seed: SeedStream,
) -> Result<MonteCarloEstimate> {
    check_trials(trials, MIN_TRIALS)?;
    if !(theta_exponent > 0.5 && theta_exponent < 1.0) {
        return Err(invalid(format!("theta exponent must lie in (1/2, 1), got {theta_exponent}")));
    }
    let n = code.blocklength as f64;
    let threshold = code.rate(spec) + n.powf(-theta_exponent);
    let slack = achievability_slack(code.blocklength, theta_exponent);
    let ratios = sample_log_ratios(code, spec, trials, seed)?;
    let hits = ratios.iter().filter(|&&v| v <= threshold).count();
    let base = MonteCarloEstimate::from_count(hits, trials, seed.root());
    Ok(MonteCarloEstimate {
        estimate: (base.estimate + slack).min(1.0),
        ci_low: (base.ci_low + slack).min(1.0),
        ci_high: (base.ci_high + slack).min(1.0),
        ..base
    })
}

/// Draws of `Σ T_i` for an input of cost `cost`, from the noncentral-χ²
/// representation.
pub fn sample_info_density_sums(
    spec: &ChannelSpec,
    cost: f64,
    n: usize,
    trials: usize,
    seed: SeedStream,
) -> Result<Vec<f64>> {
    let chunks = batches(trials, DEFAULT_BATCH)
        .into_par_iter()
        .map(|(b, size)| -> Result<Vec<f64>> {
            let mut rng = seed.rng(b);
            (0..size).map(|_| Ok(spec.sample_info_density_sum(cost, n, &mut rng)?.value)).collect()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(chunks.concat())
}

/// Draws of `Σ T_i` for the fixed input `x`, simulated letter by letter.
pub fn sample_info_density_sums_direct(spec: &ChannelSpec, x: &[f64], trials: usize, seed: SeedStream) -> Vec<f64> {
    batches(trials, DEFAULT_BATCH)
        .into_par_iter()
        .map(|(b, size)| {
            let mut rng = seed.rng(b);
            (0..size).map(|_| spec.info_density_sum_direct(x, &mut rng)).collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .concat()
}

/// Two-sample KS statistic and its asymptotic p-value.
pub fn two_sample_ks(a: &[f64], b: &[f64]) -> (f64, f64) {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let d = ks_two_sample_sorted(&a, &b);
    (d, ks_two_sample_pvalue(d, a.len(), b.len()))
}

/// Standard-normal probe points at which [`CdfTable`] reports the CDF.
pub fn cdf_probe_grid() -> Vec<f64> {
    (-16..=16).map(|k| k as f64 * 0.25).collect()
}

/// Empirical CDF of the normalised information-density sum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CdfTable {
    pub blocklength: usize,
    pub cost: f64,
    pub trials: usize,
    /// `Var(Σ T_i)` used to normalise.
    pub normalizing_variance: f64,
    /// Sample mean of the normalised draws.
    pub mean: f64,
    /// Sample variance of the normalised draws.
    pub variance: f64,
    /// `sup |F_n − Φ|` over all draws.
    pub ks_distance: f64,
    /// `(z, F_n(z), Φ(z))` on [`cdf_probe_grid`].
    pub probes: Vec<(f64, f64, f64)>,
}

/// Samples `Σ T_i`, normalises by `√Var(Σ T_i)`, and compares with `Φ`.
pub fn empirical_cdf_info_density(
    spec: &ChannelSpec,
    cost: f64,
    n: usize,
    trials: usize,
    seed: SeedStream,
) -> Result<CdfTable> {
    check_trials(trials, MIN_CDF_TRIALS)?;
    let var = spec.info_density_sum_variance(cost, n);
    if !(var > 0.0) {
        return Err(invalid("normalising variance is zero"));
    }
    let sd = var.sqrt();
    let mut z: Vec<f64> = sample_info_density_sums(spec, cost, n, trials, seed)?.into_iter().map(|v| v / sd).collect();
    let (mean, variance) = mean_var(&z);
    z.sort_by(f64::total_cmp);
    let ks_distance = ks_distance_sorted(&z, norm_cdf);
    let m = z.len() as f64;
    let probes =
        cdf_probe_grid().into_iter().map(|p| (p, z.partition_point(|&v| v <= p) as f64 / m, norm_cdf(p))).collect();
    Ok(CdfTable { blocklength: n, cost, trials, normalizing_variance: var, mean, variance, ks_distance, probes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::norm_quantile;

    fn spec(v: f64) -> ChannelSpec {
        ChannelSpec::new(1.0, 2.0, v).unwrap()
    }

    #[test]
    fn zero_budget_gives_single_shell() {
        let code = build_mixture(&spec(0.0), 0.1, 500, -0.5).unwrap();
        assert_eq!(code.shells.len(), 1);
        assert!((code.shells[0].gamma_j - 2.0).abs() < 1e-12);
        assert!((code.shells[0].radius_j - 1000f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn two_shells_heavier_on_high_power() {
        let s = spec(1.0);
        let r = crate::kfunc::socr(&s, 0.1).unwrap();
        let code = build_mixture(&s, 0.1, 10_000, r).unwrap();
        assert_eq!(code.shells.len(), 2);
        let (lo, hi) = (code.shells[0], code.shells[1]);
        assert!(lo.gamma_j < hi.gamma_j && lo.weight_j < hi.weight_j);
        code.check_costs(&s).unwrap();
    }

    #[test]
    fn small_blocklength_fails_loudly() {
        match build_mixture(&spec(1.0), 0.1, 4, 0.0) {
            Err(Error::BlocklengthTooSmall { n: 4, atom: 0, .. }) => {}
            other => panic!("expected BlocklengthTooSmall, got {other:?}"),
        }
    }

    #[test]
    fn codeword_lies_on_a_shell() {
        let s = spec(1.0);
        let code = build_mixture(&s, 0.1, 400, -0.3).unwrap();
        let mut rng = SeedStream::new(4).rng(0);
        for _ in 0..20 {
            let x = sample_codeword(&code, &mut rng);
            let e = sum_sq(&x) / 400.0;
            assert!(code.shells.iter().any(|sh| ((e - sh.gamma_j) / sh.gamma_j).abs() < 1e-9));
        }
    }

    #[test]
    fn far_negative_rate_gives_no_errors() {
        let s = spec(0.0);
        let code = build_mixture(&s, 0.1, 200, -10.0).unwrap();
        let est = estimate_epsilon_n(&code, &s, 2000, SeedStream::new(5)).unwrap();
        assert_eq!(est.estimate, 0.0);
        assert!(est.ci_low <= est.estimate && est.estimate <= est.ci_high);
    }

    #[test]
    fn bound_dominates_estimate_and_is_deterministic() {
        let s = spec(0.0);
        let r = (4.0f64 / 9.0).sqrt() * norm_quantile(0.1);
        let code = build_mixture(&s, 0.1, 300, r).unwrap();
        let seed = SeedStream::new(6);
        let est = estimate_epsilon_n(&code, &s, 3000, seed).unwrap();
        let again = estimate_epsilon_n(&code, &s, 3000, seed).unwrap();
        assert_eq!(est, again);
        let bound = achievability_error_bound(&code, &s, 3000, DEFAULT_THETA_EXPONENT, seed).unwrap();
        assert!(bound.estimate >= est.estimate);
        assert!(achievability_error_bound(&code, &s, 3000, 0.4, seed).is_err());
        assert!(estimate_epsilon_n(&code, &s, 10, seed).is_err());
    }

    #[test]
    fn slack_is_small_at_moderate_n() {
        assert!(achievability_slack(2000, 0.6) < 1e-4);
    }

    #[test]
    fn cdf_table_normalisation() {
        let s = spec(0.0);
        let t = empirical_cdf_info_density(&s, 2.0, 100, 20_000, SeedStream::new(7)).unwrap();
        assert!((t.normalizing_variance - 100.0 * s.dispersion()).abs() < 1e-12);
        let se = (1.0 / 20_000f64).sqrt();
        assert!(t.mean.abs() < 3.0 * se, "mean {}", t.mean);
        assert!((t.variance - 1.0).abs() < 3.0 * (2.0f64 / 20_000.0).sqrt(), "var {}", t.variance);
        assert_eq!(t.probes.len(), 33);
        assert!(t.probes.windows(2).all(|w| w[0].1 <= w[1].1));
    }
}
