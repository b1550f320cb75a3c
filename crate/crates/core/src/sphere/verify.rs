//! Empirical checks of the log-ratio bounds between shell output densities
//! and the Gaussian output density over the typical shell.
//!
//! For each blocklength the harness samples `Y` from the shell density,
//! keeps the samples inside the typical set with `Δ = √(ln n / n)`, and
//! records the largest absolute log ratio seen, including at both boundary
//! radii of the set.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{log_qstar, ShellOutputDensity, TypicalShellSet};
use crate::error::{invalid, Result};
use crate::rng::SeedStream;

/// Samples per independently seeded batch in the harness.
const BATCH: usize = 512;

/// One row of a verification table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaRow {
    pub n: usize,
    pub delta: f64,
    /// Cost perturbation `Γ′ − Γ` (zero for the shell-vs-Gaussian check).
    pub eps: f64,
    pub sup_abs_log_ratio: f64,
    pub sup_over_log_n: f64,
    pub samples_in_set: usize,
    pub samples: usize,
}

impl LemmaRow {
    pub fn in_set_fraction(&self) -> f64 {
        self.samples_in_set as f64 / self.samples as f64
    }

    /// Fewer than half of the samples fell in the typical set.
    pub fn low_coverage(&self) -> bool {
        2 * self.samples_in_set < self.samples
    }
}

/// How the cost perturbation scales with blocklength.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum CostPerturbation {
    /// `ε = c` for every `n`.
    Fixed(f64),
    /// `ε = c / √n`.
    InverseSqrt(f64),
}

impl CostPerturbation {
    pub fn at(&self, n: usize) -> f64 {
        match *self {
            Self::Fixed(c) => c,
            Self::InverseSqrt(c) => c / (n as f64).sqrt(),
        }
    }
}

fn check_inputs(gamma: f64, noise_variance: f64, n_list: &[usize], samples_per_n: usize) -> Result<()> {
    if !(gamma > 0.0 && noise_variance > 0.0) {
        return Err(invalid("gamma and noise variance must be positive"));
    }
    if n_list.is_empty() || n_list.windows(2).any(|w| w[0] >= w[1]) || n_list[0] < 2 {
        return Err(invalid("blocklengths must be increasing and at least 2"));
    }
    if samples_per_n < 1000 {
        return Err(invalid(format!("need at least 1000 samples per n, got {samples_per_n}")));
    }
    Ok(())
}

/// Sup of `|ln Q^cc(y) − ln Q*(y)|` over the typical set, per blocklength.
pub fn verify_lemma6(
    gamma: f64,
    noise_variance: f64,
    n_list: &[usize],
    samples_per_n: usize,
    seed: SeedStream,
) -> Result<Vec<LemmaRow>> {
    check_inputs(gamma, noise_variance, n_list, samples_per_n)?;
    n_list
        .iter()
        .enumerate()
        .map(|(idx, &n)| {
            let shell = ShellOutputDensity::with_power(n, gamma, noise_variance)?;
            let ratio =
                |s: f64| -> Result<f64> { Ok((shell.log_density(s)? - log_qstar(gamma, noise_variance, n, s)).abs()) };
            sup_over_typical_set(&shell, gamma + noise_variance, 0.0, samples_per_n, seed.substream(idx as u64), ratio)
        })
        .collect()
}

/// Sup of `|ln Q^cc_{Γ+ε}(y) − ln Q^cc_Γ(y)|` over the typical set of the
/// `Γ` shell, sampling from the `Γ` shell.
pub fn verify_lemma5(
    gamma: f64,
    eps_cost: CostPerturbation,
    noise_variance: f64,
    n_list: &[usize],
    samples_per_n: usize,
    seed: SeedStream,
) -> Result<Vec<LemmaRow>> {
    check_inputs(gamma, noise_variance, n_list, samples_per_n)?;
    n_list
        .iter()
        .enumerate()
        .map(|(idx, &n)| {
            let eps = eps_cost.at(n);
            if !(gamma + eps > 0.0) {
                return Err(invalid(format!("perturbed cost {} is not positive at n={n}", gamma + eps)));
            }
            let base = ShellOutputDensity::with_power(n, gamma, noise_variance)?;
            let moved = ShellOutputDensity::with_power(n, gamma + eps, noise_variance)?;
            let ratio = |s: f64| -> Result<f64> { Ok((moved.log_density(s)? - base.log_density(s)?).abs()) };
            sup_over_typical_set(&base, gamma + noise_variance, eps, samples_per_n, seed.substream(idx as u64), ratio)
        })
        .collect()
}

fn sup_over_typical_set<F>(
    shell: &ShellOutputDensity,
    gamma_plus_noise: f64,
    eps: f64,
    samples: usize,
    seed: SeedStream,
    ratio: F,
) -> Result<LemmaRow>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let n = shell.blocklength();
    let set = TypicalShellSet::log_rate(gamma_plus_noise, n)?;
    let (lo, hi) = set.norm_sq_bounds();
    let mut sup = ratio(lo)?.max(ratio(hi)?);

    let partial = crate::rng::batches(samples, BATCH)
        .into_par_iter()
        .map(|(b, size)| -> Result<(f64, usize)> {
            let mut rng = seed.rng(b);
            let mut buf = Vec::with_capacity(n);
            let mut local: f64 = 0.0;
            let mut inside = 0;
            for _ in 0..size {
                shell.sample(&mut rng, &mut buf);
                let s = super::sum_sq(&buf);
                if set.contains(s) {
                    inside += 1;
                    local = local.max(ratio(s)?);
                }
            }
            Ok((local, inside))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut inside = 0;
    for (s, c) in partial {
        sup = sup.max(s);
        inside += c;
    }
    Ok(LemmaRow {
        n,
        delta: set.delta,
        eps,
        sup_abs_log_ratio: sup,
        sup_over_log_n: sup / (n as f64).ln(),
        samples_in_set: inside,
        samples,
    })
}
