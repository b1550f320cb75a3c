//! Shell-mixture construction, codeword sampling and the Monte Carlo error
//! functionals.

use mv_awgn::coding::{
    achievability_error_bound, build_mixture, empirical_cdf_info_density, estimate_epsilon_n, sample_codeword,
    DEFAULT_THETA_EXPONENT,
};
use mv_awgn::kfunc::{k_arguments, k_minimizer, socr};
use mv_awgn::rng::SeedStream;
use mv_awgn::special::norm_quantile;
use mv_awgn::sphere::{log_mixture_output, sum_sq};
use mv_awgn::{ChannelSpec, Error};
use proptest::prelude::*;
use rand::Rng;
use rand_distr::StandardNormal;

fn spec(v: f64) -> ChannelSpec {
    ChannelSpec::new(1.0, 2.0, v).unwrap()
}

#[test]
fn cost_moments_are_exact() {
    for v in [0.25, 1.0, 3.0] {
        let s = spec(v);
        for eps in [0.05, 0.2] {
            let r = socr(&s, eps).unwrap();
            for n in [2000usize, 10_000] {
                let code = build_mixture(&s, 0.1, n, r).unwrap();
                let (mean, var) = code.cost_moments();
                assert!((mean - 2.0).abs() < 1e-9);
                // Cost variance is the scaled atom variance.
                let (rn, vn) = k_arguments(&s, r);
                let pi = k_minimizer(rn, vn).unwrap();
                let cd = s.capacity_derivative();
                let want = s.dispersion() / (cd * cd * n as f64) * pi.variance();
                assert!((var - want).abs() < 1e-12, "var {var} vs {want}");
                assert!(var <= v / n as f64 + 1e-12);
                let weights: f64 = code.shells.iter().map(|sh| sh.weight_j).sum();
                assert!((weights - 1.0).abs() < 1e-12);
                assert!(code.shells.windows(2).all(|w| w[0].gamma_j < w[1].gamma_j));
            }
        }
    }
}

#[test]
fn zero_budget_reduces_to_one_shell() {
    let code = build_mixture(&spec(0.0), 0.3, 1000, -0.2).unwrap();
    assert_eq!(code.shells.len(), 1);
    assert!((code.shells[0].radius_j - 2000f64.sqrt()).abs() < 1e-9);
}

#[test]
fn too_short_blocks_are_rejected() {
    let err = build_mixture(&spec(1.0), 0.1, 10, 0.0).unwrap_err();
    assert!(matches!(err, Error::BlocklengthTooSmall { n: 10, .. }), "{err}");
    assert!(err.to_string().contains("atom"));
    assert!(build_mixture(&spec(1.0), 1.5, 100, 0.0).is_err());
}

#[test]
fn shell_frequencies_and_symmetry() {
    let s = spec(1.0);
    let code = build_mixture(&s, 0.1, 64, 0.5).unwrap();
    assert!(code.shells.len() >= 2);
    let draws = 100_000;
    let mut rng = SeedStream::new(31).rng(0);
    let mut counts = vec![0usize; code.shells.len()];
    let mut coord_sum = 0.0;
    for _ in 0..draws {
        let x = sample_codeword(&code, &mut rng);
        coord_sum += x[0];
        let e = sum_sq(&x) / 64.0;
        let j = code
            .shells
            .iter()
            .position(|sh| ((e - sh.gamma_j) / sh.gamma_j).abs() < 1e-9)
            .expect("codeword off every shell");
        counts[j] += 1;
    }
    for (c, sh) in counts.iter().zip(&code.shells) {
        let p = sh.weight_j;
        let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
        assert!((*c as f64 - draws as f64 * p).abs() <= 3.0 * sigma.max(1.0), "count {c} for weight {p}");
    }
    // First coordinate has variance Γ under the mixture.
    assert!((coord_sum / draws as f64).abs() < 4.0 * (2.0 / draws as f64).sqrt());
}

#[test]
fn single_shell_estimate_near_target() {
    let s = spec(0.0);
    let r = s.dispersion().sqrt() * norm_quantile(0.1);
    let code = build_mixture(&s, 0.1, 2000, r).unwrap();
    let est = estimate_epsilon_n(&code, &s, 20_000, SeedStream::new(32)).unwrap();
    assert!(est.covers(0.1, 0.03), "{est:?}");
    assert!(est.ci_low <= est.estimate && est.estimate <= est.ci_high);
}

#[test]
fn far_below_mean_never_errs() {
    let s = spec(1.0);
    let code = build_mixture(&s, 0.1, 2000, -10.0).unwrap();
    let est = estimate_epsilon_n(&code, &s, 5000, SeedStream::new(33)).unwrap();
    assert_eq!(est.estimate, 0.0);
}

#[test]
fn bound_dominates_estimate_with_shared_trials() {
    let s = spec(1.0);
    let r = socr(&s, 0.1).unwrap();
    let code = build_mixture(&s, 0.1, 2000, r).unwrap();
    let seed = SeedStream::new(34);
    let est = estimate_epsilon_n(&code, &s, 5000, seed).unwrap();
    let bound = achievability_error_bound(&code, &s, 5000, DEFAULT_THETA_EXPONENT, seed).unwrap();
    assert!(bound.estimate >= est.estimate);
    assert_eq!(est, estimate_epsilon_n(&code, &s, 5000, seed).unwrap());
    assert_ne!(est, estimate_epsilon_n(&code, &s, 5000, SeedStream::new(35)).unwrap());
}

#[test]
fn decoder_density_bracketing() {
    // Replacing ln PW by the best single component lowers the statistic by
    // at most max_j(−ln p_j)/n and never raises it.
    let s = spec(1.0);
    let r = socr(&s, 0.1).unwrap();
    let n = 1000;
    let code = build_mixture(&s, 0.1, n, r).unwrap();
    let comps = code.output_components(1.0).unwrap();
    let width = code.shells.iter().map(|sh| -sh.weight_j.ln()).fold(0.0, f64::max) / n as f64;
    let mut rng = SeedStream::new(36).rng(0);
    for _ in 0..500 {
        let x = sample_codeword(&code, &mut rng);
        let z: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let y: Vec<f64> = x.iter().zip(&z).map(|(a, b)| a + b).collect();
        let (zz, yy) = (sum_sq(&z), sum_sq(&y));
        let log_w = s.log_channel_density(zz, n);
        let mix = (log_w - log_mixture_output(&comps, yy).unwrap()) / n as f64;
        let best = comps.iter().map(|(_, d)| d.log_density(yy).unwrap()).fold(f64::MIN, f64::max);
        let single = (log_w - best) / n as f64;
        assert!(single <= mix + 1e-12 && single >= mix - width - 1e-12);
    }
}

#[test]
fn cdf_of_normalised_sum() {
    let s = spec(0.0);
    let t = empirical_cdf_info_density(&s, 2.0, 1000, 20_000, SeedStream::new(37)).unwrap();
    assert!((t.normalizing_variance - 1000.0 * 4.0 / 9.0).abs() < 1e-9);
    assert!(t.ks_distance < 0.03);
    assert!(t.probes.iter().all(|&(_, f, phi)| (f - phi).abs() <= t.ks_distance + 1e-12));
    assert!(empirical_cdf_info_density(&s, 2.0, 1000, 100, SeedStream::new(37)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn built_codes_meet_both_constraints(v in 0.05f64..4.0, r in -2.0f64..-0.2, n in 500usize..20_000) {
        let s = spec(v);
        match build_mixture(&s, 0.1, n, r) {
            Ok(code) => {
                let (mean, var) = code.cost_moments();
                prop_assert!((mean - 2.0).abs() <= 1e-9);
                prop_assert!(var <= v / n as f64 + 1e-12);
                prop_assert!(code.shells.iter().all(|sh| sh.gamma_j > 0.0));
            }
            Err(Error::BlocklengthTooSmall { gamma_j, .. }) => prop_assert!(gamma_j <= 0.0),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}
