//! Shell output density: normalisation, moments, sampling, and the
//! log-ratio verification harness.

#[path = "support/radial.rs"]
mod radial;

use mv_awgn::rng::SeedStream;
use mv_awgn::sphere::verify::{verify_lemma5, verify_lemma6, CostPerturbation};
use mv_awgn::sphere::{log_bessel_i, log_mixture_output, log_qstar, sum_sq};
use mv_awgn::stats::{log_log_slope, mean_var};
use mv_awgn::ShellOutputDensity;

const N_LIST: [usize; 4] = [128, 512, 2048, 8192];

#[test]
fn radial_marginal_is_normalised() {
    for n in [2usize, 8, 32] {
        let d = ShellOutputDensity::with_power(n, 2.0, 1.0).unwrap();
        let (mass, e, var) = radial::radial_moments(&d);
        assert!((mass - 1.0).abs() < 1e-6, "n={n}: mass {mass}");
        let r2 = d.radius().powi(2);
        let nf = n as f64;
        // ‖Y‖² = R² + 2⟨x, Z⟩ + ‖Z‖²: mean R² + nN, variance 4R²N + 2nN².
        assert!((e / (r2 + nf) - 1.0).abs() < 1e-4, "n={n}: E {e}");
        assert!((var / (4.0 * r2 + 2.0 * nf) - 1.0).abs() < 1e-4, "n={n}: Var {var}");
    }
}

#[test]
fn sampled_norms_match_moments() {
    let d = ShellOutputDensity::with_power(40, 2.0, 0.5).unwrap();
    let mut rng = SeedStream::new(21).rng(0);
    let mut buf = Vec::new();
    let s: Vec<f64> = (0..20_000)
        .map(|_| {
            d.sample(&mut rng, &mut buf);
            sum_sq(&buf)
        })
        .collect();
    let (m, v) = mean_var(&s);
    let (em, ev) = (80.0 + 20.0, 4.0 * 80.0 * 0.5 + 2.0 * 40.0 * 0.25);
    assert!((m - em).abs() < 4.0 * (ev / 20_000.0f64).sqrt(), "mean {m}");
    assert!((v / ev - 1.0).abs() < 0.05, "var {v}");
}

#[test]
fn half_integer_bessel_closed_form() {
    // I_{1/2}(x) = √(2/(πx)) sinh x
    for x in [0.5, 3.0, 40.0] {
        let want = 0.5 * (2.0 / (std::f64::consts::PI * x)).ln() + x.sinh().ln();
        assert!((log_bessel_i(0.5, x).unwrap() - want).abs() < 1e-10);
    }
}

#[test]
fn shell_to_gaussian_ratio_bounded_by_log_n() {
    let rows = verify_lemma6(2.0, 1.0, &N_LIST, 4000, SeedStream::new(22)).unwrap();
    let first = rows[0].sup_over_log_n;
    assert!(rows.iter().all(|r| r.sup_over_log_n <= 3.0 * first));
    assert!(rows.windows(2).all(|w| w[1].in_set_fraction() > w[0].in_set_fraction()));
    assert!(rows.iter().all(|r| r.delta == ((r.n as f64).ln() / r.n as f64).sqrt()));
}

#[test]
fn typical_radius_ratio_fits_stable_log_constant() {
    // On ‖y‖² = n(Γ+N) the ratio is a function of n alone.
    let kappa: Vec<f64> = N_LIST
        .iter()
        .map(|&n| {
            let s = n as f64 * 3.0;
            let d = ShellOutputDensity::with_power(n, 2.0, 1.0).unwrap();
            (d.log_density(s).unwrap() - log_qstar(2.0, 1.0, n, s)).abs() / (n as f64).ln()
        })
        .collect();
    let (lo, hi) = kappa.iter().fold((f64::MAX, 0.0f64), |(a, b), &k| (a.min(k), b.max(k)));
    assert!(hi <= 3.0 * lo, "{kappa:?}");
}

#[test]
fn shrinking_perturbation_ratio_bounded_by_log_n() {
    let rows = verify_lemma5(2.0, CostPerturbation::InverseSqrt(1.0), 1.0, &N_LIST, 4000, SeedStream::new(23)).unwrap();
    let ratios: Vec<f64> = rows.iter().map(|r| r.sup_over_log_n).collect();
    let (lo, hi) = ratios.iter().fold((f64::MAX, 0.0f64), |(a, b), &k| (a.min(k), b.max(k)));
    assert!(hi < 3.0 * lo, "{ratios:?}");
    assert!(rows.iter().all(|r| (r.eps - 1.0 / (r.n as f64).sqrt()).abs() < 1e-15));
}

#[test]
fn fixed_perturbation_grows_linearly() {
    let rows = verify_lemma5(2.0, CostPerturbation::Fixed(1.0), 1.0, &N_LIST, 4000, SeedStream::new(24)).unwrap();
    let x: Vec<f64> = rows.iter().map(|r| r.n as f64).collect();
    let y: Vec<f64> = rows.iter().map(|r| r.sup_abs_log_ratio).collect();
    let slope = log_log_slope(&x, &y);
    assert!((slope - 1.0).abs() <= 0.15, "slope {slope}");
    // Smaller fixed perturbations still grow much faster than ln n.
    let rows = verify_lemma5(2.0, CostPerturbation::Fixed(0.1), 1.0, &N_LIST, 4000, SeedStream::new(24)).unwrap();
    let y: Vec<f64> = rows.iter().map(|r| r.sup_abs_log_ratio).collect();
    assert!(log_log_slope(&x, &y) > 0.5);
}

#[test]
fn mixture_brackets_best_component() {
    let n = 500;
    let comps: Vec<(f64, ShellOutputDensity)> = [(0.2, 1.5), (0.5, 2.0), (0.3, 2.4)]
        .iter()
        .map(|&(w, g)| (w, ShellOutputDensity::with_power(n, g, 1.0).unwrap()))
        .collect();
    let max_neg_log_w = comps.iter().map(|(w, _)| -w.ln()).fold(0.0, f64::max);
    for s in [1200.0, 1500.0, 1700.0] {
        let mix = log_mixture_output(&comps, s).unwrap();
        let best = comps.iter().map(|(_, d)| d.log_density(s).unwrap()).fold(f64::MIN, f64::max);
        assert!(mix <= best + 1e-12 && mix >= best - max_neg_log_w - 1e-12);
    }
}
