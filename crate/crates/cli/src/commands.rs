//! The five computations behind the subcommands. Each turns a validated
//! [`CommandConfig`] into CSV tables, plots and a count of failed points.

use mv_awgn::coding::{achievability_error_bound, build_mixture, empirical_cdf_info_density, estimate_epsilon_n};
use mv_awgn::kfunc::{error_probability_bound, minimizer_sweep, socr, SolverStatus};
use mv_awgn::rng::SeedStream;
use mv_awgn::special::norm_quantile;
use mv_awgn::sphere::verify::{verify_lemma5, verify_lemma6, CostPerturbation, LemmaRow};
use mv_awgn::stats::log_log_slope;
use mv_awgn::ChannelSpec;

use crate::config::CommandConfig;
use crate::error::CliResult;
use crate::output::{Cell, Table};
use crate::svg::{Plot, Series};

/// Result of one command.
#[derive(Debug)]
pub struct RunOutput {
    pub tables: Vec<Table>,
    /// `(file stem, plot)`.
    pub plots: Vec<(String, Plot)>,
    /// Grid points that failed but were recorded.
    pub failures: usize,
    /// Short human-readable findings printed after the run.
    pub summary: Vec<String>,
}

pub fn run(config: &CommandConfig) -> CliResult<RunOutput> {
    config.validate()?;
    match config {
        CommandConfig::SocrCurve { gamma, noise, v_list, eps_grid } => socr_curve(*gamma, *noise, v_list, eps_grid),
        CommandConfig::MinimizerSweep { r, v_list } => sweep(*r, v_list),
        CommandConfig::VerifyLemmas { gamma, noise, n_list, trials, eps_scale, eps_cost, seed } => {
            verify_lemmas(*gamma, *noise, n_list, *trials, *eps_scale, *eps_cost, *seed)
        }
        CommandConfig::Simulate { gamma, noise, v, eps, r, n_list, trials, theta, seed } => {
            simulate(*gamma, *noise, *v, *eps, *r, n_list, *trials, *theta, *seed)
        }
        CommandConfig::CltCheck { gamma, noise, cost, n_list, trials, seed } => {
            clt_check(*gamma, *noise, *cost, n_list, *trials, *seed)
        }
    }
}

fn status_text(status: SolverStatus) -> &'static str {
    match status {
        SolverStatus::Converged => "converged",
        SolverStatus::Boundary => "boundary",
        SolverStatus::Degenerate => "degenerate",
    }
}

fn error_text(e: &mv_awgn::Error) -> String {
    format!("error: {e}")
}

fn socr_curve(gamma: f64, noise: f64, v_list: &[f64], eps_grid: &[f64]) -> CliResult<RunOutput> {
    let mut budgets = v_list.to_vec();
    budgets.push(0.0);
    budgets.sort_by(f64::total_cmp);
    budgets.dedup();

    let mut table = Table::new("data", vec!["eps", "v", "socr", "baseline", "status"]);
    let mut plot = Plot::new("Second-order rate vs error probability", "eps", "r (nats·√n)");
    let mut failures = 0;
    for &v in &budgets {
        let spec = ChannelSpec::new(noise, gamma, v)?;
        let root_disp = spec.dispersion().sqrt();
        let mut points = Vec::new();
        for &eps in eps_grid {
            let baseline = root_disp * norm_quantile(eps);
            match socr(&spec, eps) {
                Ok(r) => {
                    points.push((eps, r));
                    table.push(vec![eps.into(), v.into(), r.into(), baseline.into(), "ok".into()]);
                }
                Err(e) => {
                    failures += 1;
                    table.push(vec![eps.into(), v.into(), Cell::Empty, baseline.into(), error_text(&e).into()]);
                }
            }
        }
        plot.series.push(Series::new(format!("V = {v}"), points));
    }
    Ok(RunOutput { tables: vec![table], plots: vec![("plot".into(), plot)], failures, summary: Vec::new() })
}

fn sweep(r: f64, v_list: &[f64]) -> CliResult<RunOutput> {
    let rows = minimizer_sweep(r, v_list)?;
    let mut table = Table::new("data", vec!["v", "pi_1", "p_1", "pi_2", "p_2", "pi_3", "p_3", "k_value", "status"]);
    let mut atoms_plot = Plot::new(&format!("Minimizer support points, r = {r}"), "V", "pi");
    let mut probs_plot = Plot::new(&format!("Minimizer probabilities, r = {r}"), "V", "p");
    let mut pis: [Vec<(f64, f64)>; 3] = Default::default();
    let mut ps: [Vec<(f64, f64)>; 3] = Default::default();
    let mut failures = 0;
    for row in rows {
        match row.result {
            Ok(eval) => {
                let atoms = eval.minimizer.descending();
                let mut cells: Vec<Cell> = vec![row.v.into()];
                for k in 0..3 {
                    match atoms.get(k) {
                        Some(&(pi, p)) => {
                            cells.push(pi.into());
                            cells.push(p.into());
                            pis[k].push((row.v, pi));
                            ps[k].push((row.v, p));
                        }
                        None => cells.extend([Cell::Empty, Cell::Empty]),
                    }
                }
                cells.push(eval.value.into());
                cells.push(status_text(eval.status).into());
                table.push(cells);
            }
            Err(e) => {
                failures += 1;
                let mut cells: Vec<Cell> = vec![row.v.into()];
                cells.extend(std::iter::repeat_n(Cell::Empty, 7));
                cells.push(error_text(&e).into());
                table.push(cells);
            }
        }
    }
    for k in 0..3 {
        if !pis[k].is_empty() {
            atoms_plot.series.push(Series::new(format!("pi_{}", k + 1), std::mem::take(&mut pis[k])));
            probs_plot.series.push(Series::new(format!("p_{}", k + 1), std::mem::take(&mut ps[k])));
        }
    }
    Ok(RunOutput {
        tables: vec![table],
        plots: vec![("plot".into(), atoms_plot), ("plot_probs".into(), probs_plot)],
        failures,
        summary: Vec::new(),
    })
}

fn verify_lemmas(
    gamma: f64,
    noise: f64,
    n_list: &[usize],
    trials: usize,
    eps_scale: f64,
    eps_cost: f64,
    seed: u64,
) -> CliResult<RunOutput> {
    let root = SeedStream::new(seed);
    let families: Vec<(&str, Vec<LemmaRow>)> = vec![
        ("shell_vs_gaussian", verify_lemma6(gamma, noise, n_list, trials, root.substream(0))?),
        (
            "shell_shift_inverse_sqrt",
            verify_lemma5(gamma, CostPerturbation::InverseSqrt(eps_scale), noise, n_list, trials, root.substream(1))?,
        ),
        (
            "shell_shift_fixed",
            verify_lemma5(gamma, CostPerturbation::Fixed(eps_cost), noise, n_list, trials, root.substream(2))?,
        ),
    ];
    let mut table = Table::new(
        "data",
        vec![
            "family",
            "n",
            "delta",
            "eps",
            "sup_abs_log_ratio",
            "sup_over_log_n",
            "samples_in_set",
            "samples",
            "in_set_fraction",
            "low_coverage",
        ],
    );
    let mut plot = Plot::new("Largest |log ratio| over the typical shell", "n", "sup |log ratio|").log_log();
    let mut summary = Vec::new();
    let ns: Vec<f64> = n_list.iter().map(|&n| n as f64).collect();
    for (name, rows) in &families {
        for row in rows {
            table.push(vec![
                (*name).into(),
                row.n.into(),
                row.delta.into(),
                row.eps.into(),
                row.sup_abs_log_ratio.into(),
                row.sup_over_log_n.into(),
                row.samples_in_set.into(),
                row.samples.into(),
                row.in_set_fraction().into(),
                if row.low_coverage() { "yes" } else { "no" }.into(),
            ]);
        }
        let sups: Vec<f64> = rows.iter().map(|r| r.sup_abs_log_ratio).collect();
        if ns.len() >= 2 && sups.iter().all(|s| *s > 0.0) {
            summary.push(format!("{name}: log-log slope of sup vs n = {:.4}", log_log_slope(&ns, &sups)));
        }
        plot.series.push(Series::new(*name, ns.iter().copied().zip(sups).collect()));
    }
    Ok(RunOutput { tables: vec![table], plots: vec![("plot".into(), plot)], failures: 0, summary })
}

#[allow(clippy::too_many_arguments)]
fn simulate(
    gamma: f64,
    noise: f64,
    v: f64,
    eps: f64,
    r: Option<f64>,
    n_list: &[usize],
    trials: usize,
    theta: f64,
    seed: u64,
) -> CliResult<RunOutput> {
    let spec = ChannelSpec::new(noise, gamma, v)?;
    let r = match r {
        Some(r) => r,
        None => socr(&spec, eps)?,
    };
    let k_limit = error_probability_bound(&spec, r)?;
    let root = SeedStream::new(seed);
    let mut table = Table::new(
        "data",
        vec![
            "n",
            "r",
            "eps_target",
            "estimate",
            "ci_low",
            "ci_high",
            "trials",
            "seed",
            "bound",
            "bound_ci_low",
            "bound_ci_high",
            "k_limit",
            "shells",
            "status",
        ],
    );
    let mut est_pts = Vec::new();
    let mut bound_pts = Vec::new();
    let mut failures = 0;
    for (i, &n) in n_list.iter().enumerate() {
        let stream = root.substream(i as u64);
        let result = build_mixture(&spec, eps, n, r).and_then(|code| {
            let est = estimate_epsilon_n(&code, &spec, trials, stream)?;
            let bound = achievability_error_bound(&code, &spec, trials, theta, stream)?;
            Ok((code, est, bound))
        });
        match result {
            Ok((code, est, bound)) => {
                est_pts.push((n as f64, est.estimate));
                bound_pts.push((n as f64, bound.estimate));
                table.push(vec![
                    n.into(),
                    r.into(),
                    eps.into(),
                    est.estimate.into(),
                    est.ci_low.into(),
                    est.ci_high.into(),
                    trials.into(),
                    seed.into(),
                    bound.estimate.into(),
                    bound.ci_low.into(),
                    bound.ci_high.into(),
                    k_limit.into(),
                    code.shells.len().into(),
                    "ok".into(),
                ]);
            }
            Err(e) => {
                failures += 1;
                let mut cells: Vec<Cell> = vec![n.into(), r.into(), eps.into()];
                cells.extend([Cell::Empty, Cell::Empty, Cell::Empty]);
                cells.extend([trials.into(), seed.into()]);
                cells.extend([Cell::Empty, Cell::Empty, Cell::Empty]);
                cells.extend([k_limit.into(), Cell::Empty, error_text(&e).into()]);
                table.push(cells);
            }
        }
    }
    let mut plot = Plot::new(&format!("Error functional, V = {v}, r = {r:.4}"), "n", "probability").log_x();
    let limit_pts = n_list.iter().map(|&n| (n as f64, k_limit)).collect();
    plot.series.push(Series::new("estimate", est_pts));
    plot.series.push(Series::new("random-coding bound", bound_pts));
    plot.series.push(Series::new("K limit", limit_pts).dashed());
    Ok(RunOutput {
        tables: vec![table],
        plots: vec![("plot".into(), plot)],
        failures,
        summary: vec![format!("r = {r}, asymptotic error probability = {k_limit}")],
    })
}

fn clt_check(gamma: f64, noise: f64, cost: f64, n_list: &[usize], trials: usize, seed: u64) -> CliResult<RunOutput> {
    let spec = ChannelSpec::new(noise, gamma, 0.0)?;
    let root = SeedStream::new(seed);
    let mut data = Table::new(
        "data",
        vec!["n", "cost", "trials", "ks_distance", "sqrt_n_ks", "mean", "variance", "normalizing_variance"],
    );
    let mut cdf = Table::new("cdf", vec!["n", "z", "empirical_cdf", "normal_cdf"]);
    let mut ks_pts = Vec::new();
    for (i, &n) in n_list.iter().enumerate() {
        let t = empirical_cdf_info_density(&spec, cost, n, trials, root.substream(i as u64))?;
        data.push(vec![
            n.into(),
            cost.into(),
            trials.into(),
            t.ks_distance.into(),
            ((n as f64).sqrt() * t.ks_distance).into(),
            t.mean.into(),
            t.variance.into(),
            t.normalizing_variance.into(),
        ]);
        for &(z, f, phi) in &t.probes {
            cdf.push(vec![n.into(), z.into(), f.into(), phi.into()]);
        }
        ks_pts.push((n as f64, t.ks_distance));
    }
    let mut summary = Vec::new();
    let mut plot = Plot::new("KS distance to the normal law", "n", "sup |F_n - Phi|").log_log();
    if ks_pts.len() >= 2 {
        let (x, y): (Vec<f64>, Vec<f64>) = ks_pts.iter().copied().unzip();
        summary.push(format!("fitted decay exponent = {:.4}", -log_log_slope(&x, &y)));
        let c = y[0] * x[0].sqrt();
        plot.series.push(Series::new("C/sqrt(n)", x.iter().map(|&n| (n, c / n.sqrt())).collect()).dashed());
    }
    plot.series.insert(0, Series::new("KS distance", ks_pts));
    Ok(RunOutput { tables: vec![data, cdf], plots: vec![("plot".into(), plot)], failures: 0, summary })
}
