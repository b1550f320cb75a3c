//! The K function `K(r, v) = min E[Φ(Π)]` over random variables `Π` with
//! `E[Π] = r` and `Var(Π) ≤ v`, its minimizers, and the second-order rate
//! and error-probability limit it induces.
//!
//! For `v > 0` the minimum is attained by a distribution with two or three
//! atoms and the variance constraint is active, so the search runs over
//! those two families with both moment constraints eliminated:
//!
//! * two atoms: `r + √(v(1−p)/p)` with mass `p` and `r − √(vp/(1−p))` with
//!   mass `1 − p`, searched in `t = logit(p)`;
//! * three atoms: any ordered support `d₁ < d₂ < d₃` (offsets from `r`) with
//!   `d₁ < 0 < d₃`; the masses are the unique solution of the three moment
//!   equations, and supports with a non-positive mass are discarded.
//!
//! Each family is scanned on a coarse grid and the best cells are polished
//! with a derivative-free local search.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::awgn::ChannelSpec;
use crate::error::{invalid, Error, Result};
use crate::special::{norm_cdf, norm_quantile};

/// Masses must sum to one within this tolerance.
pub const PROB_SUM_TOL: f64 = 1e-12;

/// A discrete distribution with one to three atoms in increasing order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointMassDistribution {
    atoms: Vec<(f64, f64)>,
}

impl PointMassDistribution {
    /// Builds a distribution from `(point, probability)` pairs. Atoms are
    /// sorted; duplicates, non-positive masses or masses not summing to one
    /// are rejected.
    pub fn new(mut atoms: Vec<(f64, f64)>) -> Result<Self> {
        if atoms.is_empty() || atoms.len() > 3 {
            return Err(invalid(format!("need 1 to 3 atoms, got {}", atoms.len())));
        }
        if atoms.iter().any(|&(x, p)| !x.is_finite() || !(p > 0.0)) {
            return Err(invalid("atoms must be finite with positive mass"));
        }
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        if atoms.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(invalid("duplicate support points"));
        }
        let total: f64 = atoms.iter().map(|a| a.1).sum();
        if (total - 1.0).abs() > PROB_SUM_TOL {
            return Err(invalid(format!("masses sum to {total}, not 1")));
        }
        Ok(Self { atoms })
    }

    pub fn point_mass(x: f64) -> Self {
        Self { atoms: vec![(x, 1.0)] }
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn mean(&self) -> f64 {
        self.atoms.iter().map(|&(x, p)| p * x).sum()
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.atoms.iter().map(|&(x, p)| p * (x - m) * (x - m)).sum()
    }

    pub fn expect<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.atoms.iter().map(|&(x, p)| p * f(x)).sum()
    }

    /// `E[Φ(Π)]`
    pub fn expected_phi(&self) -> f64 {
        self.expect(norm_cdf)
    }

    /// Atoms from the largest point down, the labelling used in the sweep
    /// tables (`π₁` is the largest support point).
    pub fn descending(&self) -> Vec<(f64, f64)> {
        self.atoms.iter().rev().copied().collect()
    }
}

/// How the minimum was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverStatus {
    /// Interior optimum found by grid search and local refinement.
    Converged,
    /// The best point sits on the clamped edge of the search region.
    Boundary,
    /// `v = 0`: the constraint pins `Π ≡ r`.
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KEvaluation {
    pub r: f64,
    pub v: f64,
    pub value: f64,
    pub minimizer: PointMassDistribution,
    pub status: SolverStatus,
}

/// Search settings for [`KSolver`].
#[derive(Clone, Debug, PartialEq)]
pub struct KSolverConfig {
    /// Grid points in `logit(p)` for the two-point family.
    pub two_point_grid: usize,
    /// Grid points per sign for the three-point support offsets.
    pub three_point_grid: usize,
    /// Number of best grid cells refined locally.
    pub starts: usize,
    /// Masses closer than this to 0 or 1 are outside the feasible set.
    pub prob_clamp: f64,
    /// Two- and three-point minima closer than this are considered tied.
    pub tie_tol: f64,
    /// Whether to search the three-point family at all.
    pub three_point: bool,
}

impl Default for KSolverConfig {
    fn default() -> Self {
        Self {
            two_point_grid: 400,
            three_point_grid: 200,
            starts: 5,
            prob_clamp: 1e-9,
            tie_tol: 1e-9,
            three_point: true,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct KSolver {
    pub config: KSolverConfig,
}

impl KSolver {
    pub fn new(config: KSolverConfig) -> Self {
        Self { config }
    }

    /// Evaluates `K(r, v)` together with its minimizer.
    pub fn evaluate(&self, r: f64, v: f64) -> Result<KEvaluation> {
        if !r.is_finite() || !v.is_finite() {
            return Err(invalid(format!("K arguments must be finite, got r={r}, v={v}")));
        }
        if v < 0.0 {
            return Err(invalid(format!("variance parameter must be nonnegative, got {v}")));
        }
        if v == 0.0 {
            return Ok(KEvaluation {
                r,
                v,
                value: norm_cdf(r),
                minimizer: PointMassDistribution::point_mass(r),
                status: SolverStatus::Degenerate,
            });
        }

        let two = self.two_point(r, v);
        let mut best = two.clone();
        if self.config.three_point {
            if let Some(three) = self.three_point(r, v) {
                if three.value < two.value - self.config.tie_tol {
                    best = three;
                }
            }
        }
        let minimizer = PointMassDistribution::new(best.atoms.clone())
            .map_err(|e| Error::NoConvergence(format!("solver produced an invalid minimizer: {e}")))?;
        Ok(KEvaluation {
            r,
            v,
            value: minimizer.expected_phi(),
            minimizer,
            status: if best.boundary { SolverStatus::Boundary } else { SolverStatus::Converged },
        })
    }

    fn two_point(&self, r: f64, v: f64) -> Candidate {
        let s = v.sqrt();
        let t_max = ((1.0 - self.config.prob_clamp) / self.config.prob_clamp).ln();
        let m = self.config.two_point_grid.max(3);
        let step = 2.0 * t_max / (m - 1) as f64;
        let obj = |t: f64| two_point_value(r, s, t);
        let vals: Vec<f64> = (0..m).map(|i| obj(-t_max + i as f64 * step)).collect();

        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        let mut best_t = -t_max + order[0] as f64 * step;
        let mut best_val = vals[order[0]];
        for &i in order.iter().take(self.config.starts) {
            let lo = -t_max + i.saturating_sub(1) as f64 * step;
            let hi = -t_max + (i + 1).min(m - 1) as f64 * step;
            let (t, val) = golden_section(&obj, lo, hi, 1e-12);
            if val < best_val {
                best_val = val;
                best_t = t;
            }
        }
        let boundary = (best_t.abs() - t_max).abs() < 0.5 * step;
        let hi = r + s * (-0.5 * best_t).exp();
        let lo = r - s * (0.5 * best_t).exp();
        // Both masses from the logistic directly: `1 − p` by subtraction
        // loses relative precision when `p` is near 1.
        Candidate { atoms: vec![(lo, logistic(-best_t)), (hi, logistic(best_t))], value: best_val, boundary }
    }

    fn three_point(&self, r: f64, v: f64) -> Option<Candidate> {
        let s = v.sqrt();
        let g = self.config.three_point_grid.max(4);
        // Offsets from r: geometric from s/1000 out to where Φ saturates.
        let d_min = 1e-3 * s;
        let d_max = (10.0 * s).max(r.abs() + 9.0);
        let ratio = (d_max / d_min).powf(1.0 / (g - 1) as f64);
        let pos: Vec<f64> = (0..g).map(|k| d_min * ratio.powi(k as i32)).collect();
        let mut grid: Vec<f64> = pos.iter().rev().map(|d| -d).chain(pos.iter().copied()).collect();
        grid.dedup();
        let phi: Vec<f64> = grid.iter().map(|&d| norm_cdf(r + d)).collect();
        let n_neg = g;

        // Best few feasible cells; the scan parallelises over the lowest atom.
        let starts = self.config.starts.max(1);
        let mut cells: Vec<(f64, [usize; 3])> = (0..n_neg)
            .into_par_iter()
            .map(|i| {
                let mut local: Vec<(f64, [usize; 3])> = Vec::with_capacity(starts + 1);
                for k in n_neg..grid.len() {
                    for j in (i + 1)..k {
                        if let Some(w) = three_point_masses(grid[i], grid[j], grid[k], v) {
                            let val = w[0] * phi[i] + w[1] * phi[j] + w[2] * phi[k];
                            push_best(&mut local, (val, [i, j, k]), starts);
                        }
                    }
                }
                local
            })
            .reduce(Vec::new, |mut a, b| {
                for c in b {
                    push_best(&mut a, c, starts);
                }
                a
            });
        if cells.is_empty() {
            return None;
        }
        cells.sort_by(|a, b| a.0.total_cmp(&b.0));

        let clamp = self.config.prob_clamp;
        let obj = |d: &[f64; 3]| -> f64 {
            if !(d[0] < d[1] && d[1] < d[2] && d[0] < 0.0 && d[2] > 0.0) {
                return f64::INFINITY;
            }
            match three_point_masses(d[0], d[1], d[2], v) {
                Some(w) if w.iter().all(|&p| p > clamp) => {
                    w[0] * norm_cdf(r + d[0]) + w[1] * norm_cdf(r + d[1]) + w[2] * norm_cdf(r + d[2])
                }
                _ => f64::INFINITY,
            }
        };
        let mut best: Option<([f64; 3], f64)> = None;
        for (_, [i, j, k]) in cells {
            let start = [grid[i], grid[j], grid[k]];
            let (x, fx) = nelder_mead(&obj, start, 0.05 * s, 4000);
            if best.as_ref().is_none_or(|b| fx < b.1) {
                best = Some((x, fx));
            }
        }
        let (d, value) = best?;
        if !value.is_finite() {
            return None;
        }
        let w = three_point_masses(d[0], d[1], d[2], v)?;
        let boundary = w.iter().any(|&p| p < 1e3 * clamp) || d.iter().any(|x| x.abs() >= 0.999 * d_max);
        Some(Candidate { atoms: (0..3).map(|q| (r + d[q], w[q])).collect(), value, boundary })
    }
}

#[derive(Clone, Debug)]
struct Candidate {
    atoms: Vec<(f64, f64)>,
    value: f64,
    boundary: bool,
}

fn push_best(list: &mut Vec<(f64, [usize; 3])>, c: (f64, [usize; 3]), cap: usize) {
    if list.len() < cap {
        list.push(c);
    } else if let Some((worst, _)) = list
        .iter()
        .enumerate()
        .max_by(|a, b| a.1 .0.total_cmp(&b.1 .0))
        .map(|(i, e)| (i, e.0))
        .filter(|&(_, val)| c.0 < val)
    {
        list[worst] = c;
    }
}

fn logistic(t: f64) -> f64 {
    1.0 / (1.0 + (-t).exp())
}

/// `E[Φ(Π)]` over the two-point family at `t = logit(p)`.
fn two_point_value(r: f64, s: f64, t: f64) -> f64 {
    logistic(t) * norm_cdf(r + s * (-0.5 * t).exp()) + logistic(-t) * norm_cdf(r - s * (0.5 * t).exp())
}

/// Masses putting mean 0 and variance `v` on the offsets `a < b < c`, or
/// `None` if any is non-positive.
fn three_point_masses(a: f64, b: f64, c: f64, v: f64) -> Option<[f64; 3]> {
    let pa = (v + b * c) / ((a - b) * (a - c));
    let pb = (v + a * c) / ((b - a) * (b - c));
    let pc = (v + a * b) / ((c - a) * (c - b));
    (pa > 0.0 && pb > 0.0 && pc > 0.0).then_some([pa, pb, pc])
}

fn golden_section<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    let fx = f(x);
    // endpoints can beat the interior when the bracket is monotone
    [(x, fx), (c, fc), (d, fd)].into_iter().min_by(|p, q| p.1.total_cmp(&q.1)).unwrap()
}

fn nelder_mead<F: Fn(&[f64; 3]) -> f64>(f: &F, x0: [f64; 3], step: f64, max_iter: usize) -> ([f64; 3], f64) {
    let mut simplex: Vec<([f64; 3], f64)> = Vec::with_capacity(4);
    simplex.push((x0, f(&x0)));
    for i in 0..3 {
        let mut x = x0;
        // step relative to the coordinate so tiny offsets stay ordered
        x[i] += step.min(0.25 * x0[i].abs().max(1e-12)) * if x0[i] < 0.0 { -1.0 } else { 1.0 };
        simplex.push((x, f(&x)));
    }
    let centroid = |s: &[([f64; 3], f64)]| {
        let mut c = [0.0; 3];
        for (x, _) in &s[..3] {
            for q in 0..3 {
                c[q] += x[q] / 3.0;
            }
        }
        c
    };
    let lerp = |a: &[f64; 3], b: &[f64; 3], t: f64| {
        [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]), a[2] + t * (b[2] - a[2])]
    };
    for _ in 0..max_iter {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[3].1 - simplex[0].1;
        if spread.is_finite() && spread <= 1e-15 {
            let size: f64 = simplex[1..]
                .iter()
                .map(|(x, _)| (0..3).map(|q| (x[q] - simplex[0].0[q]).abs()).fold(0.0, f64::max))
                .fold(0.0, f64::max);
            if size < 1e-10 {
                break;
            }
        }
        let c = centroid(&simplex);
        let worst = simplex[3];
        let xr = lerp(&worst.0, &c, 2.0);
        let fr = f(&xr);
        if fr < simplex[0].1 {
            let xe = lerp(&worst.0, &c, 3.0);
            let fe = f(&xe);
            simplex[3] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[2].1 {
            simplex[3] = (xr, fr);
        } else {
            let xc = lerp(&worst.0, &c, 0.5);
            let fc = f(&xc);
            if fc < worst.1 {
                simplex[3] = (xc, fc);
            } else {
                let best = simplex[0].0;
                for item in simplex.iter_mut().skip(1) {
                    let x = lerp(&best, &item.0, 0.5);
                    *item = (x, f(&x));
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex[0]
}

/// `K(r, v)` with the default solver.
pub fn k_value(r: f64, v: f64) -> Result<KEvaluation> {
    KSolver::default().evaluate(r, v)
}

/// The achieving distribution of [`k_value`] for `v > 0`.
pub fn k_minimizer(r: f64, v: f64) -> Result<PointMassDistribution> {
    if !(v > 0.0) {
        return Err(invalid(format!("minimizer requires v > 0, got {v}")));
    }
    Ok(k_value(r, v)?.minimizer)
}

/// Arguments of the K function for second-order rate `r` on `spec`:
/// `(r / √V(Γ), C'(Γ)² V / V(Γ))`.
pub fn k_arguments(spec: &ChannelSpec, r: f64) -> (f64, f64) {
    let disp = spec.dispersion();
    let cd = spec.capacity_derivative();
    (r / disp.sqrt(), cd * cd * spec.var_budget() / disp)
}

/// Asymptotic average error probability at rate `C(Γ) + r/√n`.
pub fn error_probability_bound(spec: &ChannelSpec, r: f64) -> Result<f64> {
    error_probability_bound_with(&KSolver::default(), spec, r)
}

pub fn error_probability_bound_with(solver: &KSolver, spec: &ChannelSpec, r: f64) -> Result<f64> {
    let (rn, vn) = k_arguments(spec, r);
    Ok(solver.evaluate(rn, vn)?.value)
}

/// Bisection settings for [`socr`].
#[derive(Clone, Debug, PartialEq)]
pub struct SocrConfig {
    pub tolerance: f64,
    /// Largest bracket width tried before giving up.
    pub max_width: f64,
}

impl Default for SocrConfig {
    fn default() -> Self {
        Self { tolerance: 1e-6, max_width: 1e6 }
    }
}

/// Optimal second-order coding rate: the largest `r` with
/// `K(r/√V(Γ), C'(Γ)²V/V(Γ)) ≤ eps`.
pub fn socr(spec: &ChannelSpec, eps: f64) -> Result<f64> {
    socr_with(&KSolver::default(), &SocrConfig::default(), spec, eps)
}

pub fn socr_with(solver: &KSolver, config: &SocrConfig, spec: &ChannelSpec, eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(invalid(format!("error probability must lie in (0, 1), got {eps}")));
    }
    let disp = spec.dispersion();
    let (_, vn) = k_arguments(spec, 0.0);
    let k_at = |r: f64| -> Result<f64> { error_probability_bound_with(solver, spec, r) };

    // K ≤ Φ, so the almost-sure-constraint rate is always feasible.
    let mut lo = disp.sqrt() * norm_quantile(eps);
    let mut width = 10.0 * (disp * (1.0 + vn)).sqrt();
    let mut hi = lo + width;
    while k_at(hi)? <= eps {
        lo = hi;
        width *= 2.0;
        if width > config.max_width {
            return Err(Error::NoConvergence(format!("socr bracket exceeded width {} at eps={eps}", config.max_width)));
        }
        hi = lo + width;
    }
    while hi - lo > config.tolerance {
        let mid = 0.5 * (lo + hi);
        if k_at(mid)? <= eps {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// One row of a minimizer sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub v: f64,
    pub result: Result<KEvaluation>,
}

/// Minimizers of `K(r, v)` for each `v` in `v_grid`. Failed rows are kept
/// with their error.
pub fn minimizer_sweep(r: f64, v_grid: &[f64]) -> Result<Vec<SweepRow>> {
    minimizer_sweep_with(&KSolver::default(), r, v_grid)
}

pub fn minimizer_sweep_with(solver: &KSolver, r: f64, v_grid: &[f64]) -> Result<Vec<SweepRow>> {
    if v_grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(invalid("v grid must be strictly increasing"));
    }
    if v_grid.iter().any(|&v| !(v > 0.0)) {
        return Err(invalid("v grid must be positive"));
    }
    Ok(v_grid.par_iter().map(|&v| SweepRow { v, result: solver.evaluate(r, v) }).collect())
}

/// Decrease of `E[Φ]` obtained by splitting the largest atom `π` (mass `p`)
/// into `π ± a` with mass `p/2` each, using the largest `a ≤ max_a` that
/// keeps the variance within `v` and `π − a ≥ 0` (so `Φ` is concave on the
/// split interval). A minimizer must admit no such improvement.
pub fn split_improvement(dist: &PointMassDistribution, v: f64, max_a: f64) -> f64 {
    let &(top, p) = dist.atoms().last().expect("non-empty distribution");
    if top <= 0.0 {
        return 0.0;
    }
    let slack = v - dist.variance();
    if slack <= 0.0 {
        return 0.0;
    }
    let a = max_a.min((slack / p).sqrt()).min(top);
    p * (norm_cdf(top) - 0.5 * norm_cdf(top - a) - 0.5 * norm_cdf(top + a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distribution_validation() {
        assert!(PointMassDistribution::new(vec![]).is_err());
        assert!(PointMassDistribution::new(vec![(0.0, 0.5), (0.0, 0.5)]).is_err());
        assert!(PointMassDistribution::new(vec![(0.0, 0.5), (1.0, 0.4)]).is_err());
        assert!(PointMassDistribution::new(vec![(0.0, 1.2), (1.0, -0.2)]).is_err());
        assert!(PointMassDistribution::new(vec![(0.0, 0.25); 4]).is_err());
        let d = PointMassDistribution::new(vec![(1.0, 0.5), (-1.0, 0.5)]).unwrap();
        assert_eq!(d.atoms()[0].0, -1.0);
        assert_eq!(d.mean(), 0.0);
        assert_eq!(d.variance(), 1.0);
        assert_eq!(d.descending()[0].0, 1.0);
    }

    #[test]
    fn three_point_masses_satisfy_moments() {
        let w = three_point_masses(-1.0, 0.5, 2.0, 0.9).unwrap();
        let pts = [-1.0, 0.5, 2.0];
        let m0: f64 = w.iter().sum();
        let m1: f64 = w.iter().zip(pts).map(|(p, x)| p * x).sum();
        let m2: f64 = w.iter().zip(pts).map(|(p, x)| p * x * x).sum();
        assert!((m0 - 1.0).abs() < 1e-14 && m1.abs() < 1e-14 && (m2 - 0.9).abs() < 1e-14);
        // variance beyond what the support allows
        assert!(three_point_masses(-0.1, 0.0, 0.1, 1.0).is_none());
    }

    #[test]
    fn zero_variance_collapses_to_phi() {
        let k = k_value(0.0, 0.0).unwrap();
        assert_eq!(k.value, 0.5);
        assert_eq!(k.status, SolverStatus::Degenerate);
        assert_eq!(k.minimizer.atoms(), &[(0.0, 1.0)]);
        assert_eq!(k_value(1.3, 0.0).unwrap().value, norm_cdf(1.3));
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(k_value(f64::NAN, 1.0).is_err());
        assert!(k_value(0.0, f64::INFINITY).is_err());
        assert!(k_value(0.0, -1.0).is_err());
        assert!(k_minimizer(0.0, 0.0).is_err());
    }

    #[test]
    fn strictly_below_phi_for_positive_variance() {
        let k = k_value(0.0, 1.0).unwrap();
        assert!(k.value < 0.5 - 1e-3);
        assert!(k.minimizer.len() >= 2);
        assert!((k.minimizer.mean()).abs() < 1e-9);
        assert!((k.minimizer.variance() - 1.0).abs() < 1e-6);
        assert_eq!(k.value, k.minimizer.expected_phi());
    }

    #[test]
    fn split_flags_slack_variance() {
        // variance 0.25 under a budget of 1 with the top atom in the concave region
        let d = PointMassDistribution::new(vec![(0.5, 0.5), (1.5, 0.5)]).unwrap();
        assert!(split_improvement(&d, 1.0, 0.1) > 1e-6);
        assert_eq!(split_improvement(&d, 0.25, 0.1), 0.0);
    }

    #[test]
    fn socr_rejects_bad_eps() {
        let spec = ChannelSpec::new(1.0, 2.0, 1.0).unwrap();
        assert!(socr(&spec, 0.0).is_err());
        assert!(socr(&spec, 1.0).is_err());
    }

    #[test]
    fn sweep_rejects_unsorted_grid() {
        assert!(minimizer_sweep(0.0, &[0.5, 0.1]).is_err());
        assert!(minimizer_sweep(0.0, &[0.0, 0.1]).is_err());
    }
}
