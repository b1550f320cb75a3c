// Radial quadrature of a shell output density: integrates the density of
// ‖y‖ = ρ, which is Q^cc at ‖y‖² = ρ² times the sphere surface area
// 2 π^{n/2} ρ^{n−1} / Γ(n/2).

#![allow(dead_code)]

use mv_awgn::quad::integrate;
use mv_awgn::special::{ln_gamma, ln_pi};
use mv_awgn::ShellOutputDensity;

/// `(∫ q, E‖Y‖², Var‖Y‖²)` under the density.
pub fn radial_moments(d: &ShellOutputDensity) -> (f64, f64, f64) {
    let n = d.blocklength() as f64;
    let log_area = std::f64::consts::LN_2 + 0.5 * n * ln_pi() - ln_gamma(0.5 * n);
    let pdf = |rho: f64| {
        if rho <= 0.0 {
            return 0.0;
        }
        (log_area + (n - 1.0) * rho.ln() + d.log_density(rho * rho).unwrap()).exp()
    };
    let sd = d.noise_variance().sqrt();
    let upper = d.radius() + (n * d.noise_variance()).sqrt() + 40.0 * sd;
    // Panels keep the adaptive rule focused on the bulk.
    let edges: Vec<f64> = (0..=64).map(|k| upper * k as f64 / 64.0).collect();
    let moment = |p: i32| -> f64 {
        edges
            .windows(2)
            // Absolute tolerance scaled to the size of the p-th moment.
            .map(|w| integrate(|rho| pdf(rho) * rho.powi(p), w[0], w[1], 1e-12 * upper.powi(p)))
            .sum()
    };
    let mass = moment(0);
    let m2 = moment(2);
    let m4 = moment(4);
    (mass, m2, m4 - m2 * m2)
}
