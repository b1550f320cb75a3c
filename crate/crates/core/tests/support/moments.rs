// Channel quantities recomputed from the Gaussian log-likelihood ratio itself.
//
// With y = x + √N z the per-letter log ratio ln W(y|x) − ln Q*(y) is the
// quadratic a + e z + c z² in a standard normal z, where
//   a = ½ ln(S/N) + x²/(2S),  e = x√N/S,  c = N/(2S) − ½,  S = Γ + N.
// Its moments follow from E[z²] = 1, E[z⁴] = 3. The capacity derivative is
// a Richardson-extrapolated central difference of ½ ln(S/N).

#![allow(dead_code)]

fn coeffs(gamma: f64, noise: f64, x: f64) -> (f64, f64, f64) {
    let s = gamma + noise;
    let a = 0.5 * (s / noise).ln() + x * x / (2.0 * s);
    let e = x * noise.sqrt() / s;
    let c = noise / (2.0 * s) - 0.5;
    (a, e, c)
}

/// Mutual information of the Gaussian input, `E[a + c z²]` averaged over
/// `x ~ N(0, Γ)` (which contributes `Γ/(2S)` through `x²`).
pub fn capacity(gamma: f64, noise: f64) -> f64 {
    let (a0, _, c) = coeffs(gamma, noise, 0.0);
    a0 + gamma / (2.0 * (gamma + noise)) + c
}

pub fn capacity_derivative(gamma: f64, noise: f64) -> f64 {
    let d = |h: f64| (capacity(gamma + h, noise) - capacity(gamma - h, noise)) / (2.0 * h);
    let h = 0.05 * gamma;
    let (d1, d2, d3) = (d(h), d(h / 2.0), d(h / 4.0));
    let r1 = (4.0 * d2 - d1) / 3.0;
    let r2 = (4.0 * d3 - d2) / 3.0;
    (16.0 * r2 - r1) / 15.0
}

/// Mean of the log ratio for a fixed input letter `x`.
pub fn mean_given(gamma: f64, noise: f64, x: f64) -> f64 {
    let (a, _, c) = coeffs(gamma, noise, x);
    a + c
}

/// Variance of the log ratio for a fixed input letter `x`:
/// `Var(e z + c z²) = e² + 2c²`.
pub fn var_given(gamma: f64, noise: f64, x: f64) -> f64 {
    let (_, e, c) = coeffs(gamma, noise, x);
    e * e + 2.0 * c * c
}

/// `E_x[Var(· | x)]` over `x ~ N(0, Γ)`; `e²` is linear in `x²`.
pub fn dispersion(gamma: f64, noise: f64) -> f64 {
    let s = gamma + noise;
    let (_, _, c) = coeffs(gamma, noise, 0.0);
    gamma * noise / (s * s) + 2.0 * c * c
}
