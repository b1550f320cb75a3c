//! Second-order coding rates for the AWGN channel under mean and variance
//! cost constraints.
//!
//! The crate is organised by the objects it computes:
//!
//! * [`awgn`] holds the closed-form channel quantities (capacity-cost,
//!   dispersion, information-density moments) and an exact sampler for the
//!   information-density sum based on the noncentral chi-squared reduction.
//! * [`kfunc`] evaluates the K function, the minimum of `E[Φ(Π)]` over
//!   distributions with a fixed mean and variance, and derives the optimal
//!   second-order rate and the matching error-probability limit.
//! * [`sphere`] evaluates output densities induced by uniform inputs on
//!   spheres, entirely in the log domain, and checks the log-ratio bounds
//!   between shell densities and the i.i.d. Gaussian output density.
//! * [`coding`] builds the shell-mixture input distribution and estimates the
//!   information-density error functional by Monte Carlo.
//!
//! [`special`], [`quad`], [`stats`] and [`rng`] are the supporting numerics.

// `!(x > 0.0)` is used deliberately so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod awgn;
pub mod coding;
pub mod error;
pub mod kfunc;
pub mod quad;
pub mod rng;
pub mod special;
pub mod sphere;
pub mod stats;

pub use awgn::{ChannelSpec, InfoDensitySumSample};
pub use coding::{MonteCarloEstimate, Shell, SphereMixtureCode};
pub use error::{Error, Result};
pub use kfunc::{KEvaluation, PointMassDistribution, SolverStatus};
pub use sphere::{ShellOutputDensity, TypicalShellSet};
