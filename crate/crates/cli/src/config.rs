//! Command-line arguments and the resolved, serialisable run configuration.
//!
//! Every subcommand resolves its flags (defaults included) into a
//! [`CommandConfig`], which is validated before dispatch and stored verbatim
//! in the run manifest so the run can be replayed.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, CliResult};

#[derive(Debug, Parser)]
#[command(
    name = "mv-awgn",
    version,
    about = "Second-order rates and shell-mixture simulations for the AWGN channel under mean and variance cost constraints"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Second-order rate against error probability, one curve per variance budget.
    SocrCurve(SocrCurveArgs),
    /// Minimizing distributions of the K function over a variance grid.
    MinimizerSweep(MinimizerSweepArgs),
    /// Log-ratio bounds between shell, perturbed-shell and Gaussian output densities.
    VerifyLemmas(VerifyLemmasArgs),
    /// Monte Carlo error functional and random-coding bound of the shell mixture.
    Simulate(SimulateArgs),
    /// Convergence of the normalised information density to the normal law.
    CltCheck(CltCheckArgs),
    /// Repeat a run from its manifest.
    Rerun(RerunArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Svg,
    Both,
}

impl Format {
    pub fn csv(self) -> bool {
        matches!(self, Self::Csv | Self::Both)
    }

    pub fn svg(self) -> bool {
        matches!(self, Self::Svg | Self::Both)
    }
}

#[derive(Clone, Debug, Args)]
pub struct OutputArgs {
    /// Root directory for run folders.
    #[arg(long, default_value = "runs")]
    pub out_dir: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Both)]
    pub format: Format,
}

#[derive(Clone, Debug, Args)]
pub struct ChannelArgs {
    /// Mean cost Γ.
    #[arg(long, default_value_t = 2.0)]
    pub gamma: f64,
    /// Noise variance N.
    #[arg(long, default_value_t = 1.0)]
    pub noise: f64,
}

#[derive(Debug, Args)]
pub struct SocrCurveArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,
    /// Variance budgets (comma list or a:b:step); V = 0 is always included.
    #[arg(long, default_value = "0.5,1,2")]
    pub v_list: RealList,
    /// Error probabilities (comma list or a:b:step).
    #[arg(long, default_value = "0.01:0.5:0.01")]
    pub eps_grid: RealList,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct MinimizerSweepArgs {
    /// First K argument (normalised rate offset).
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    pub r: f64,
    /// Second K argument values (comma list or a:b:step).
    #[arg(long, default_value = "0.1:2:0.1")]
    pub v_list: RealList,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyLemmasArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,
    #[arg(long, default_value = "128,512,2048,8192")]
    pub n_list: SizeList,
    /// Samples per blocklength.
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    /// Shrinking cost perturbation c in ε = c/√n.
    #[arg(long, default_value_t = 1.0)]
    pub eps_scale: f64,
    /// Fixed cost perturbation ε.
    #[arg(long, default_value_t = 1.0)]
    pub eps_cost: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,
    /// Variance budget V.
    #[arg(long, default_value_t = 1.0)]
    pub v: f64,
    /// Target error probability; sets r to the optimal second-order rate when --r is absent.
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    /// Second-order rate offset r (nats·√n).
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<f64>,
    #[arg(long, default_value = "500,2000,8000")]
    pub n_list: SizeList,
    #[arg(long, default_value_t = 100_000)]
    pub trials: usize,
    /// Exponent ϑ of the threshold slack n^{−ϑ}.
    #[arg(long, default_value_t = 0.6)]
    pub theta: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CltCheckArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,
    /// Input cost c (defaults to Γ).
    #[arg(long)]
    pub cost: Option<f64>,
    #[arg(long, default_value = "100,1000,10000")]
    pub n_list: SizeList,
    #[arg(long, default_value_t = 100_000)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct RerunArgs {
    /// Manifest written by an earlier run.
    #[arg(long)]
    pub manifest: PathBuf,
    /// Root directory for the new run folder (defaults to the original).
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

/// Real values given as `a,b,c` or as an inclusive range `start:stop:step`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealList(pub Vec<f64>);

impl FromStr for RealList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("bad number {t:?}: {e}"));
        if s.contains(':') {
            let parts: Vec<&str> = s.split(':').collect();
            let [a, b, step] = parts[..] else {
                return Err(format!("range {s:?} must be start:stop:step"));
            };
            let (a, b, step) = (parse(a)?, parse(b)?, parse(step)?);
            if !(step > 0.0 && b >= a && a.is_finite() && b.is_finite()) {
                return Err(format!("range {s:?} needs start <= stop and step > 0"));
            }
            let count = ((b - a) / step + 1e-9).floor() as usize + 1;
            if count > 100_000 {
                return Err(format!("range {s:?} has too many points"));
            }
            // Each point from its index so rounding does not accumulate.
            Ok(Self((0..count).map(|k| a + k as f64 * step).collect()))
        } else {
            s.split(',').map(parse).collect::<Result<_, _>>().map(Self)
        }
    }
}

/// Comma-separated positive integers.
#[derive(Clone, Debug, PartialEq)]
pub struct SizeList(pub Vec<usize>);

impl FromStr for SizeList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| format!("bad integer {t:?}: {e}")))
            .collect::<Result<_, _>>()
            .map(Self)
    }
}

/// Fully resolved parameters of one run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum CommandConfig {
    SocrCurve {
        gamma: f64,
        noise: f64,
        v_list: Vec<f64>,
        eps_grid: Vec<f64>,
    },
    MinimizerSweep {
        r: f64,
        v_list: Vec<f64>,
    },
    VerifyLemmas {
        gamma: f64,
        noise: f64,
        n_list: Vec<usize>,
        trials: usize,
        eps_scale: f64,
        eps_cost: f64,
        seed: u64,
    },
    Simulate {
        gamma: f64,
        noise: f64,
        v: f64,
        eps: f64,
        r: Option<f64>,
        n_list: Vec<usize>,
        trials: usize,
        theta: f64,
        seed: u64,
    },
    CltCheck {
        gamma: f64,
        noise: f64,
        cost: f64,
        n_list: Vec<usize>,
        trials: usize,
        seed: u64,
    },
}

impl CommandConfig {
    pub fn name(&self) -> &'static str {
        match self {
            Self::SocrCurve { .. } => "socr-curve",
            Self::MinimizerSweep { .. } => "minimizer-sweep",
            Self::VerifyLemmas { .. } => "verify-lemmas",
            Self::Simulate { .. } => "simulate",
            Self::CltCheck { .. } => "clt-check",
        }
    }

    /// Checks every parameter against the preconditions of the called routines.
    pub fn validate(&self) -> CliResult<()> {
        match self {
            Self::SocrCurve { gamma, noise, v_list, eps_grid } => {
                check_channel(*gamma, *noise)?;
                check_nonempty("v-list", v_list)?;
                check_nonempty("eps-grid", eps_grid)?;
                if v_list.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
                    return Err(invalid("variance budgets must be nonnegative"));
                }
                if eps_grid.iter().any(|e| !(*e > 0.0 && *e < 1.0)) {
                    return Err(invalid("error probabilities must lie in (0, 1)"));
                }
            }
            Self::MinimizerSweep { r, v_list } => {
                if !r.is_finite() {
                    return Err(invalid("r must be finite"));
                }
                check_nonempty("v-list", v_list)?;
                if v_list.iter().any(|v| !(v.is_finite() && *v > 0.0)) || v_list.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(invalid("v-list must be positive and strictly increasing"));
                }
            }
            Self::VerifyLemmas { gamma, noise, n_list, trials, eps_scale, eps_cost, .. } => {
                check_channel(*gamma, *noise)?;
                check_increasing(n_list, 2)?;
                if *trials < 1000 {
                    return Err(invalid("verify-lemmas needs at least 1000 trials per n"));
                }
                if !(eps_scale.is_finite() && eps_cost.is_finite())
                    || gamma + eps_cost <= 0.0
                    || gamma + eps_scale / (n_list[0] as f64).sqrt() <= 0.0
                {
                    return Err(invalid("cost perturbations must keep the perturbed cost positive"));
                }
            }
            Self::Simulate { gamma, noise, v, eps, r, n_list, trials, theta, .. } => {
                check_channel(*gamma, *noise)?;
                if !(v.is_finite() && *v >= 0.0) {
                    return Err(invalid("v must be nonnegative"));
                }
                if !(*eps > 0.0 && *eps < 1.0) {
                    return Err(invalid("eps must lie in (0, 1)"));
                }
                if r.is_some_and(|r| !r.is_finite()) {
                    return Err(invalid("r must be finite"));
                }
                check_increasing(n_list, 1)?;
                if *trials < 1000 {
                    return Err(invalid("simulate needs at least 1000 trials"));
                }
                if !(*theta > 0.5 && *theta < 1.0) {
                    return Err(invalid("theta must lie in (1/2, 1)"));
                }
            }
            Self::CltCheck { gamma, noise, cost, n_list, trials, .. } => {
                check_channel(*gamma, *noise)?;
                if !(cost.is_finite() && *cost >= 0.0) {
                    return Err(invalid("cost must be nonnegative"));
                }
                check_increasing(n_list, 1)?;
                if *trials < 10_000 {
                    return Err(invalid("clt-check needs at least 10000 trials"));
                }
            }
        }
        Ok(())
    }
}

fn check_channel(gamma: f64, noise: f64) -> CliResult<()> {
    if !(gamma.is_finite() && gamma > 0.0 && noise.is_finite() && noise > 0.0) {
        return Err(invalid("gamma and noise must be positive"));
    }
    Ok(())
}

fn check_nonempty(name: &str, xs: &[f64]) -> CliResult<()> {
    if xs.is_empty() {
        return Err(invalid(format!("{name} is empty")));
    }
    Ok(())
}

fn check_increasing(ns: &[usize], min: usize) -> CliResult<()> {
    if ns.is_empty() || ns[0] < min || ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid(format!("n-list must be strictly increasing with n >= {min}")));
    }
    Ok(())
}
