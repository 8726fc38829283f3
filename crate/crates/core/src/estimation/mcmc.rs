//! Random-walk Metropolis for ExG parameters under a uniform box prior.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::diagnostics::{effective_sample_size, split_rhat};
use super::exg_ml::{exg_from_moments, exg_log_likelihood, MIN_EXG_OBS};
use super::{check_sample, SampleMoments};
use crate::dist::ExGParams;
use crate::error::{Error, Result};

pub const RHAT_WARNING: f64 = 1.05;
const ADAPT_WINDOW: usize = 50;
const TARGET_ACCEPTANCE: (f64, f64) = (0.25, 0.45);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McmcConfig {
    pub chains: usize,
    /// Total iterations per chain, burn-in included.
    pub iterations: usize,
    pub burn_in: usize,
    pub prior_low: f64,
    pub prior_high: f64,
    pub seed: u64,
    /// Initial standard deviation of the log-scale proposal.
    pub proposal_scale: f64,
}

impl McmcConfig {
    /// Three chains of 20 000 iterations with 5 000 discarded, U[10, 2000]
    /// priors on every parameter.
    pub fn with_seed(seed: u64) -> Self {
        McmcConfig {
            chains: 3,
            iterations: 20_000,
            burn_in: 5_000,
            prior_low: 10.0,
            prior_high: 2000.0,
            seed,
            proposal_scale: 0.05,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |name, value: f64, reason| Err(Error::InvalidParameter { name, value, reason });
        if self.chains == 0 {
            return bad("chains", 0.0, "at least one chain is required");
        }
        if self.burn_in >= self.iterations {
            return bad("burn_in", self.burn_in as f64, "must be below the iteration count");
        }
        if self.iterations - self.burn_in < 4 {
            return bad("iterations", self.iterations as f64, "fewer than 4 retained draws");
        }
        if !(self.prior_low > 0.0 && self.prior_low.is_finite()) {
            return bad("prior_low", self.prior_low, "must be positive and finite");
        }
        if !(self.prior_high > self.prior_low && self.prior_high.is_finite()) {
            return bad("prior_high", self.prior_high, "must exceed prior_low");
        }
        if !(self.proposal_scale > 0.0 && self.proposal_scale.is_finite()) {
            return bad("proposal_scale", self.proposal_scale, "must be positive");
        }
        Ok(())
    }

    fn inside(&self, v: f64) -> bool {
        v >= self.prior_low && v <= self.prior_high
    }
}

/// Retained (post-burn-in) draws of one chain as `[mu, sigma, tau]`.
#[derive(Debug, Clone)]
pub struct Chain {
    pub draws: Vec<[f64; 3]>,
    /// Post-burn-in acceptance rate per coordinate.
    pub acceptance: [f64; 3],
    /// Proposal scales frozen at the end of burn-in.
    pub proposal_scales: [f64; 3],
}

#[derive(Debug, Clone)]
pub struct PosteriorSummary {
    pub mean_params: ExGParams,
    pub sd_params: [f64; 3],
    pub rhat: [f64; 3],
    pub effective_samples: [f64; 3],
    pub acceptance: [f64; 3],
    pub retained_draws: usize,
    pub warnings: Vec<String>,
}

impl PosteriorSummary {
    pub fn converged(&self) -> bool {
        self.rhat.iter().all(|r| *r <= RHAT_WARNING)
    }
}

fn log_target(theta: &[f64; 3], sample: &[f64], cfg: &McmcConfig) -> f64 {
    if !theta.iter().all(|v| cfg.inside(*v)) {
        return f64::NEG_INFINITY;
    }
    match ExGParams::new(theta[0], theta[1], theta[2]) {
        Ok(p) => {
            let ll = exg_log_likelihood(&p, sample);
            if ll.is_nan() {
                f64::NEG_INFINITY
            } else {
                ll
            }
        }
        Err(_) => f64::NEG_INFINITY,
    }
}

fn run_chain(sample: &[f64], cfg: &McmcConfig, start: [f64; 3], index: usize) -> Chain {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64 + 1);

    // Over-dispersed start around the moment estimate, kept strictly inside
    // the prior box.
    let lo = cfg.prior_low * (1.0 + 1e-6);
    let hi = cfg.prior_high * (1.0 - 1e-6);
    let mut theta = start.map(|v| {
        let z: f64 = rng.sample(StandardNormal);
        (v.clamp(lo, hi) * (0.3 * z).exp()).clamp(lo, hi)
    });
    let mut current = log_target(&theta, sample, cfg);

    let mut scales = [cfg.proposal_scale; 3];
    let mut window_accepts = [0usize; 3];
    let mut kept_accepts = [0usize; 3];
    let retained = cfg.iterations - cfg.burn_in;
    let mut draws = Vec::with_capacity(retained);

    for it in 0..cfg.iterations {
        for k in 0..3 {
            let z: f64 = rng.sample(StandardNormal);
            let step = scales[k] * z;
            let mut proposal = theta;
            proposal[k] = theta[k] * step.exp();
            let candidate = log_target(&proposal, sample, cfg);
            // Multiplicative proposals carry the Jacobian theta'/theta.
            let log_ratio = candidate - current + step;
            let u: f64 = rng.random();
            if candidate.is_finite() && u.ln() < log_ratio {
                theta = proposal;
                current = candidate;
                if it < cfg.burn_in {
                    window_accepts[k] += 1;
                } else {
                    kept_accepts[k] += 1;
                }
            }
        }
        if it < cfg.burn_in && (it + 1) % ADAPT_WINDOW == 0 {
            for k in 0..3 {
                let rate = window_accepts[k] as f64 / ADAPT_WINDOW as f64;
                if rate < TARGET_ACCEPTANCE.0 {
                    scales[k] *= 0.8;
                } else if rate > TARGET_ACCEPTANCE.1 {
                    scales[k] *= 1.25;
                }
                window_accepts[k] = 0;
            }
        }
        if it >= cfg.burn_in {
            draws.push(theta);
        }
    }
    Chain {
        draws,
        acceptance: kept_accepts.map(|a| a as f64 / retained as f64),
        proposal_scales: scales,
    }
}

/// Runs `cfg.chains` independent chains, concurrently, returned in chain
/// order. Chain `i` uses stream `i + 1` of a ChaCha8 generator seeded with
/// `cfg.seed`, so results do not depend on scheduling.
pub fn run_exg_chains(sample: &[f64], cfg: &McmcConfig) -> Result<Vec<Chain>> {
    cfg.validate()?;
    check_sample(sample, MIN_EXG_OBS)?;
    if let Some(bad) = sample.iter().find(|&&x| x <= 0.0) {
        return Err(Error::Domain(format!("reaction times must be positive, got {bad}")));
    }
    let init = exg_from_moments(&SampleMoments::from_slice(sample)?)?;
    let start = [init.mu(), init.sigma(), init.tau()];
    let chains = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..cfg.chains)
            .map(|i| scope.spawn(move || run_chain(sample, cfg, start, i)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("chain thread panicked"))
            .collect::<Vec<_>>()
    });
    Ok(chains)
}

/// Posterior means, spreads and diagnostics from pooled retained draws.
pub fn fit_exg_bayes(sample: &[f64], cfg: &McmcConfig) -> Result<PosteriorSummary> {
    let chains = run_exg_chains(sample, cfg)?;
    let total: usize = chains.iter().map(|c| c.draws.len()).sum();
    let mut mean = [0.0; 3];
    let mut sd = [0.0; 3];
    let mut rhat = [0.0; 3];
    let mut ess = [0.0; 3];
    let mut acceptance = [0.0; 3];
    let mut warnings = Vec::new();
    const NAMES: [&str; 3] = ["mu", "sigma", "tau"];
    for k in 0..3 {
        let columns: Vec<Vec<f64>> = chains.iter().map(|c| c.draws.iter().map(|d| d[k]).collect()).collect();
        let refs: Vec<&[f64]> = columns.iter().map(|c| c.as_slice()).collect();
        let pooled: Vec<f64> = columns.iter().flatten().copied().collect();
        let m = pooled.iter().sum::<f64>() / total as f64;
        let var = pooled.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (total as f64 - 1.0);
        mean[k] = m;
        sd[k] = var.sqrt();
        rhat[k] = split_rhat(&refs);
        ess[k] = effective_sample_size(&refs);
        acceptance[k] = chains.iter().map(|c| c.acceptance[k]).sum::<f64>() / chains.len() as f64;
        if !(rhat[k] <= RHAT_WARNING) {
            warnings.push(format!(
                "R-hat for {} is {:.3}, above {RHAT_WARNING}; chains may not have converged",
                NAMES[k], rhat[k]
            ));
        }
    }
    Ok(PosteriorSummary {
        mean_params: ExGParams::new(mean[0], mean[1], mean[2])?,
        sd_params: sd,
        rhat,
        effective_samples: ess,
        acceptance,
        retained_draws: total,
        warnings,
    })
}
