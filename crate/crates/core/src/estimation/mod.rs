//! Fitting ExG models to cluster GORTs and ALG models to differenced GORTs.

mod alg_ml;
pub mod diagnostics;
mod exg_ml;
mod hessian;
mod mcmc;
mod moments;
pub mod simplex;

pub use alg_ml::{alg_from_moments, alg_mom_init, fit_alg_ml, MomInit};
pub use exg_ml::{exg_from_moments, fit_exg_ml};
pub use mcmc::{fit_exg_bayes, run_exg_chains, Chain, McmcConfig, PosteriorSummary};
pub use moments::SampleMoments;

use crate::error::{Error, Result};

/// Outcome of a maximum-likelihood fit.
#[derive(Debug, Clone)]
pub struct FitResult<P> {
    pub params: P,
    pub log_likelihood: f64,
    /// Per-parameter standard errors from the observed information, in the
    /// order of the parameter type's constructor; `None` when the Hessian
    /// is not positive definite.
    pub std_errors: Option<Vec<f64>>,
    pub converged: bool,
    /// Objective evaluations spent by the optimizer.
    pub iterations: usize,
    /// Names of scale parameters that ended up pinned near zero.
    pub near_boundary: Vec<&'static str>,
}

pub(crate) fn check_sample(xs: &[f64], needed: usize) -> Result<()> {
    if xs.len() < needed {
        return Err(Error::TooFewObservations { needed, got: xs.len() });
    }
    if let Some(bad) = xs.iter().find(|x| !x.is_finite()) {
        return Err(Error::Domain(format!("sample contains non-finite value {bad}")));
    }
    Ok(())
}
