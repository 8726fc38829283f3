use super::hessian::standard_errors;
use super::simplex::{minimize, SimplexOptions};
use super::{check_sample, FitResult, SampleMoments};
use crate::dist::{ExGParams, MIN_SCALE};
use crate::error::{Error, Result};

pub(crate) const MIN_EXG_OBS: usize = 10;

/// Moment-matching ExG start: `tau` from the skewness `2 tau^3 / sd^3`,
/// then `sigma` from the leftover variance and `mu` from the mean.
pub fn exg_from_moments(m: &SampleMoments) -> Result<ExGParams> {
    let sd = m.stdev();
    if !(sd > MIN_SCALE * (1.0 + m.mean.abs())) {
        return Err(Error::Degenerate(format!(
            "sample has no spread (sd = {sd}); sigma and tau collapse to zero"
        )));
    }
    let skew = m.skewness.clamp(0.1, 1.8);
    let tau = sd * (skew / 2.0).cbrt();
    let sigma = (m.variance - tau * tau).max(0.01 * m.variance).sqrt();
    ExGParams::new(m.mean - tau, sigma, tau)
}

fn unpack(theta: &[f64]) -> Option<ExGParams> {
    ExGParams::new(theta[0], theta[1].exp(), theta[2].exp()).ok()
}

pub(crate) fn exg_log_likelihood(p: &ExGParams, xs: &[f64]) -> f64 {
    xs.iter().map(|&x| p.ln_pdf(x)).sum()
}

/// Maximum-likelihood ExG fit over `(mu, ln sigma, ln tau)`.
///
/// GORT samples must hold at least 10 finite, positive values.
pub fn fit_exg_ml(sample: &[f64]) -> Result<FitResult<ExGParams>> {
    check_sample(sample, MIN_EXG_OBS)?;
    if let Some(bad) = sample.iter().find(|&&x| x <= 0.0) {
        return Err(Error::Domain(format!("reaction times must be positive, got {bad}")));
    }
    let moments = SampleMoments::from_slice(sample)?;
    let start = exg_from_moments(&moments)?;

    let nll = |theta: &[f64]| match unpack(theta) {
        Some(p) => {
            let v = -exg_log_likelihood(&p, sample);
            if v.is_nan() {
                f64::INFINITY
            } else {
                v
            }
        }
        None => f64::INFINITY,
    };
    let x0 = [start.mu(), start.sigma().ln(), start.tau().ln()];
    let steps = [0.1 * moments.stdev(), 0.2, 0.2];
    let out = minimize(nll, &x0, &steps, &SimplexOptions::default());

    let params = unpack(&out.x).ok_or_else(|| Error::Convergence {
        iterations: out.evaluations,
        context: "optimizer left the parameter space".into(),
    })?;
    let natural_nll = |v: &[f64]| match ExGParams::new(v[0], v[1], v[2]) {
        Ok(p) => -exg_log_likelihood(&p, sample),
        Err(_) => f64::INFINITY,
    };
    let std_errors = standard_errors(natural_nll, &[params.mu(), params.sigma(), params.tau()]);

    let sd = moments.stdev();
    let mut near_boundary = Vec::new();
    if params.sigma() < 1e-3 * sd {
        near_boundary.push("sigma");
    }
    if params.tau() < 1e-3 * sd {
        near_boundary.push("tau");
    }
    Ok(FitResult {
        params,
        log_likelihood: -out.f,
        std_errors,
        converged: out.converged && out.f.is_finite(),
        iterations: out.evaluations,
        near_boundary,
    })
}
