use std::f64::consts::FRAC_PI_2;

use super::hessian::standard_errors;
use super::simplex::{minimize, SimplexOptions};
use super::{check_sample, FitResult, SampleMoments};
use crate::dist::{ALGParams, MIN_SCALE};
use crate::error::{Error, Result};

pub(crate) const MIN_ALG_OBS: usize = 20;

/// Tail scales below this fraction of the sample sd are reported as sitting
/// on the ExG boundary.
const BOUNDARY_FRACTION: f64 = 0.05;

/// Method-of-moments start for an ALG fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomInit {
    pub params: ALGParams,
    /// The moment equations had no admissible solution and the symmetric
    /// heuristic `a1 = a2 = sd/2`, `sigma^2 = var/2` was used instead.
    pub fallback: bool,
}

/// Solves the ALG moment equations
///
/// ```text
/// mean = a2 - a1 + mu
/// var  = a1^2 + a2^2 + sigma^2
/// skew * var^1.5   = 2 (a2^3 - a1^3)
/// exkurt * var^2   = 6 (a1^4 + a2^4)
/// ```
///
/// The last equation puts `(a1, a2)` on the curve `a1^4 + a2^4 = R^4`,
/// parametrised by `a1 = R sqrt(cos t)`, `a2 = R sqrt(sin t)` on
/// `[0, pi/2]`. Along it `a2^3 - a1^3` increases strictly from `-R^3` to
/// `R^3`, so the skewness equation has at most one root, found by bisection.
pub fn alg_from_moments(m: &SampleMoments) -> Result<MomInit> {
    let var = m.variance;
    let sd = var.sqrt();
    if !(sd > 0.0) || !sd.is_finite() {
        return Err(Error::Degenerate(format!("sample variance is {var}")));
    }
    let fallback = || -> Result<MomInit> {
        let half = 0.5 * sd;
        Ok(MomInit {
            params: ALGParams::new(half, half, m.mean, (0.5 * var).sqrt().max(1e-6 * sd))?,
            fallback: true,
        })
    };

    if !(m.excess_kurtosis > 0.0) {
        return fallback();
    }
    let radius = (m.excess_kurtosis * var * var / 6.0).powf(0.25);
    let target = 0.5 * m.skewness * var.powf(1.5);
    let r3 = radius.powi(3);
    if !(target.abs() < r3) {
        return fallback();
    }
    let gap = |angle: f64| {
        let (s, c) = angle.sin_cos();
        r3 * (s.max(0.0).powf(1.5) - c.max(0.0).powf(1.5)) - target
    };
    let (mut lo, mut hi) = (0.0, FRAC_PI_2);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if gap(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON {
            break;
        }
    }
    let angle = 0.5 * (lo + hi);
    let (s, c) = angle.sin_cos();
    let a1 = radius * c.sqrt();
    let a2 = radius * s.sqrt();
    let sigma2 = var - a1 * a1 - a2 * a2;
    if !(sigma2 > 0.0) || a1 < MIN_SCALE || a2 < MIN_SCALE || sigma2.sqrt() < MIN_SCALE {
        return fallback();
    }
    Ok(MomInit {
        params: ALGParams::new(a1, a2, m.mean - (a2 - a1), sigma2.sqrt())?,
        fallback: false,
    })
}

/// Method-of-moments ALG parameters from a differenced-GORT sample.
pub fn alg_mom_init(sample: &[f64]) -> Result<MomInit> {
    check_sample(sample, MIN_ALG_OBS)?;
    alg_from_moments(&SampleMoments::from_slice(sample)?)
}

fn unpack(theta: &[f64]) -> Option<ALGParams> {
    ALGParams::new(theta[0].exp(), theta[1].exp(), theta[2], theta[3].exp()).ok()
}

pub(crate) fn alg_log_likelihood(p: &ALGParams, xs: &[f64]) -> f64 {
    xs.iter().map(|&x| p.ln_pdf(x)).sum()
}

/// Maximum-likelihood ALG fit over `(ln a1, ln a2, mu, ln sigma)`, started
/// from [`alg_mom_init`].
pub fn fit_alg_ml(sample: &[f64]) -> Result<FitResult<ALGParams>> {
    check_sample(sample, MIN_ALG_OBS)?;
    let moments = SampleMoments::from_slice(sample)?;
    let start = alg_from_moments(&moments)?.params;
    let sd = moments.stdev();

    let nll = |theta: &[f64]| match unpack(theta) {
        Some(p) => {
            let v = -alg_log_likelihood(&p, sample);
            if v.is_nan() {
                f64::INFINITY
            } else {
                v
            }
        }
        None => f64::INFINITY,
    };
    let x0 = [start.alpha1().ln(), start.alpha2().ln(), start.mu(), start.sigma().ln()];
    let steps = [0.3, 0.3, 0.1 * sd, 0.3];
    let out = minimize(nll, &x0, &steps, &SimplexOptions::default());

    let params = unpack(&out.x).ok_or_else(|| Error::Convergence {
        iterations: out.evaluations,
        context: "optimizer left the parameter space".into(),
    })?;
    let natural_nll = |v: &[f64]| match ALGParams::new(v[0], v[1], v[2], v[3]) {
        Ok(p) => -alg_log_likelihood(&p, sample),
        Err(_) => f64::INFINITY,
    };
    let std_errors = standard_errors(
        natural_nll,
        &[params.alpha1(), params.alpha2(), params.mu(), params.sigma()],
    );

    let mut near_boundary = Vec::new();
    if params.alpha1() < BOUNDARY_FRACTION * sd {
        near_boundary.push("alpha1");
    }
    if params.alpha2() < BOUNDARY_FRACTION * sd {
        near_boundary.push("alpha2");
    }
    if params.sigma() < BOUNDARY_FRACTION * sd {
        near_boundary.push("sigma");
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
