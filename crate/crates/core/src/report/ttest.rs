use std::fmt;

use statrs::distribution::{Continuous, ContinuousCDF, StudentsT};

use crate::error::{Error, Result};

fn student(df: f64) -> Result<StudentsT> {
    StudentsT::new(0.0, 1.0, df).map_err(|_| Error::InvalidParameter {
        name: "df",
        value: df,
        reason: "degrees of freedom must be positive",
    })
}

/// Student t distribution function.
pub fn student_t_cdf(t: f64, df: f64) -> Result<f64> {
    Ok(student(df)?.cdf(t))
}

/// Student t quantile, polished by Newton steps on the distribution
/// function after the incomplete-beta inversion.
pub fn student_t_quantile(p: f64, df: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidParameter {
            name: "p",
            value: p,
            reason: "must lie strictly between 0 and 1",
        });
    }
    let dist = student(df)?;
    let mut t = dist.inverse_cdf(p);
    for _ in 0..4 {
        let resid = if p <= 0.5 {
            dist.cdf(t) - p
        } else {
            (1.0 - p) - dist.sf(t)
        };
        let dens = dist.pdf(t);
        if !(dens > 0.0) || resid == 0.0 {
            break;
        }
        t -= resid / dens;
    }
    Ok(t)
}

/// Significance band using the 0.05 / 0.005 / 0.0005 cut-offs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stars {
    None,
    One,
    Two,
    Three,
}

impl Stars {
    pub fn from_p(p: f64) -> Self {
        if p < 0.0005 {
            Stars::Three
        } else if p < 0.005 {
            Stars::Two
        } else if p < 0.05 {
            Stars::One
        } else {
            Stars::None
        }
    }
}

impl fmt::Display for Stars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stars::None => "",
            Stars::One => "*",
            Stars::Two => "**",
            Stars::Three => "***",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairedTestResult {
    pub n: usize,
    pub mean_diff: f64,
    pub sd_diff: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub t_stat: f64,
    pub df: usize,
    pub p_value: f64,
    pub stars: Stars,
}

/// Two-sided paired t test on `d = y - x` with a 95% interval for the mean
/// difference.
pub fn paired_t_test(x: &[f64], y: &[f64]) -> Result<PairedTestResult> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let n = x.len();
    if n < 2 {
        return Err(Error::TooFewObservations { needed: 2, got: n });
    }
    let d: Vec<f64> = x.iter().zip(y).map(|(a, b)| b - a).collect();
    if d.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("paired samples contain non-finite values".into()));
    }
    let mean = d.iter().sum::<f64>() / n as f64;
    let sd = (d.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt();
    if !(sd > 0.0) {
        return Err(Error::Degenerate("paired differences have zero variance".into()));
    }
    let df = n - 1;
    let dist = student(df as f64)?;
    let se = sd / (n as f64).sqrt();
    let t_stat = mean / se;
    let p_value = (2.0 * dist.sf(t_stat.abs())).min(1.0);
    let half = student_t_quantile(0.975, df as f64)? * se;
    Ok(PairedTestResult {
        n,
        mean_diff: mean,
        sd_diff: sd,
        ci_low: mean - half,
        ci_high: mean + half,
        t_stat,
        df,
        p_value,
        stars: Stars::from_p(p_value),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantile_inverts_cdf() {
        for df in [1.0, 5.0, 43.0, 100.0] {
            for p in [0.025, 0.975] {
                let t = student_t_quantile(p, df).unwrap();
                assert!((student_t_cdf(t, df).unwrap() - p).abs() < 1e-12, "df {df} p {p}");
            }
        }
        // One degree of freedom is Cauchy: the quantile is tan(pi (p - 1/2)).
        let cauchy = (0.475 * std::f64::consts::PI).tan();
        assert!((student_t_quantile(0.975, 1.0).unwrap() - cauchy).abs() < 1e-9);
        assert!((student_t_quantile(0.975, 5.0).unwrap() - 2.570581835636314).abs() < 1e-9);
    }

    #[test]
    fn small_worked_example() {
        // d = [1, 2, 3, 4]: mean 2.5, sd sqrt(5/3), t = 2.5 / (sd / 2)
        let x = [0.0; 4];
        let y = [1.0, 2.0, 3.0, 4.0];
        let r = paired_t_test(&x, &y).unwrap();
        let sd = (5.0f64 / 3.0).sqrt();
        assert!((r.t_stat - 5.0 / sd).abs() < 1e-12);
        assert_eq!(r.df, 3);
        let half = 3.182446305284263 * sd / 2.0;
        assert!((r.ci_low - (2.5 - half)).abs() < 1e-9);
        assert!((r.ci_high - (2.5 + half)).abs() < 1e-9);
        assert!(r.p_value > 0.005 && r.p_value < 0.05);
        assert_eq!(r.stars, Stars::One);
    }

    #[test]
    fn antisymmetric_in_arguments() {
        let x = [3.0, 1.5, 7.0, 2.0];
        let y = [4.0, 2.5, 5.0, 8.0];
        let a = paired_t_test(&x, &y).unwrap();
        let b = paired_t_test(&y, &x).unwrap();
        assert_eq!(a.mean_diff, -b.mean_diff);
        assert_eq!(a.p_value, b.p_value);
    }

    #[test]
    fn degenerate_inputs() {
        let x = [1.0, 2.0, 3.0];
        assert!(matches!(paired_t_test(&x, &x), Err(Error::Degenerate(_))));
        assert!(matches!(paired_t_test(&x, &x[..2]), Err(Error::LengthMismatch { .. })));
        assert!(matches!(
            paired_t_test(&[1.0], &[2.0]),
            Err(Error::TooFewObservations { .. })
        ));
    }

    #[test]
    fn star_bands() {
        assert_eq!(Stars::from_p(0.0507), Stars::None);
        assert_eq!(Stars::from_p(0.01), Stars::One);
        assert_eq!(Stars::from_p(0.001), Stars::Two);
        assert_eq!(Stars::from_p(1e-5), Stars::Three);
        assert_eq!(Stars::Three.to_string(), "***");
    }
}
