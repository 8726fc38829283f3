use crate::error::{Error, Result};

/// Plug-in sample moments: `variance` is the biased second central moment,
/// `skewness = m3 / m2^1.5`, `excess_kurtosis = m4 / m2^2 - 3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleMoments {
    pub n: usize,
    pub mean: f64,
    pub variance: f64,
    pub skewness: f64,
    pub excess_kurtosis: f64,
}

impl SampleMoments {
    pub fn from_slice(xs: &[f64]) -> Result<Self> {
        if xs.is_empty() {
            return Err(Error::Empty("sample"));
        }
        if let Some(bad) = xs.iter().find(|x| !x.is_finite()) {
            return Err(Error::Domain(format!("sample contains non-finite value {bad}")));
        }
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
        for &x in xs {
            let d = x - mean;
            let d2 = d * d;
            m2 += d2;
            m3 += d2 * d;
            m4 += d2 * d2;
        }
        m2 /= n;
        m3 /= n;
        m4 /= n;
        Ok(SampleMoments {
            n: xs.len(),
            mean,
            variance: m2,
            skewness: m3 / m2.powf(1.5),
            excess_kurtosis: m4 / (m2 * m2) - 3.0,
        })
    }

    pub fn stdev(&self) -> f64 {
        self.variance.sqrt()
    }
}
