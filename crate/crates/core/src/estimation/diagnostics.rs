//! Convergence diagnostics for multiple MCMC chains of one scalar.
//!
//! Both statistics split every chain in half first, so a chain that drifts
//! between its first and second half is caught even when only one chain runs.

fn split(chains: &[&[f64]]) -> Vec<Vec<f64>> {
    let n = chains.iter().map(|c| c.len()).min().unwrap_or(0) / 2;
    let mut out = Vec::with_capacity(2 * chains.len());
    for c in chains {
        out.push(c[..n].to_vec());
        out.push(c[n..2 * n].to_vec());
    }
    out
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Between-chain and pooled within-chain variance, plus the length of the
/// shortest split chain.
fn variance_parts(halves: &[Vec<f64>]) -> (f64, f64, usize) {
    let n = halves[0].len();
    let m = halves.len() as f64;
    let means: Vec<f64> = halves.iter().map(|h| mean(h)).collect();
    let grand = means.iter().sum::<f64>() / m;
    let between = n as f64 * means.iter().map(|x| (x - grand).powi(2)).sum::<f64>() / (m - 1.0);
    let within = halves
        .iter()
        .zip(&means)
        .map(|(h, mu)| h.iter().map(|x| (x - mu).powi(2)).sum::<f64>() / (n as f64 - 1.0))
        .sum::<f64>()
        / m;
    (between, within, n)
}

fn pooled_variance(between: f64, within: f64, n: usize) -> f64 {
    (n as f64 - 1.0) / n as f64 * within + between / n as f64
}

/// Split potential scale reduction factor. Returns NaN when the chains are
/// too short (fewer than four draws each) to split.
pub fn split_rhat(chains: &[&[f64]]) -> f64 {
    let halves = split(chains);
    if halves.is_empty() || halves[0].len() < 2 {
        return f64::NAN;
    }
    let (b, w, n) = variance_parts(&halves);
    if w == 0.0 {
        return if b == 0.0 { 1.0 } else { f64::INFINITY };
    }
    (pooled_variance(b, w, n) / w).sqrt()
}

/// Effective sample size from variogram autocorrelations, summed over
/// consecutive lag pairs until a pair turns negative.
pub fn effective_sample_size(chains: &[&[f64]]) -> f64 {
    let halves = split(chains);
    if halves.is_empty() || halves[0].len() < 2 {
        return f64::NAN;
    }
    let (b, w, n) = variance_parts(&halves);
    let total = (halves.len() * n) as f64;
    let var_plus = pooled_variance(b, w, n);
    if !(var_plus > 0.0) {
        return total;
    }
    let rho = |lag: usize| {
        let mut v = 0.0;
        for h in &halves {
            v += h[lag..].iter().zip(h).map(|(a, b)| (a - b).powi(2)).sum::<f64>();
        }
        v /= (halves.len() * (n - lag)) as f64;
        1.0 - v / (2.0 * var_plus)
    };
    let mut sum = 0.0;
    let mut lag = 1;
    while lag + 1 < n {
        let pair = rho(lag) + rho(lag + 1);
        if pair < 0.0 {
            break;
        }
        sum += pair;
        lag += 2;
    }
    (total / (1.0 + 2.0 * sum)).min(total * total.log10().max(1.0))
}
