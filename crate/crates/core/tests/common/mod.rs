//! Independent numerical oracles shared by the integration tests.
//!
//! Nothing here calls into the crate's special functions: densities are
//! built from `exp` and quadrature only, and the normal distribution
//! function comes from `statrs`.
#![allow(dead_code, clippy::excessive_precision)]

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kronrod += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

fn adapt<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let (v, err) = gk15(f, a, b);
    if err <= tol || depth == 0 || (b - a).abs() < 1e-12 * (1.0 + a.abs()) {
        return v;
    }
    let m = 0.5 * (a + b);
    adapt(f, a, m, 0.5 * tol, depth - 1) + adapt(f, m, b, 0.5 * tol, depth - 1)
}

/// Adaptive Gauss-Kronrod quadrature of `f` over `[a, b]` to absolute
/// tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    adapt(&f, a, b, tol, 40)
}

/// Integrates over consecutive breakpoints.
pub fn integrate_pieces<F: Fn(f64) -> f64>(f: F, points: &[f64], tol: f64) -> f64 {
    let n = points.len().saturating_sub(1).max(1) as f64;
    points.windows(2).map(|w| integrate(&f, w[0], w[1], tol / n)).sum()
}

pub fn gauss_density(x: f64, sigma: f64) -> f64 {
    (-0.5 * (x / sigma).powi(2)).exp() / (sigma * (2.0 * PI).sqrt())
}

pub fn std_normal_cdf(z: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(-z / std::f64::consts::SQRT_2)
}

/// Asymmetric Laplace density of `a2 E2 - a1 E1` from its definition.
pub fn al_density(y: f64, a1: f64, a2: f64) -> f64 {
    if y >= 0.0 {
        (-y / a2).exp() / (a1 + a2)
    } else {
        (y / a1).exp() / (a1 + a2)
    }
}

/// `[lo, hi]` split at every interior point of `cuts`, so narrow features
/// cannot fall between quadrature nodes.
fn breakpoints(lo: f64, hi: f64, cuts: &[f64]) -> Vec<f64> {
    let mut pts = vec![lo, hi];
    pts.extend(cuts.iter().copied().filter(|c| *c > lo && *c < hi));
    pts.sort_by(f64::total_cmp);
    pts
}

/// ALG density by direct convolution of the AL and Gaussian densities.
/// Outside twelve Gaussian standard deviations the integrand is below
/// `1e-31 / (a1 + a2)` and is dropped.
pub fn alg_density_by_convolution(t: f64, a1: f64, a2: f64, mu: f64, sigma: f64) -> f64 {
    let y0 = t - mu;
    let pts = breakpoints(y0 - 12.0 * sigma, y0 + 12.0 * sigma, &[-40.0 * a1, 0.0, 40.0 * a2]);
    integrate_pieces(|y| al_density(y, a1, a2) * gauss_density(y0 - y, sigma), &pts, 1e-14)
}

/// ExG density by direct convolution of exponential and Gaussian densities.
pub fn exg_density_by_convolution(t: f64, mu: f64, sigma: f64, tau: f64) -> f64 {
    let y0 = t - mu;
    let lo = (y0 - 12.0 * sigma).max(0.0);
    let hi = y0 + 12.0 * sigma;
    if hi <= 0.0 {
        return 0.0;
    }
    let pts = breakpoints(lo, hi, &[40.0 * tau]);
    integrate_pieces(|y| (-y / tau).exp() / tau * gauss_density(y0 - y, sigma), &pts, 1e-14)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..hi)
}

/// Evenly spaced grid of `n` points over `[lo, hi]`.
pub fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// Ordinary least-squares slope of `y` on `x`.
pub fn ols_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

/// Central finite-difference gradient.
pub fn gradient<F: Fn(&[f64]) -> f64>(f: F, x: &[f64], rel_step: f64) -> Vec<f64> {
    (0..x.len())
        .map(|i| {
            let h = rel_step * x[i].abs().max(1.0);
            let mut p = x.to_vec();
            p[i] = x[i] + h;
            let fp = f(&p);
            p[i] = x[i] - h;
            let fm = f(&p);
            (fp - fm) / (2.0 * h)
        })
        .collect()
}

/// Prints one acceptance line and returns whether it passed.
pub fn report(criterion: &str, detail: &str, pass: bool) -> bool {
    println!("criterion {criterion}: {} {detail}", if pass { "PASS" } else { "FAIL" });
    pass
}
