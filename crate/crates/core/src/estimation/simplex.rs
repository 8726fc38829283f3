//! Nelder-Mead downhill simplex with restarts.

#[derive(Debug, Clone, Copy)]
pub struct SimplexOptions {
    /// Stop a run once `2|f_hi - f_lo| <= f_tol_rel * (|f_hi| + |f_lo|)`.
    pub f_tol_rel: f64,
    /// Evaluation cap for a single run.
    pub max_evals: usize,
    /// Fresh simplices built around the incumbent after a run converges.
    pub max_restarts: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        SimplexOptions {
            f_tol_rel: 1e-8,
            max_evals: 2000,
            max_restarts: 4,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SimplexOutcome {
    pub x: Vec<f64>,
    pub f: f64,
    pub evaluations: usize,
    /// The last run met the tolerance and a restart could not improve on it.
    pub converged: bool,
}

struct Run {
    x: Vec<f64>,
    f: f64,
    evals: usize,
    hit_tolerance: bool,
}

fn within_tol(lo: f64, hi: f64, tol: f64) -> bool {
    2.0 * (hi - lo).abs() <= tol * (hi.abs() + lo.abs()) + 1e-300
}

fn run_once<F: FnMut(&[f64]) -> f64>(
    f: &mut F,
    start: &[f64],
    f_start: f64,
    steps: &[f64],
    opts: &SimplexOptions,
) -> Run {
    let n = start.len();
    let mut pts: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    let mut vals: Vec<f64> = Vec::with_capacity(n + 1);
    pts.push(start.to_vec());
    vals.push(f_start);
    let mut evals = 0;
    for i in 0..n {
        let mut p = start.to_vec();
        p[i] += steps[i];
        vals.push(f(&p));
        evals += 1;
        pts.push(p);
    }

    let mut order: Vec<usize> = (0..=n).collect();
    let mut centroid = vec![0.0; n];
    let mut trial = vec![0.0; n];
    let mut trial2 = vec![0.0; n];
    loop {
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        let (best, worst, second) = (order[0], order[n], order[n - 1]);
        if vals[worst].is_finite() && within_tol(vals[best], vals[worst], opts.f_tol_rel) {
            return Run {
                x: pts[best].clone(),
                f: vals[best],
                evals,
                hit_tolerance: true,
            };
        }
        if evals >= opts.max_evals {
            return Run {
                x: pts[best].clone(),
                f: vals[best],
                evals,
                hit_tolerance: false,
            };
        }

        centroid.iter_mut().for_each(|c| *c = 0.0);
        for &i in &order[..n] {
            for (c, p) in centroid.iter_mut().zip(&pts[i]) {
                *c += p / n as f64;
            }
        }
        let along = |coef: f64, out: &mut Vec<f64>, pts: &[Vec<f64>]| {
            for ((o, c), w) in out.iter_mut().zip(&centroid).zip(&pts[worst]) {
                *o = c + coef * (c - w);
            }
        };

        along(1.0, &mut trial, &pts);
        let f_r = f(&trial);
        evals += 1;
        if f_r < vals[best] {
            along(2.0, &mut trial2, &pts);
            let f_e = f(&trial2);
            evals += 1;
            if f_e < f_r {
                pts[worst].copy_from_slice(&trial2);
                vals[worst] = f_e;
            } else {
                pts[worst].copy_from_slice(&trial);
                vals[worst] = f_r;
            }
            continue;
        }
        if f_r < vals[second] {
            pts[worst].copy_from_slice(&trial);
            vals[worst] = f_r;
            continue;
        }
        // Contraction: outside if the reflection helped at all, else inside.
        let (coef, bar) = if f_r < vals[worst] {
            (0.5, f_r)
        } else {
            (-0.5, vals[worst])
        };
        along(coef, &mut trial2, &pts);
        let f_c = f(&trial2);
        evals += 1;
        if f_c < bar {
            pts[worst].copy_from_slice(&trial2);
            vals[worst] = f_c;
            continue;
        }
        // Shrink toward the best vertex.
        let anchor = pts[best].clone();
        for &i in &order[1..] {
            for (p, a) in pts[i].iter_mut().zip(&anchor) {
                *p = a + 0.5 * (*p - a);
            }
            vals[i] = f(&pts[i]);
            evals += 1;
        }
    }
}

/// Minimizes `f` from `x0` with initial simplex edges `steps`.
pub fn minimize<F: FnMut(&[f64]) -> f64>(mut f: F, x0: &[f64], steps: &[f64], opts: &SimplexOptions) -> SimplexOutcome {
    assert_eq!(x0.len(), steps.len(), "one step per coordinate");
    let f0 = f(x0);
    let mut run = run_once(&mut f, x0, f0, steps, opts);
    let mut evaluations = 1 + run.evals;
    let mut converged = false;
    for _ in 0..opts.max_restarts {
        if !run.hit_tolerance {
            break;
        }
        let next = run_once(&mut f, &run.x, run.f, steps, opts);
        evaluations += next.evals;
        let improved = next.f < run.f && !within_tol(next.f, run.f, opts.f_tol_rel);
        if next.f <= run.f {
            run = next;
        } else {
            run.hit_tolerance = next.hit_tolerance;
        }
        if !improved && run.hit_tolerance {
            converged = true;
            break;
        }
    }
    SimplexOutcome {
        x: run.x,
        f: run.f,
        evaluations,
        converged,
    }
}
