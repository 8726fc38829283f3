use std::io::{self, Write};
use std::path::Path;

use alg_core::estimation::{fit_alg_ml, fit_exg_bayes, fit_exg_ml, FitResult, McmcConfig};
use anyhow::{bail, Context, Result};

use crate::args::{FitCmd, FitTarget};
use crate::data::require_file;

/// Values of one column of a headed CSV, optionally restricted to one
/// participant.
fn read_sample(path: &Path, column: Option<&str>, participant: Option<&str>) -> Result<Vec<f64>> {
    require_file(path)?;
    let mut reader = csv::Reader::from_path(path).with_context(|| format!("reading {}", path.display()))?;
    let headers = reader.headers()?.clone();
    let col = match column {
        Some(name) => headers
            .iter()
            .position(|h| h == name)
            .with_context(|| format!("{}: no column named `{name}`", path.display()))?,
        None if headers.len() == 1 => 0,
        None => bail!("{}: several columns, choose one with --column", path.display()),
    };
    let who = match participant {
        Some(id) => Some((
            headers
                .iter()
                .position(|h| h == "participant_id")
                .with_context(|| format!("{}: --participant needs a participant_id column", path.display()))?,
            id,
        )),
        None => None,
    };
    let mut xs = Vec::new();
    for row in reader.records() {
        let rec = row?;
        let line = rec.position().map_or(0, |p| p.line());
        if let Some((i, id)) = who {
            if rec.get(i) != Some(id) {
                continue;
            }
        }
        let raw = rec.get(col).unwrap_or("");
        let v: f64 = raw
            .trim()
            .parse()
            .with_context(|| format!("{}: line {line}: `{raw}` is not a number", path.display()))?;
        xs.push(v);
    }
    Ok(xs)
}

fn print_ml<P>(out: &mut impl Write, fit: &FitResult<P>, names: &[&str], values: &[f64]) -> io::Result<()> {
    writeln!(out, "converged={}", fit.converged)?;
    writeln!(out, "log_likelihood={}", fit.log_likelihood)?;
    writeln!(out, "evaluations={}", fit.iterations)?;
    for (i, (name, v)) in names.iter().zip(values).enumerate() {
        match &fit.std_errors {
            Some(se) => writeln!(out, "{name}={v}\tse={}", se[i])?,
            None => writeln!(out, "{name}={v}\tse=NA")?,
        }
    }
    if !fit.near_boundary.is_empty() {
        writeln!(out, "near_boundary={}", fit.near_boundary.join(","))?;
    }
    Ok(())
}

fn write_ml_csv<P>(path: &Path, fit: &FitResult<P>, names: &[&str], values: &[f64]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("cannot create {}", path.display()))?;
    w.write_record(["parameter", "estimate", "se"])?;
    for (i, (name, v)) in names.iter().zip(values).enumerate() {
        let se = fit.std_errors.as_ref().map_or(String::new(), |s| s[i].to_string());
        w.write_record([name.to_string(), v.to_string(), se])?;
    }
    w.flush()?;
    Ok(())
}

pub fn run(cmd: FitCmd) -> Result<()> {
    let xs = read_sample(&cmd.input, cmd.column.as_deref(), cmd.participant.as_deref())?;
    let out = io::stdout();
    let mut out = out.lock();
    writeln!(out, "n={}", xs.len())?;
    match cmd.target {
        FitTarget::ExgMl => {
            let fit = fit_exg_ml(&xs)?;
            let p = fit.params;
            let (names, values) = (["mu", "sigma", "tau"], [p.mu(), p.sigma(), p.tau()]);
            print_ml(&mut out, &fit, &names, &values)?;
            if let Some(path) = &cmd.csv {
                write_ml_csv(path, &fit, &names, &values)?;
            }
            warn_unconverged(fit.converged);
        }
        FitTarget::AlgMl => {
            let fit = fit_alg_ml(&xs)?;
            let p = fit.params;
            let names = ["alpha1", "alpha2", "mu", "sigma"];
            let values = [p.alpha1(), p.alpha2(), p.mu(), p.sigma()];
            print_ml(&mut out, &fit, &names, &values)?;
            if let Some(path) = &cmd.csv {
                write_ml_csv(path, &fit, &names, &values)?;
            }
            warn_unconverged(fit.converged);
        }
        FitTarget::ExgBayes => {
            let Some(seed) = cmd.seed else {
                bail!("exg-bayes samples at random; pass --seed");
            };
            let cfg = McmcConfig {
                chains: cmd.chains,
                iterations: cmd.iters,
                burn_in: cmd.burnin,
                prior_low: cmd.prior_low,
                prior_high: cmd.prior_high,
                seed,
                ..McmcConfig::with_seed(seed)
            };
            writeln!(
                out,
                "chains={} iters={} burnin={}",
                cfg.chains, cfg.iterations, cfg.burn_in
            )?;
            writeln!(out, "prior=U[{}, {}] seed={seed}", cfg.prior_low, cfg.prior_high)?;
            let s = fit_exg_bayes(&xs, &cfg)?;
            let p = s.mean_params;
            let names = ["mu", "sigma", "tau"];
            let means = [p.mu(), p.sigma(), p.tau()];
            writeln!(out, "retained_draws={}", s.retained_draws)?;
            for k in 0..3 {
                writeln!(
                    out,
                    "{}={}\tsd={}\trhat={:.4}\tess={:.0}\tacceptance={:.3}",
                    names[k], means[k], s.sd_params[k], s.rhat[k], s.effective_samples[k], s.acceptance[k]
                )?;
            }
            writeln!(out, "converged={}", s.converged())?;
            for w in &s.warnings {
                eprintln!("warning: {w}");
            }
            if let Some(path) = &cmd.csv {
                let mut w =
                    csv::Writer::from_path(path).with_context(|| format!("cannot create {}", path.display()))?;
                w.write_record(["parameter", "posterior_mean", "posterior_sd", "rhat", "ess"])?;
                for k in 0..3 {
                    w.write_record([
                        names[k].to_string(),
                        means[k].to_string(),
                        s.sd_params[k].to_string(),
                        s.rhat[k].to_string(),
                        s.effective_samples[k].to_string(),
                    ])?;
                }
                w.flush()?;
            }
        }
    }
    Ok(())
}

fn warn_unconverged(converged: bool) {
    if !converged {
        eprintln!("warning: the optimizer stopped before meeting its tolerance");
    }
}
