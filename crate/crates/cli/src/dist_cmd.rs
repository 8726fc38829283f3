use std::fs::File;
use std::io::{self, BufWriter, Write};

use alg_core::dist::{ALGParams, ALParams, ExGParams, KurtosisConvention, RtDistribution};
use anyhow::{Context, Result};

use crate::args::{DistCmd, Family, Query};

pub fn run(cmd: DistCmd) -> Result<()> {
    match cmd.family {
        Family::Exg { params: p, query } => answer(&ExGParams::new(p.mu, p.sigma, p.tau)?, query),
        Family::Al { params: p, query } => answer(&ALParams::new(p.a1, p.a2)?, query),
        Family::Alg { params: p, query } => answer(&ALGParams::new(p.a1, p.a2, p.mu, p.sigma)?, query),
    }
}

fn answer<D: RtDistribution>(d: &D, query: Query) -> Result<()> {
    let out = io::stdout();
    let mut out = out.lock();
    match query {
        Query::Pdf(ts) => {
            for t in ts.t {
                writeln!(out, "{t}\t{}", d.pdf(t)?)?;
            }
        }
        Query::Cdf(ts) => {
            for t in ts.t {
                writeln!(out, "{t}\t{}", d.cdf(t)?)?;
            }
        }
        Query::Sf(ts) => {
            for t in ts.t {
                writeln!(out, "{t}\t{}", d.sf(t)?)?;
            }
        }
        Query::Hazard(ts) => {
            for t in ts.t {
                let h = d.hazard(t)?;
                let note = if h.tail_limit { "\ttail-limit" } else { "" };
                writeln!(out, "{t}\t{}{note}", h.rate)?;
            }
        }
        Query::Quantile { q } => {
            for q in q {
                writeln!(out, "{q}\t{}", d.quantile(q)?)?;
            }
        }
        Query::Stats => {
            let s = d.stats();
            let convention = match s.kurtosis_convention {
                KurtosisConvention::Full => "full",
                KurtosisConvention::Excess => "excess",
            };
            writeln!(out, "mean={}", s.mean)?;
            writeln!(out, "variance={}", s.variance)?;
            writeln!(out, "stdev={}", s.stdev)?;
            writeln!(out, "skewness={}", s.skewness)?;
            writeln!(out, "excess_kurtosis={}", s.excess_kurtosis)?;
            writeln!(out, "kurtosis={} ({convention})", s.family_kurtosis)?;
        }
        Query::Sample { n, seed, output } => {
            let xs = d.sample(n, seed)?;
            let mut sink: Box<dyn Write> = match &output {
                Some(path) => Box::new(BufWriter::new(
                    File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
                )),
                None => Box::new(&mut out),
            };
            writeln!(sink, "value")?;
            for x in xs {
                writeln!(sink, "{x}")?;
            }
            sink.flush()?;
        }
    }
    Ok(())
}
