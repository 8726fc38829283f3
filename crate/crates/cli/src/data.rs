use std::fs::{self, File};
use std::io::{self, Write};
use std::path::Path;

use alg_core::curves::CurveTable;
use alg_core::dist::{alg_from_exg_pair, ALGParams, ExGParams, RtDistribution};
use alg_core::report::{bundled_table_b1, load_param_table, render_text, table2_report, write_csv};
use alg_core::sst::{difference_gorts, parse_trials, partition_clusters, Pairing};
use anyhow::{anyhow, bail, Context, Result};

use crate::args::{Component, CurveModel, CurvesCmd, PartitionCmd, ReportCmd};

pub fn require_file(path: &Path) -> Result<()> {
    if !path.is_file() {
        bail!("file not found: {}", path.display());
    }
    Ok(())
}

fn create(path: &Path) -> Result<File> {
    File::create(path).with_context(|| format!("cannot create {}", path.display()))
}

pub fn partition(cmd: PartitionCmd) -> Result<()> {
    require_file(&cmd.input)?;
    let groups = parse_trials(&cmd.input).with_context(|| format!("reading {}", cmd.input.display()))?;
    fs::create_dir_all(&cmd.output).with_context(|| format!("cannot create {}", cmd.output.display()))?;

    let mut summary = csv::Writer::from_writer(create(&cmd.output.join("summary.csv"))?);
    summary.write_record([
        "participant_id",
        "trials",
        "go",
        "stop",
        "omissions",
        "failed_stops",
        "type_a",
        "type_b",
        "gort_a",
        "gort_b",
        "gort_s",
    ])?;
    let mut gorts = [
        csv::Writer::from_writer(create(&cmd.output.join("gort_a.csv"))?),
        csv::Writer::from_writer(create(&cmd.output.join("gort_b.csv"))?),
        csv::Writer::from_writer(create(&cmd.output.join("gort_s.csv"))?),
    ];
    for w in &mut gorts {
        w.write_record(["participant_id", "rt_ms"])?;
    }
    let mut delta = match cmd.pairing_seed {
        Some(_) => {
            let mut w = csv::Writer::from_writer(create(&cmd.output.join("delta_gort.csv"))?);
            w.write_record(["participant_id", "delta_ms"])?;
            Some(w)
        }
        None => None,
    };

    let out = io::stdout();
    let mut out = out.lock();
    writeln!(out, "participant\ttrials\ttype_a\ttype_b\tgort_a\tgort_b\tgort_s")?;
    for g in &groups {
        let cs = partition_clusters(&g.trials).with_context(|| format!("participant {}", g.participant_id))?;
        let c = cs.counts;
        let mut record = vec![cs.participant_id.clone()];
        record.extend(
            [
                c.trials,
                c.go,
                c.stop,
                c.omissions,
                c.failed_stops,
                c.type_a,
                c.type_b,
                cs.gort_a.len(),
                cs.gort_b.len(),
                cs.gort_s.len(),
            ]
            .map(|v| v.to_string()),
        );
        summary.write_record(&record)?;
        for (w, xs) in gorts.iter_mut().zip([&cs.gort_a, &cs.gort_b, &cs.gort_s]) {
            for x in xs {
                w.write_record([cs.participant_id.as_str(), &x.to_string()])?;
            }
        }
        if let (Some(w), Some(seed)) = (delta.as_mut(), cmd.pairing_seed) {
            match difference_gorts(&cs, Pairing::Seeded(seed)) {
                Ok(ds) => {
                    for d in ds {
                        w.write_record([cs.participant_id.as_str(), &d.to_string()])?;
                    }
                }
                Err(e) => eprintln!(
                    "warning: participant {}: no differences written ({e})",
                    cs.participant_id
                ),
            }
        }
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            cs.participant_id,
            c.trials,
            c.type_a,
            c.type_b,
            cs.gort_a.len(),
            cs.gort_b.len(),
            cs.gort_s.len()
        )?;
    }
    summary.flush()?;
    for w in &mut gorts {
        w.flush()?;
    }
    if let Some(w) = delta.as_mut() {
        w.flush()?;
    }
    writeln!(out, "wrote {}", cmd.output.display())?;
    Ok(())
}

pub fn report(cmd: ReportCmd) -> Result<()> {
    let params = match &cmd.input {
        Some(path) => {
            require_file(path)?;
            load_param_table(path).with_context(|| format!("reading {}", path.display()))?
        }
        None => bundled_table_b1(),
    };
    let report = table2_report(&params)?;
    print!("{}", render_text(&report));
    if let Some(path) = &cmd.csv {
        write_csv(&report, create(path)?)?;
    }
    Ok(())
}

fn tabulate<D: RtDistribution>(d: &D, cmd: &CurvesCmd) -> Result<CurveTable> {
    let s = d.stats();
    let tmin = cmd.grid.tmin.unwrap_or(s.mean - 6.0 * s.stdev);
    let tmax = cmd.grid.tmax.unwrap_or(s.mean + 6.0 * s.stdev);
    Ok(CurveTable::tabulate(d, tmin, tmax, cmd.grid.points)?)
}

pub fn curves(cmd: CurvesCmd) -> Result<()> {
    let table = match &cmd.model {
        CurveModel::Alg(p) => tabulate(&ALGParams::new(p.a1, p.a2, p.mu, p.sigma)?, &cmd)?,
        CurveModel::Exg(p) => tabulate(&ExGParams::new(p.mu, p.sigma, p.tau)?, &cmd)?,
        CurveModel::Row { row, table, component } => {
            let params = match table {
                Some(path) => {
                    require_file(path)?;
                    load_param_table(path)?
                }
                None => bundled_table_b1(),
            };
            let pp = row
                .checked_sub(1)
                .and_then(|i| params.get(i))
                .ok_or_else(|| anyhow!("row {row} is outside 1..={}", params.len()))?;
            match component {
                Component::Alg => tabulate(&alg_from_exg_pair(&pp.theta_a, &pp.theta_b), &cmd)?,
                Component::A => tabulate(&pp.theta_a, &cmd)?,
                Component::B => tabulate(&pp.theta_b, &cmd)?,
            }
        }
    };
    match &cmd.grid.output {
        Some(path) => table.write_csv(create(path)?)?,
        None => table.write_csv(io::stdout().lock())?,
    }
    Ok(())
}
