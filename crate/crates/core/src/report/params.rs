use std::fs::File;
use std::io::Read;
use std::path::Path;

use csv::{ReaderBuilder, StringRecord, Trim};

use crate::dist::{alg_from_exg_pair, ALGParams, ExGParams, RtDistribution, ShapeStats};
use crate::error::{Error, Result};

pub const PARAM_HEADER: [&str; 10] = [
    "id", "mu_S", "mu_A", "mu_B", "sigma_S", "sigma_A", "sigma_B", "tau_S", "tau_A", "tau_B",
];

const BUNDLED_B1: &str = include_str!("../../data/tableB1.csv");

/// Per-participant ExG fits for the whole session and both clusters.
#[derive(Debug, Clone, PartialEq)]
pub struct ParticipantParams {
    pub id: String,
    pub theta_s: ExGParams,
    pub theta_a: ExGParams,
    pub theta_b: ExGParams,
}

fn field(rec: &StringRecord, line: u64, i: usize) -> Result<f64> {
    let raw = &rec[i];
    let v: f64 = raw.parse().map_err(|_| Error::Parse {
        line,
        field: PARAM_HEADER[i].into(),
        message: format!("`{raw}` is not a number"),
    })?;
    if !v.is_finite() {
        return Err(Error::Parse {
            line,
            field: PARAM_HEADER[i].into(),
            message: "must be finite".into(),
        });
    }
    Ok(v)
}

fn triple(rec: &StringRecord, line: u64, col: usize) -> Result<ExGParams> {
    let (mu, sigma, tau) = (
        field(rec, line, 1 + col)?,
        field(rec, line, 4 + col)?,
        field(rec, line, 7 + col)?,
    );
    ExGParams::new(mu, sigma, tau).map_err(|e| Error::Parse {
        line,
        field: PARAM_HEADER[if sigma > 0.0 { 7 + col } else { 4 + col }].into(),
        message: e.to_string(),
    })
}

/// Reads a parameter table with header
/// `id,mu_S,mu_A,mu_B,sigma_S,sigma_A,sigma_B,tau_S,tau_A,tau_B`.
pub fn read_param_table<R: Read>(source: R) -> Result<Vec<ParticipantParams>> {
    let mut reader = ReaderBuilder::new().trim(Trim::All).flexible(true).from_reader(source);
    let names: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    if names != PARAM_HEADER {
        return Err(Error::Parse {
            line: 1,
            field: "header".into(),
            message: format!("expected `{}`, found `{}`", PARAM_HEADER.join(","), names.join(",")),
        });
    }
    let mut out = Vec::new();
    for row in reader.records() {
        let rec = row?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != PARAM_HEADER.len() {
            return Err(Error::Parse {
                line,
                field: "*".into(),
                message: format!("expected {} fields, found {}", PARAM_HEADER.len(), rec.len()),
            });
        }
        if rec[0].is_empty() {
            return Err(Error::Parse {
                line,
                field: "id".into(),
                message: "missing".into(),
            });
        }
        out.push(ParticipantParams {
            id: rec[0].to_string(),
            theta_s: triple(&rec, line, 0)?,
            theta_a: triple(&rec, line, 1)?,
            theta_b: triple(&rec, line, 2)?,
        });
    }
    if out.is_empty() {
        return Err(Error::Empty("parameter table has no rows"));
    }
    Ok(out)
}

/// [`read_param_table`] from a file path.
pub fn load_param_table(path: &Path) -> Result<Vec<ParticipantParams>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_param_table(file)
}

/// The 44-participant posterior-mean table shipped with the crate.
pub fn bundled_table_b1() -> Vec<ParticipantParams> {
    read_param_table(BUNDLED_B1.as_bytes()).expect("bundled table is well formed")
}

/// Raw CSV text of the bundled table.
pub fn bundled_table_b1_csv() -> &'static str {
    BUNDLED_B1
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParticipantStats {
    pub id: String,
    pub exg_a: ShapeStats,
    pub exg_b: ShapeStats,
    pub alg: ALGParams,
    pub alg_stats: ShapeStats,
    /// Difference of cluster means `(mu_B + tau_B) - (mu_A + tau_A)`.
    pub delta_mean: f64,
}

pub fn participant_stats(pp: &ParticipantParams) -> ParticipantStats {
    let exg_a = pp.theta_a.stats();
    let exg_b = pp.theta_b.stats();
    let alg = alg_from_exg_pair(&pp.theta_a, &pp.theta_b);
    ParticipantStats {
        id: pp.id.clone(),
        delta_mean: exg_b.mean - exg_a.mean,
        exg_a,
        exg_b,
        alg_stats: alg.stats(),
        alg,
    }
}
