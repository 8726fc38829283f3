use std::fmt::Write as _;
use std::io::Write;

use super::params::{participant_stats, ParticipantParams, ParticipantStats};
use super::ttest::{paired_t_test, student_t_quantile, PairedTestResult};
use crate::error::{Error, Result};

/// Mean of one variable across participants with a 95% t interval.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupSummary {
    pub name: String,
    pub n: usize,
    pub mean: f64,
    pub sd: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl GroupSummary {
    /// With a single value the interval collapses onto the mean.
    pub fn new(name: impl Into<String>, xs: &[f64]) -> Result<Self> {
        if xs.is_empty() {
            return Err(Error::Empty("group summary needs at least one value"));
        }
        let n = xs.len();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let (sd, half) = if n > 1 {
            let sd = (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt();
            (sd, student_t_quantile(0.975, (n - 1) as f64)? * sd / (n as f64).sqrt())
        } else {
            (0.0, 0.0)
        };
        Ok(GroupSummary {
            name: name.into(),
            n,
            mean,
            sd,
            ci_low: mean - half,
            ci_high: mean + half,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    Parameter,
    Statistic,
}

/// One line of the table: cluster A, cluster B, B-vs-A paired comparison,
/// and the ALG column. Cells that do not apply are `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct Table2Row {
    pub label: &'static str,
    pub kind: RowKind,
    /// Decimal places used in the text rendering.
    pub decimals: usize,
    pub type_a: Option<GroupSummary>,
    pub type_b: Option<GroupSummary>,
    pub comparison: Option<PairedTestResult>,
    pub alg: Option<GroupSummary>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table2Report {
    pub n: usize,
    pub rows: Vec<Table2Row>,
    pub participants: Vec<ParticipantStats>,
    pub warnings: Vec<String>,
}

impl Table2Report {
    pub fn row(&self, label: &str) -> Option<&Table2Row> {
        self.rows.iter().find(|r| r.label == label)
    }
}

/// Group summary of ExG cluster fits and the ALG model built from each
/// participant's pair of fits.
///
/// ExG kurtosis is reported as full kurtosis, ALG kurtosis as excess
/// kurtosis, each in its family's customary form.
pub fn table2_report(params: &[ParticipantParams]) -> Result<Table2Report> {
    if params.is_empty() {
        return Err(Error::Empty("no participants"));
    }
    let stats: Vec<ParticipantStats> = params.iter().map(participant_stats).collect();
    let n = stats.len();
    let mut warnings = Vec::new();
    if n == 1 {
        warnings.push("n = 1: confidence intervals are degenerate and no comparison is possible".to_string());
    }

    let col = |f: &dyn Fn(&ParticipantParams, &ParticipantStats) -> f64| -> Vec<f64> {
        params.iter().zip(&stats).map(|(p, s)| f(p, s)).collect()
    };
    type Getter<'a> = Option<&'a dyn Fn(&ParticipantParams, &ParticipantStats) -> f64>;
    let mut rows = Vec::new();
    let mut push =
        |label: &'static str, kind: RowKind, decimals: usize, a: Getter, b: Getter, alg: Getter| -> Result<()> {
            let xa = a.map(|f| col(f));
            let xb = b.map(|f| col(f));
            let type_a = xa
                .as_deref()
                .map(|x| GroupSummary::new(format!("{label} A"), x))
                .transpose()?;
            let type_b = xb
                .as_deref()
                .map(|x| GroupSummary::new(format!("{label} B"), x))
                .transpose()?;
            let comparison = match (&xa, &xb) {
                (Some(x), Some(y)) if n > 1 => match paired_t_test(x, y) {
                    Ok(t) => Some(t),
                    Err(e) => {
                        warnings.push(format!("{label}: comparison skipped ({e})"));
                        None
                    }
                },
                _ => None,
            };
            let alg = alg
                .map(|f| GroupSummary::new(format!("{label} ALG"), &col(f)))
                .transpose()?;
            rows.push(Table2Row {
                label,
                kind,
                decimals,
                type_a,
                type_b,
                comparison,
                alg,
            });
            Ok(())
        };

    use RowKind::{Parameter, Statistic};
    push("alpha1", Parameter, 1, None, None, Some(&|_, s| s.alg.alpha1()))?;
    push("alpha2", Parameter, 1, None, None, Some(&|_, s| s.alg.alpha2()))?;
    push(
        "mu",
        Parameter,
        1,
        Some(&|p, _| p.theta_a.mu()),
        Some(&|p, _| p.theta_b.mu()),
        Some(&|_, s| s.alg.mu()),
    )?;
    push(
        "sigma",
        Parameter,
        1,
        Some(&|p, _| p.theta_a.sigma()),
        Some(&|p, _| p.theta_b.sigma()),
        Some(&|_, s| s.alg.sigma()),
    )?;
    push(
        "tau",
        Parameter,
        1,
        Some(&|p, _| p.theta_a.tau()),
        Some(&|p, _| p.theta_b.tau()),
        None,
    )?;
    push(
        "Mean",
        Statistic,
        1,
        Some(&|_, s| s.exg_a.mean),
        Some(&|_, s| s.exg_b.mean),
        Some(&|_, s| s.alg_stats.mean),
    )?;
    push(
        "St.D",
        Statistic,
        1,
        Some(&|_, s| s.exg_a.stdev),
        Some(&|_, s| s.exg_b.stdev),
        Some(&|_, s| s.alg_stats.stdev),
    )?;
    push(
        "Skewness",
        Statistic,
        3,
        Some(&|_, s| s.exg_a.skewness),
        Some(&|_, s| s.exg_b.skewness),
        Some(&|_, s| s.alg_stats.skewness),
    )?;
    push(
        "Kurtosis",
        Statistic,
        3,
        Some(&|_, s| s.exg_a.family_kurtosis),
        Some(&|_, s| s.exg_b.family_kurtosis),
        Some(&|_, s| s.alg_stats.family_kurtosis),
    )?;

    Ok(Table2Report {
        n,
        rows,
        participants: stats,
        warnings,
    })
}

fn cell(s: &Option<GroupSummary>, d: usize) -> String {
    match s {
        Some(g) => format!("{:.d$} ({:.d$}, {:.d$})", g.mean, g.ci_low, g.ci_high),
        None => "-".into(),
    }
}

fn comparison_cell(c: &Option<PairedTestResult>, d: usize) -> String {
    match c {
        Some(t) => format!("{:.d$}{} ({:.d$}, {:.d$})", t.mean_diff, t.stars, t.ci_low, t.ci_high),
        None => "-".into(),
    }
}

/// Aligned plain-text rendering: `mean (ci_low, ci_high)` per cell.
pub fn render_text(report: &Table2Report) -> String {
    let header = ["", "Type A", "Type B", "B vs A", "ALG"];
    let body: Vec<[String; 5]> = report
        .rows
        .iter()
        .map(|r| {
            [
                r.label.to_string(),
                cell(&r.type_a, r.decimals),
                cell(&r.type_b, r.decimals),
                comparison_cell(&r.comparison, r.decimals),
                cell(&r.alg, r.decimals),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &body {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let _ = writeln!(out, "mean (95% CI), n = {}", report.n);
    let line = |cells: &[&str], out: &mut String| {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
            if i == 0 {
                let _ = write!(s, "{c:<w$}");
            } else {
                let _ = write!(s, "  {c:>w$}");
            }
        }
        let _ = writeln!(out, "{}", s.trim_end());
    };
    line(&header, &mut out);
    let mut previous = None;
    for (row, cells) in report.rows.iter().zip(&body) {
        if previous.is_some() && previous != Some(row.kind) {
            out.push('\n');
        }
        previous = Some(row.kind);
        line(&cells.each_ref().map(String::as_str), &mut out);
    }
    out.push_str("\n* p < 0.05, ** p < 0.005, *** p < 0.0005 (paired t test, B - A)\n");
    out.push_str(
        "ExG kurtosis is full kurtosis (3 for a Gaussian); ALG kurtosis is excess kurtosis (0 for a Gaussian).\n",
    );
    for w in &report.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

/// Machine-readable rendering at full precision, one line per cell.
pub fn write_csv<W: Write>(report: &Table2Report, sink: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record([
        "row", "column", "n", "mean", "ci_low", "ci_high", "t", "df", "p_value", "stars",
    ])?;
    let num = |v: f64| format!("{v}");
    for r in &report.rows {
        for (column, g) in [("type_a", &r.type_a), ("type_b", &r.type_b), ("alg", &r.alg)] {
            if let Some(g) = g {
                w.write_record([
                    r.label,
                    column,
                    &g.n.to_string(),
                    &num(g.mean),
                    &num(g.ci_low),
                    &num(g.ci_high),
                    "",
                    "",
                    "",
                    "",
                ])?;
            }
        }
        if let Some(t) = &r.comparison {
            w.write_record([
                r.label,
                "b_vs_a",
                &t.n.to_string(),
                &num(t.mean_diff),
                &num(t.ci_low),
                &num(t.ci_high),
                &num(t.t_stat),
                &t.df.to_string(),
                &num(t.p_value),
                &t.stars.to_string(),
            ])?;
        }
    }
    w.flush().map_err(|e| Error::Io {
        path: "<csv output>".into(),
        source: e,
    })?;
    Ok(())
}
