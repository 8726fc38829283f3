//! Tabulated pdf, cdf and hazard curves for external plotting.

use std::io::{Read, Write};

use crate::dist::RtDistribution;
use crate::error::{Error, Result};

pub const CURVE_HEADER: [&str; 4] = ["t", "pdf", "cdf", "hazard"];

#[derive(Debug, Clone, PartialEq)]
pub struct CurveTable {
    pub grid: Vec<f64>,
    pub pdf: Vec<f64>,
    pub cdf: Vec<f64>,
    pub hazard: Vec<f64>,
}

impl CurveTable {
    /// Evaluates `dist` on `points` equally spaced times in `[tmin, tmax]`.
    pub fn tabulate<D: RtDistribution>(dist: &D, tmin: f64, tmax: f64, points: usize) -> Result<Self> {
        if !(tmin.is_finite() && tmax.is_finite() && tmin < tmax) {
            return Err(Error::Domain(format!("need finite tmin < tmax, got [{tmin}, {tmax}]")));
        }
        if points < 2 {
            return Err(Error::InvalidParameter {
                name: "points",
                value: points as f64,
                reason: "at least two grid points are required",
            });
        }
        let step = (tmax - tmin) / (points - 1) as f64;
        let grid: Vec<f64> = (0..points)
            .map(|i| if i + 1 == points { tmax } else { tmin + step * i as f64 })
            .collect();
        let mut table = CurveTable {
            pdf: Vec::with_capacity(points),
            cdf: Vec::with_capacity(points),
            hazard: Vec::with_capacity(points),
            grid,
        };
        for &t in &table.grid {
            table.pdf.push(dist.pdf(t)?);
            table.cdf.push(dist.cdf(t)?);
            table.hazard.push(dist.hazard(t)?.rate);
        }
        Ok(table)
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// Equal column lengths, strictly increasing grid, finite entries,
    /// non-negative densities and rates, probabilities in `[0, 1]`.
    pub fn validate(&self) -> Result<()> {
        let n = self.grid.len();
        for len in [self.pdf.len(), self.cdf.len(), self.hazard.len()] {
            if len != n {
                return Err(Error::LengthMismatch { left: n, right: len });
            }
        }
        if let Some(i) = self.grid.windows(2).position(|w| !(w[0] < w[1])) {
            return Err(Error::Domain(format!("grid not strictly increasing at row {}", i + 2)));
        }
        for i in 0..n {
            let ok = self.grid[i].is_finite()
                && self.pdf[i].is_finite()
                && self.pdf[i] >= 0.0
                && (0.0..=1.0).contains(&self.cdf[i])
                && self.hazard[i] >= 0.0
                && !self.hazard[i].is_nan();
            if !ok {
                return Err(Error::Domain(format!("row {} holds an invalid value", i + 1)));
            }
        }
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, sink: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(sink);
        w.write_record(CURVE_HEADER)?;
        for i in 0..self.len() {
            w.write_record([self.grid[i], self.pdf[i], self.cdf[i], self.hazard[i]].map(|v| v.to_string()))?;
        }
        w.flush().map_err(|e| Error::Io {
            path: "<curve output>".into(),
            source: e,
        })
    }

    /// Reads a table written by [`CurveTable::write_csv`] and validates it.
    pub fn read_csv<R: Read>(source: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(source);
        let names: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
        if names != CURVE_HEADER {
            return Err(Error::Parse {
                line: 1,
                field: "header".into(),
                message: format!("expected `{}`", CURVE_HEADER.join(",")),
            });
        }
        let mut t = CurveTable {
            grid: vec![],
            pdf: vec![],
            cdf: vec![],
            hazard: vec![],
        };
        for row in r.records() {
            let rec = row?;
            let line = rec.position().map_or(0, |p| p.line());
            let mut vals = [0.0; 4];
            for (i, v) in vals.iter_mut().enumerate() {
                let raw = rec.get(i).unwrap_or("");
                *v = raw.parse().map_err(|_| Error::Parse {
                    line,
                    field: CURVE_HEADER[i].into(),
                    message: format!("`{raw}` is not a number"),
                })?;
            }
            t.grid.push(vals[0]);
            t.pdf.push(vals[1]);
            t.cdf.push(vals[2]);
            t.hazard.push(vals[3]);
        }
        t.validate()?;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{ALGParams, ExGParams};

    #[test]
    fn two_points_and_round_trip() {
        let d = ExGParams::new(400.0, 50.0, 100.0).unwrap();
        let t = CurveTable::tabulate(&d, 200.0, 1200.0, 2).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.grid, [200.0, 1200.0]);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert_eq!(CurveTable::read_csv(buf.as_slice()).unwrap(), t);
    }

    #[test]
    fn rejects_bad_ranges() {
        let d = ALGParams::new(50.0, 60.0, 0.0, 30.0).unwrap();
        assert!(CurveTable::tabulate(&d, 1.0, 1.0, 10).is_err());
        assert!(CurveTable::tabulate(&d, 0.0, 1.0, 1).is_err());
    }

    #[test]
    fn validation_catches_broken_tables() {
        let mut t = CurveTable {
            grid: vec![0.0, 1.0],
            pdf: vec![0.1, 0.2],
            cdf: vec![0.3, 0.4],
            hazard: vec![0.1, 0.3],
        };
        assert!(t.validate().is_ok());
        t.grid[1] = 0.0;
        assert!(t.validate().is_err());
        t.grid[1] = 1.0;
        t.cdf[1] = 1.5;
        assert!(t.validate().is_err());
        t.cdf.pop();
        assert!(matches!(t.validate(), Err(Error::LengthMismatch { .. })));
    }
}
