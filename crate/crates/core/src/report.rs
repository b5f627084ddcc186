//! Machine-readable output: JSON report documents, CSV tables, plot-data series.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::kernels::ComplexPoint;
use crate::testbed::BoundReport;

pub const SCHEMA_VERSION: &str = "1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const SIGNIFICANT_DIGITS: usize = 15;

/// Rounds to 15 significant digits so reports do not depend on the last bits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

fn round_opt(x: Option<f64>) -> Option<f64> {
    x.map(round_sig)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    pub profile: String,
    pub slack: f64,
    pub sharp_tol: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_re: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_im: Option<f64>,
    pub measured: f64,
    pub bound: f64,
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportSummary {
    pub min_margin: Option<f64>,
    pub sharp_points: Vec<[f64; 2]>,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub tool_version: String,
    pub scenario: String,
    pub bound: String,
    pub grid: String,
    pub tolerance: ToleranceConfig,
    pub records: Vec<ReportRecord>,
    pub summary: ReportSummary,
}

impl ReportDocument {
    pub fn new(scenario: impl Into<String>, bound: impl Into<String>, grid: impl Into<String>, tolerance: ToleranceConfig) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            tool_version: TOOL_VERSION.to_string(),
            scenario: scenario.into(),
            bound: bound.into(),
            grid: grid.into(),
            tolerance,
            records: Vec::new(),
            summary: ReportSummary {
                min_margin: None,
                sharp_points: Vec::new(),
                pass: true,
                failures: Vec::new(),
            },
        }
    }

    pub fn from_bound_report(report: &BoundReport, profile: &str, pass: bool) -> Self {
        let mut doc = ReportDocument::new(
            report.scenario.clone(),
            report.bound.to_string(),
            report.grid.clone(),
            ToleranceConfig {
                profile: profile.to_string(),
                slack: report.slack,
                sharp_tol: report.sharp_tol,
            },
        );
        doc.extend_bound_report(report, None);
        doc.summary.sharp_points = report.sharp_points.iter().map(|p| [p.re, p.im]).collect();
        doc.finish(pass, Vec::new());
        doc
    }

    pub fn extend_bound_report(&mut self, report: &BoundReport, label: Option<&str>) {
        for r in &report.records {
            self.records.push(ReportRecord {
                label: label.map(str::to_string),
                z_re: Some(r.z_re),
                z_im: Some(r.z_im),
                measured: r.measured,
                bound: r.bound,
                margin: r.margin,
            });
        }
    }

    pub fn push(&mut self, label: Option<String>, z: Option<ComplexPoint>, measured: f64, bound: f64, margin: f64) {
        self.records.push(ReportRecord {
            label,
            z_re: z.map(|p| p.re),
            z_im: z.map(|p| p.im),
            measured,
            bound,
            margin,
        });
    }

    /// Fills the summary and rounds every float to 15 significant digits.
    pub fn finish(&mut self, pass: bool, failures: Vec<String>) {
        let min = self.records.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min);
        self.summary.min_margin = min.is_finite().then_some(min);
        self.summary.pass = pass;
        self.summary.failures = failures;
        self.tolerance.slack = round_sig(self.tolerance.slack);
        self.tolerance.sharp_tol = round_sig(self.tolerance.sharp_tol);
        for r in &mut self.records {
            r.z_re = round_opt(r.z_re);
            r.z_im = round_opt(r.z_im);
            r.measured = round_sig(r.measured);
            r.bound = round_sig(r.bound);
            r.margin = round_sig(r.margin);
        }
        self.summary.min_margin = round_opt(self.summary.min_margin);
        for p in &mut self.summary.sharp_points {
            *p = [round_sig(p[0]), round_sig(p[1])];
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Fixed-format CSV writer (header row, LF endings, `{:.14e}` floats).
pub struct CsvWriter<W: Write> {
    out: W,
}

impl<W: Write> CsvWriter<W> {
    pub fn new(mut out: W, header: &[&str]) -> io::Result<Self> {
        writeln!(out, "{}", header.join(","))?;
        Ok(CsvWriter { out })
    }

    pub fn row(&mut self, values: &[f64]) -> io::Result<()> {
        let cells: Vec<String> = values.iter().map(|v| format_float(*v)).collect();
        writeln!(self.out, "{}", cells.join(","))
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{:.*e}", SIGNIFICANT_DIGITS - 1, v)
    }
}

/// Two-column whitespace-separated `(x, y)` series.
pub fn write_plot_data<W: Write>(mut out: W, title: &str, points: &[(f64, f64)]) -> io::Result<()> {
    writeln!(out, "# {title}")?;
    for &(x, y) in points {
        writeln!(out, "{} {}", format_float(x), format_float(y))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_to_fifteen_digits() {
        assert_eq!(round_sig(0.1 + 0.2), 0.3);
        assert_eq!(round_sig(1.0 / 3.0), 0.333333333333333);
        assert_eq!(round_sig(0.0), 0.0);
        assert!(round_sig(f64::NAN).is_nan());
    }

    #[test]
    fn csv_format() {
        let mut w = CsvWriter::new(Vec::new(), &["a", "b"]).unwrap();
        w.row(&[1.0, -0.25]).unwrap();
        let s = String::from_utf8(w.into_inner()).unwrap();
        assert_eq!(s, "a,b\n1.00000000000000e0,-2.50000000000000e-1\n");
    }

    #[test]
    fn document_round_trip() {
        let mut doc = ReportDocument::new(
            "s",
            "schwarz",
            "2x2",
            ToleranceConfig {
                profile: "fast".into(),
                slack: 1e-8,
                sharp_tol: 1e-6,
            },
        );
        doc.push(Some("x".into()), None, 1.0 / 3.0, 0.5, 0.5 - 1.0 / 3.0);
        doc.finish(true, Vec::new());
        let json = doc.to_json();
        assert!(json.contains("\"schema_version\": \"1\""));
        let back: ReportDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back, doc);
    }
}
