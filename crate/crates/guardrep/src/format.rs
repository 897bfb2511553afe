//! JSON and CSV documents for matrices, families, guardian reports and
//! sweep results.
//!
//! Matrices are `{"rows": n, "cols": m, "data": [[...], ...]}`, row-major.
//! CSV input is one row per line, comma-separated, no header. Floats are
//! written in shortest round-trip form, so output is byte-stable and parses
//! back to the same doubles.

use std::fs;
use std::io::Read;
use std::path::Path;

use guardrep_core::sweep::{Crossing, ParamFamily, SweepResult, Touch};
use guardrep_core::{GuardianReport, GuardianValue, Matrix};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<f64>>,
}

impl From<&Matrix> for MatrixDoc {
    fn from(m: &Matrix) -> Self {
        MatrixDoc {
            rows: m.rows(),
            cols: m.cols(),
            data: (0..m.rows()).map(|i| m.row(i).to_vec()).collect(),
        }
    }
}

impl MatrixDoc {
    /// Checks the declared shape against `data`.
    pub fn into_matrix(self) -> std::result::Result<Matrix, String> {
        if self.data.len() != self.rows {
            return Err(format!(
                "\"rows\" is {} but data has {} rows",
                self.rows,
                self.data.len()
            ));
        }
        if let Some((i, r)) = self
            .data
            .iter()
            .enumerate()
            .find(|(_, r)| r.len() != self.cols)
        {
            return Err(format!(
                "\"cols\" is {} but row {i} has {} entries",
                self.cols,
                r.len()
            ));
        }
        let data = self.data.into_iter().flatten().collect();
        Matrix::new(self.rows, self.cols, data).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDoc {
    pub n: usize,
    pub base: MatrixDoc,
    pub dir1: MatrixDoc,
    #[serde(default)]
    pub dir2: Option<MatrixDoc>,
}

impl From<&ParamFamily> for FamilyDoc {
    fn from(f: &ParamFamily) -> Self {
        FamilyDoc {
            n: f.n(),
            base: f.base().into(),
            dir1: f.dir1().into(),
            dir2: f.dir2().map(MatrixDoc::from),
        }
    }
}

/// Reads `path`, or stdin when `path` is `-`.
pub fn read_source(path: &str, stdin: &mut dyn Read) -> Result<String> {
    let io_err = |source| Error::Io {
        path: path.to_string(),
        source,
    };
    if path == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io_err)
    }
}

/// Parses a JSON matrix document, or CSV when the text does not start
/// with `{`.
pub fn parse_matrix(text: &str) -> std::result::Result<Matrix, String> {
    if text.trim_start().starts_with('{') {
        let doc: MatrixDoc = serde_json::from_str(text).map_err(|e| e.to_string())?;
        doc.into_matrix()
    } else {
        parse_csv(text)
    }
}

fn parse_csv(text: &str) -> std::result::Result<Matrix, String> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| e.to_string())?;
        let row = record
            .iter()
            .enumerate()
            .map(|(j, field)| {
                field.parse::<f64>().map_err(|_| {
                    format!(
                        "line {}, column {}: not a number: {field:?}",
                        rows.len() + 1,
                        j + 1
                    )
                })
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err("empty CSV".to_string());
    }
    Matrix::from_rows(&rows).map_err(|e| e.to_string())
}

pub fn read_matrix(path: &str, stdin: &mut dyn Read) -> Result<Matrix> {
    let text = read_source(path, stdin)?;
    parse_matrix(&text).map_err(|message| Error::Format {
        path: path.to_string(),
        message,
    })
}

/// Reads a family document. Shape disagreements between `n` and the
/// matrices are dimension errors, not format errors.
pub fn read_family(path: &str, stdin: &mut dyn Read) -> Result<ParamFamily> {
    let text = read_source(path, stdin)?;
    let format_err = |message: String| Error::Format {
        path: path.to_string(),
        message,
    };
    let doc: FamilyDoc = serde_json::from_str(&text).map_err(|e| format_err(e.to_string()))?;
    let n = doc.n;
    let base = doc.base.into_matrix().map_err(format_err)?;
    let dir1 = doc.dir1.into_matrix().map_err(format_err)?;
    let dir2 = doc
        .dir2
        .map(MatrixDoc::into_matrix)
        .transpose()
        .map_err(format_err)?;
    if base.shape() != (n, n) {
        return Err(Error::Param(format!(
            "family declares n = {n} but base is {}x{}",
            base.rows(),
            base.cols()
        )));
    }
    Ok(ParamFamily::new(base, dir1, dir2)?)
}

pub fn matrix_json(m: &Matrix) -> String {
    to_json(&MatrixDoc::from(m))
}

pub fn family_json(f: &ParamFamily) -> String {
    to_json(&FamilyDoc::from(f))
}

/// Compact JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable document");
    s.push('\n');
    s
}

fn logmag(v: GuardianValue) -> Option<f64> {
    (!v.is_zero()).then_some(v.log_magnitude)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDoc {
    pub kind: &'static str,
    pub g_sign: i8,
    /// `null` when `g` is zero.
    pub g_logmag: Option<f64>,
    pub det_a_sign: i8,
    pub f_sign: i8,
    pub f_logmag: Option<f64>,
    pub verdict: &'static str,
    pub oracle: &'static str,
    pub max_real: f64,
    pub classification: &'static str,
}

impl From<&GuardianReport> for ReportDoc {
    fn from(r: &GuardianReport) -> Self {
        ReportDoc {
            kind: r.kind.as_str(),
            g_sign: r.g_value.sign,
            g_logmag: logmag(r.g_value),
            det_a_sign: r.det_a.sign,
            f_sign: r.f_value.sign,
            f_logmag: logmag(r.f_value),
            verdict: r.verdict.as_str(),
            oracle: r.oracle.as_str(),
            max_real: r.max_real,
            classification: r.classification().as_str(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleDoc {
    pub theta: f64,
    pub f_sign: i8,
    pub f_logmag: Option<f64>,
    pub g_sign: i8,
    pub max_real: f64,
    pub verdict: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossingDoc {
    pub kind: &'static str,
    pub lo: f64,
    pub hi: f64,
    pub theta: f64,
    pub width: f64,
    pub refined: bool,
    /// `null` unless refined.
    pub oracle_consistent: Option<bool>,
    pub max_real_below: Option<f64>,
    pub max_real_above: Option<f64>,
}

impl From<&Crossing> for CrossingDoc {
    fn from(c: &Crossing) -> Self {
        CrossingDoc {
            kind: c.kind.as_str(),
            lo: c.lo,
            hi: c.hi,
            theta: c.theta,
            width: c.width,
            refined: c.refined.is_some(),
            oracle_consistent: c.refined.map(|r| r.oracle_consistent),
            max_real_below: c.refined.map(|r| r.max_real_below),
            max_real_above: c.refined.map(|r| r.max_real_above),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TouchDoc {
    pub theta_first: f64,
    pub theta_last: f64,
}

impl From<&Touch> for TouchDoc {
    fn from(t: &Touch) -> Self {
        TouchDoc {
            theta_first: t.theta_first,
            theta_last: t.theta_last,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepDoc {
    pub kind: &'static str,
    pub theta_min: f64,
    pub theta_max: f64,
    pub samples: Vec<SampleDoc>,
    pub crossings: Vec<CrossingDoc>,
    pub touches: Vec<TouchDoc>,
}

impl From<&SweepResult> for SweepDoc {
    fn from(r: &SweepResult) -> Self {
        let samples: Vec<SampleDoc> = r
            .samples
            .iter()
            .map(|s| SampleDoc {
                theta: s.theta,
                f_sign: s.report.f_value.sign,
                f_logmag: logmag(s.report.f_value),
                g_sign: s.report.g_value.sign,
                max_real: s.report.max_real,
                verdict: s.report.verdict.as_str(),
            })
            .collect();
        SweepDoc {
            kind: r.kind.as_str(),
            theta_min: samples.first().map_or(f64::NAN, |s| s.theta),
            theta_max: samples.last().map_or(f64::NAN, |s| s.theta),
            samples,
            crossings: r.crossings.iter().map(CrossingDoc::from).collect(),
            touches: r.touches.iter().map(TouchDoc::from).collect(),
        }
    }
}

/// Writes `text` to `path`, creating or truncating it.
pub fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}
