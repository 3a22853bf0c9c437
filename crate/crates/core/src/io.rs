//! File formats: CSV for points, values, and coefficients; JSON bundles for
//! self-contained coefficient sets and cached transform matrices.
//!
//! All numeric output goes through the shortest round-trip float formatting,
//! so re-running a deterministic job produces byte-identical files.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::approx::{BenchmarkRecord, PerturbationStudy};
use crate::error::{Error, Result};
use crate::multiindex::{DegreeNorm, MultiIndex, MultiIndexSet};
use crate::newton::NewtonPolynomial;
use crate::nodes::GeneratingNodes;
use crate::transform::{Basis, TransformSet};

/// Current schema version stamped into every JSON bundle.
pub const SCHEMA_VERSION: u32 = 1;

fn fmt_f64(v: f64) -> String {
    let mut buf = ryu_format(v);
    // ryu prints integral floats as "1.0"; keep that, it round-trips.
    if buf == "-0.0" {
        buf = "0.0".to_string();
    }
    buf
}

fn ryu_format(v: f64) -> String {
    if !v.is_finite() {
        // "NaN" / "inf" / "-inf" parse back through f64::from_str.
        return v.to_string();
    }
    let mut s = serde_json::to_string(&v).unwrap_or_else(|_| v.to_string());
    if !s.contains('.') && !s.contains('e') {
        s.push_str(".0");
    }
    s
}

fn parse_f64(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::Format(format!("not a number: {s:?}")))
}

/// Write points as CSV with columns `x_1..x_m`, one point per row.
pub fn write_points_csv<P: AsRef<Path>>(path: P, points: &[Vec<f64>]) -> Result<()> {
    let m = points.first().map_or(0, Vec::len);
    let mut w = csv::Writer::from_path(path.as_ref())?;
    w.write_record((1..=m).map(|d| format!("x_{d}")))?;
    for p in points {
        w.write_record(p.iter().map(|&v| fmt_f64(v)))?;
    }
    w.flush()?;
    Ok(())
}

/// Read points from CSV (header `x_1..x_m`).
pub fn read_points_csv<P: AsRef<Path>>(path: P) -> Result<Vec<Vec<f64>>> {
    let (points, values) = read_samples_csv(path)?;
    if values.is_some() {
        return Err(Error::Format(
            "expected pure coordinate columns, found a value column".into(),
        ));
    }
    Ok(points)
}

/// Read sample rows `x_1..x_m[,value]`; the trailing value column is
/// optional.
pub fn read_samples_csv<P: AsRef<Path>>(path: P) -> Result<(Vec<Vec<f64>>, Option<Vec<f64>>)> {
    let mut r = csv::Reader::from_path(path.as_ref())?;
    let headers = r.headers()?.clone();
    let mut coord_cols = 0usize;
    for (i, h) in headers.iter().enumerate() {
        if h == format!("x_{}", i + 1) {
            coord_cols += 1;
        } else {
            break;
        }
    }
    if coord_cols == 0 {
        return Err(Error::Format(
            "expected coordinate columns named x_1, x_2, ...".into(),
        ));
    }
    let has_value = headers.len() == coord_cols + 1 && &headers[coord_cols] == "value";
    if headers.len() > coord_cols && !has_value {
        return Err(Error::Format(format!(
            "unexpected column {:?} after coordinates",
            &headers[coord_cols]
        )));
    }
    let mut points = Vec::new();
    let mut values = Vec::new();
    for record in r.records() {
        let record = record?;
        let mut p = Vec::with_capacity(coord_cols);
        for i in 0..coord_cols {
            p.push(parse_f64(&record[i])?);
        }
        points.push(p);
        if has_value {
            values.push(parse_f64(&record[coord_cols])?);
        }
    }
    Ok((points, if has_value { Some(values) } else { None }))
}

/// Write a single `value` column.
pub fn write_values_csv<P: AsRef<Path>>(path: P, values: &[f64]) -> Result<()> {
    let mut w = csv::Writer::from_path(path.as_ref())?;
    w.write_record(["value"])?;
    for &v in values {
        w.write_record([fmt_f64(v)])?;
    }
    w.flush()?;
    Ok(())
}

/// Read a single `value` column.
pub fn read_values_csv<P: AsRef<Path>>(path: P) -> Result<Vec<f64>> {
    let mut r = csv::Reader::from_path(path.as_ref())?;
    let headers = r.headers()?.clone();
    if headers.len() != 1 || &headers[0] != "value" {
        return Err(Error::Format("expected a single `value` column".into()));
    }
    let mut values = Vec::new();
    for record in r.records() {
        values.push(parse_f64(&record?[0])?);
    }
    Ok(values)
}

/// Write coefficients as CSV with columns `alpha_1..alpha_m,c` in lex order.
pub fn write_coefficients_csv<P: AsRef<Path>>(
    path: P,
    set: &MultiIndexSet,
    coefficients: &[f64],
) -> Result<()> {
    if coefficients.len() != set.len() {
        return Err(Error::SizeMismatch {
            what: "coefficients",
            expected: set.len(),
            got: coefficients.len(),
        });
    }
    let mut w = csv::Writer::from_path(path.as_ref())?;
    let mut header: Vec<String> = (1..=set.dim()).map(|d| format!("alpha_{d}")).collect();
    header.push("c".into());
    w.write_record(&header)?;
    for (alpha, &c) in set.indices().iter().zip(coefficients) {
        let mut row: Vec<String> = alpha.entries().iter().map(|e| e.to_string()).collect();
        row.push(fmt_f64(c));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Read a coefficient CSV back into `(indices, coefficients)`.
pub fn read_coefficients_csv<P: AsRef<Path>>(path: P) -> Result<(Vec<MultiIndex>, Vec<f64>)> {
    let mut r = csv::Reader::from_path(path.as_ref())?;
    let headers = r.headers()?.clone();
    let m = headers.len().saturating_sub(1);
    if m == 0 || &headers[m] != "c" {
        return Err(Error::Format("expected columns alpha_1..alpha_m,c".into()));
    }
    let mut indices = Vec::new();
    let mut coeffs = Vec::new();
    for record in r.records() {
        let record = record?;
        let mut entries = Vec::with_capacity(m);
        for i in 0..m {
            entries.push(
                record[i]
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Format(format!("bad exponent {:?}", &record[i])))?,
            );
        }
        indices.push(MultiIndex::new(entries));
        coeffs.push(parse_f64(&record[m])?);
    }
    Ok((indices, coeffs))
}

/// Self-contained coefficient bundle: basis tag, index set, generating
/// nodes, and coefficients, so evaluation never needs side channels.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoefficientBundle {
    pub schema: u32,
    pub basis: Basis,
    pub set: MultiIndexSet,
    pub gp: GeneratingNodes,
    pub coefficients: Vec<f64>,
}

impl CoefficientBundle {
    pub fn from_newton(poly: &NewtonPolynomial) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            basis: Basis::Newton,
            set: poly.set().clone(),
            gp: poly.gp().clone(),
            coefficients: poly.coefficients().to_vec(),
        }
    }

    /// Rebuild the Newton polynomial; the bundle must be Newton-tagged.
    pub fn into_newton(self) -> Result<NewtonPolynomial> {
        if self.basis != Basis::Newton {
            return Err(Error::Format(format!(
                "bundle holds {:?} coefficients, expected newton",
                self.basis
            )));
        }
        NewtonPolynomial::new(self.set, self.gp, self.coefficients)
    }
}

/// Cached transform matrices keyed by the content hash of `(A, GP)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransformBundle {
    pub schema: u32,
    pub key: String,
    pub transform: TransformSet,
}

impl TransformBundle {
    pub fn new(transform: TransformSet) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            key: transform.key(),
            transform,
        }
    }
}

/// Load a cached transform if the file exists, its key matches the node
/// family, and the matrices have consistent dimensions; any mismatch or
/// parse failure falls back to `None` (callers rebuild).
pub fn load_cached_transform<P: AsRef<Path>>(path: P, expected_key: &str) -> Option<TransformSet> {
    let bundle: TransformBundle = load_json(path).ok()?;
    if bundle.schema != SCHEMA_VERSION || bundle.key != expected_key {
        return None;
    }
    let t = bundle.transform;
    let k = t.set().len();
    let square = |m: &crate::linalg::Matrix| m.rows() == k && m.cols() == k;
    if square(t.nl()) && square(t.ln()) && square(t.cn()) && square(t.nc()) {
        Some(t)
    } else {
        None
    }
}

/// Serialize any value as pretty JSON (deterministic field order).
pub fn save_json<P: AsRef<Path>, T: Serialize>(path: P, value: &T) -> Result<()> {
    let f = File::create(path.as_ref())?;
    let mut w = BufWriter::new(f);
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

pub fn load_json<P: AsRef<Path>, T: DeserializeOwned>(path: P) -> Result<T> {
    let f = File::open(path.as_ref())?;
    Ok(serde_json::from_reader(BufReader::new(f))?)
}

fn degree_norm_field(p: DegreeNorm) -> String {
    match p {
        DegreeNorm::LInf => "inf".to_string(),
        other => fmt_f64(other.value()),
    }
}

fn parse_degree_norm(s: &str) -> Result<DegreeNorm> {
    if s.trim() == "inf" {
        return Ok(DegreeNorm::LInf);
    }
    DegreeNorm::from_value(parse_f64(s)?)
}

/// Benchmark CSV: columns `m,n,p,cardinality,max_error,seconds,seed`.
pub fn write_benchmark_csv<P: AsRef<Path>>(path: P, records: &[BenchmarkRecord]) -> Result<()> {
    let mut w = csv::Writer::from_path(path.as_ref())?;
    w.write_record(["m", "n", "p", "cardinality", "max_error", "seconds", "seed"])?;
    for r in records {
        w.write_record([
            r.m.to_string(),
            r.n.to_string(),
            degree_norm_field(r.p),
            r.cardinality.to_string(),
            fmt_f64(r.max_error),
            fmt_f64(r.seconds),
            r.seed.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Read benchmark records (also used to ingest external method results for
/// side-by-side comparison).
pub fn read_benchmark_csv<P: AsRef<Path>>(path: P) -> Result<Vec<BenchmarkRecord>> {
    let mut r = csv::Reader::from_path(path.as_ref())?;
    let headers = r.headers()?.clone();
    let expect = ["m", "n", "p", "cardinality", "max_error", "seconds", "seed"];
    if headers.iter().ne(expect) {
        return Err(Error::Format(format!(
            "expected columns {expect:?}, got {headers:?}"
        )));
    }
    let mut out = Vec::new();
    for record in r.records() {
        let record = record?;
        out.push(BenchmarkRecord {
            m: record[0]
                .parse()
                .map_err(|_| Error::Format("bad m".into()))?,
            n: record[1]
                .parse()
                .map_err(|_| Error::Format("bad n".into()))?,
            p: parse_degree_norm(&record[2])?,
            cardinality: record[3]
                .parse()
                .map_err(|_| Error::Format("bad cardinality".into()))?,
            max_error: parse_f64(&record[4])?,
            seconds: parse_f64(&record[5])?,
            seed: record[6]
                .parse()
                .map_err(|_| Error::Format("bad seed".into()))?,
        });
    }
    Ok(out)
}

/// Perturbation study CSV:
/// columns `amplitude,n,cardinality,ap,est,s_inf,retries`.
pub fn write_perturbation_csv<P: AsRef<Path>>(path: P, study: &PerturbationStudy) -> Result<()> {
    let mut w = csv::Writer::from_path(path.as_ref())?;
    w.write_record([
        "amplitude",
        "n",
        "cardinality",
        "ap",
        "est",
        "s_inf",
        "retries",
    ])?;
    for r in &study.records {
        w.write_record([
            fmt_f64(r.amplitude),
            r.n.to_string(),
            r.cardinality.to_string(),
            fmt_f64(r.ap),
            fmt_f64(r.est),
            fmt_f64(r.s_inf),
            r.retries.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Dense matrix CSV (no header), for debugging transform matrices.
pub fn write_matrix_csv<P: AsRef<Path>>(path: P, matrix: &crate::linalg::Matrix) -> Result<()> {
    let f = File::create(path.as_ref())?;
    let mut w = BufWriter::new(f);
    for r in 0..matrix.rows() {
        let row: Vec<String> = matrix.row(r).iter().map(|&v| fmt_f64(v)).collect();
        writeln!(w, "{}", row.join(","))?;
    }
    w.flush()?;
    Ok(())
}
