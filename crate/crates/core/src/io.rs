//! Canonical JSON and CSV artifacts.
//!
//! Output objects have sorted keys and every float is printed with 17
//! significant digits, so `load ∘ save` is the identity and identical
//! inputs give byte-identical files.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::{json, Value};
use thiserror::Error;

use crate::analysis::DecompositionReport;
use crate::calculus::ProjectionResult;
use crate::linalg::{QMatrix, SpectrumResult};
use crate::quat::Quaternion;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("IoError: {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("ParseError: {context}: {message}")]
    Parse { context: String, message: String },
}

impl IoError {
    fn parse(context: impl Into<String>, message: impl Into<String>) -> Self {
        IoError::Parse {
            context: context.into(),
            message: message.into(),
        }
    }
}

/// Compact formatter printing floats as `d.dddddddddddddddde±x`.
struct CanonicalFormatter;

impl Formatter for CanonicalFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()> {
        if value == 0.0 {
            // Normalize −0 so that equal values print identically.
            return writer.write_all(b"0.0000000000000000e0");
        }
        write!(writer, "{value:.16e}")
    }
}

/// Serializes through `serde_json::Value`, whose maps are key-sorted.
/// Non-finite floats become `null`.
pub fn to_canonical_string<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("artifact types serialize to JSON");
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, CanonicalFormatter);
    v.serialize(&mut ser).expect("writing to memory");
    out.push(b'\n');
    String::from_utf8(out).expect("JSON is UTF-8")
}

pub fn write_text(path: &Path, text: &str) -> Result<(), IoError> {
    std::fs::write(path, text).map_err(|source| IoError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn save<T: Serialize>(value: &T, path: &Path) -> Result<(), IoError> {
    write_text(path, &to_canonical_string(value))
}

pub fn load_matrix(path: &Path) -> Result<QMatrix, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_matrix(&text).map_err(|e| match e {
        IoError::Parse { context, message } => {
            IoError::parse(format!("{}: {context}", path.display()), message)
        }
        other => other,
    })
}

/// Parses `{"n": int, "entries": [[[w,x,y,z], …], …]}`.
pub fn parse_matrix(text: &str) -> Result<QMatrix, IoError> {
    let v: Value = serde_json::from_str(text).map_err(|e| {
        IoError::parse(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    let obj = v
        .as_object()
        .ok_or_else(|| IoError::parse("document", "expected an object"))?;
    let n = obj
        .get("n")
        .ok_or_else(|| IoError::parse("field \"n\"", "missing"))?
        .as_u64()
        .ok_or_else(|| IoError::parse("field \"n\"", "expected a nonnegative integer"))?
        as usize;
    let rows = obj
        .get("entries")
        .ok_or_else(|| IoError::parse("field \"entries\"", "missing"))?
        .as_array()
        .ok_or_else(|| IoError::parse("field \"entries\"", "expected an array of rows"))?;
    if rows.len() != n {
        return Err(IoError::parse(
            "field \"entries\"",
            format!("non-square grid: {} rows, expected n = {n}", rows.len()),
        ));
    }
    let mut out = Vec::with_capacity(n);
    for (r, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| {
            IoError::parse(format!("entries[{r}]"), "expected an array of entries")
        })?;
        if row.len() != n {
            return Err(IoError::parse(
                format!("entries[{r}]"),
                format!(
                    "non-square grid: row has {} entries, expected {n}",
                    row.len()
                ),
            ));
        }
        let mut parsed = Vec::with_capacity(n);
        for (c, entry) in row.iter().enumerate() {
            let index = r * n + c;
            let context = format!("entries[{r}][{c}] (entry {index})");
            let comps = entry
                .as_array()
                .ok_or_else(|| IoError::parse(context.clone(), "expected [w,x,y,z]"))?;
            if comps.len() != 4 {
                return Err(IoError::parse(
                    context,
                    format!("has {} components, expected 4", comps.len()),
                ));
            }
            let mut q = [0.0; 4];
            for (k, x) in comps.iter().enumerate() {
                q[k] = x.as_f64().ok_or_else(|| {
                    IoError::parse(context.clone(), format!("component {k} is not a number"))
                })?;
            }
            parsed.push(Quaternion::from_array(q));
        }
        out.push(parsed);
    }
    QMatrix::from_rows(out).map_err(|e| IoError::parse("field \"entries\"", e.to_string()))
}

/// Projector with its diagnostics and contour.
pub fn projection_json(p: &ProjectionResult) -> Value {
    json!({
        "P": p.p,
        "diagnostics": {
            "idempotency_residual": p.idempotency_residual,
            "commutator_residual": p.commutator_residual,
            "rank": p.rank,
            "slice_unit": p.slice_unit,
            "nodes": p.nodes,
        },
        "contour": p.contour,
    })
}

/// Decomposition report: bases as column lists, spectra as spectrum JSON.
pub fn decomposition_json(r: &DecompositionReport) -> Value {
    json!({
        "projection": projection_json(&r.projection),
        "basis_range": r.basis_range(),
        "basis_null": r.basis_null(),
        "T1": r.t1(),
        "T2": r.t2(),
        "spectra1": r.spectra1,
        "spectra2": r.spectra2,
        "expected1": r.expected1,
        "expected2": r.expected2,
        "split_error": r.split_error,
        "multiplicity_match": r.multiplicity_match,
        "range_residual": r.restriction.range_residual,
        "null_residual": r.restriction.null_residual,
        "invariance_residual": r.restriction.invariance_residual,
    })
}

/// Plot data: one `re,rho` row per sphere.
pub fn spectrum_csv(spec: &SpectrumResult) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["re", "rho"]).expect("writing to memory");
    for s in &spec.spheres {
        w.write_record([format!("{:.16e}", s.re), format!("{:.16e}", s.rho)])
            .expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("CSV is UTF-8")
}
