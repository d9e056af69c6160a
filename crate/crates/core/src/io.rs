//! CSV and JSON emission.
//!
//! Numbers carry 12 significant digits. Files are written to a temporary
//! sibling and renamed into place, so a failed command leaves no partial
//! output behind.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::sweep::SweepTrace;

pub const SIGNIFICANT_DIGITS: usize = 12;
pub const TRACE_HEADER: [&str; 3] = ["phase_rad", "variance_linear", "variance_db"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Malformed(format!("unknown format `{other}`"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// `%.12g`-style rendering.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..SIGNIFICANT_DIGITS as i32).contains(&exp) {
        let rounded: f64 = sci.parse().expect("valid float");
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_fraction(format!("{rounded:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_fraction(mantissa.to_string()))
    }
}

fn trim_fraction(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Rounds to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x.is_finite() {
        format_sig(x).parse().expect("formatted float parses")
    } else {
        x
    }
}

fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            serde_json::Number::from_f64(round_sig(n.as_f64().unwrap()))
                .map(Value::Number)
                .unwrap_or(Value::Null)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_value).collect()),
        Value::Object(o) => {
            Value::Object(o.into_iter().map(|(k, v)| (k, round_value(v))).collect())
        }
        other => other,
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, Value)>) {
    match v {
        Value::Object(o) => {
            for (k, v) in o {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, v, out);
            }
        }
        Value::Array(a) => {
            for (i, v) in a.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), v, out);
            }
        }
        leaf => out.push((prefix.to_string(), leaf.clone())),
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Malformed(e.to_string())
}

fn csv_string(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(vec![]);
    w.write_record(header).map_err(csv_error)?;
    for row in rows {
        w.write_record(&row).map_err(csv_error)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Malformed(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Renders a sweep as `phase_rad,variance_linear,variance_db` rows, or as a
/// JSON object of arrays.
pub fn render_trace(trace: &SweepTrace, format: Format) -> Result<String> {
    match format {
        Format::Csv => csv_string(
            &TRACE_HEADER,
            (0..trace.len()).map(|i| {
                vec![
                    format_sig(trace.phase[i]),
                    format_sig(trace.variance_linear[i]),
                    format_sig(trace.variance_db[i]),
                ]
            }),
        ),
        Format::Json => render_report(trace, Format::Json),
    }
}

/// Renders any serializable report. JSON keeps the value's own structure
/// with rounded numbers; CSV flattens it to `key,value` rows with dotted
/// keys.
pub fn render_report<T: Serialize + ?Sized>(report: &T, format: Format) -> Result<String> {
    let value =
        round_value(serde_json::to_value(report).map_err(|e| Error::Malformed(e.to_string()))?);
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut pairs = Vec::new();
            flatten("", &value, &mut pairs);
            csv_string(
                &["key", "value"],
                pairs.into_iter().map(|(k, v)| {
                    let v = match v {
                        Value::Number(n) => {
                            n.as_f64().map(format_sig).unwrap_or_else(|| n.to_string())
                        }
                        Value::String(s) => s,
                        other => other.to_string(),
                    };
                    vec![k, v]
                }),
            )
        }
    }
}

/// Renders a slice of flat records as CSV, one row per record, with the
/// header taken from the first record's field names.
pub fn render_rows<T: Serialize>(rows: &[T]) -> Result<String> {
    let maps = rows.iter().map(report_map).collect::<Result<Vec<_>>>()?;
    let header: Vec<&str> = maps
        .first()
        .map(|m| m.keys().map(String::as_str).collect())
        .unwrap_or_default();
    csv_string(
        &header,
        maps.iter().map(|m| {
            header
                .iter()
                .map(|k| match &m[*k] {
                    Value::Number(n) => n.as_f64().map(format_sig).unwrap_or_else(|| n.to_string()),
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .collect()
        }),
    )
}

/// Writes `contents` to `path` atomically.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(contents.as_bytes()).map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

pub fn emit_trace(trace: &SweepTrace, path: &Path, format: Format) -> Result<()> {
    write_atomic(path, &render_trace(trace, format)?)
}

pub fn emit_report<T: Serialize + ?Sized>(report: &T, path: &Path, format: Format) -> Result<()> {
    write_atomic(path, &render_report(report, format)?)
}

pub fn parse_report<T: DeserializeOwned>(json: &str) -> Result<T> {
    serde_json::from_str(json).map_err(|e| Error::Malformed(e.to_string()))
}

/// Parses a trace CSV. Only the phase and linear variance columns are
/// read; dB values are recomputed.
pub fn parse_trace_csv(text: &str, detected: bool) -> Result<SweepTrace> {
    let mut r = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = r.headers().map_err(csv_error)?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Malformed(format!("missing column `{name}`")))
    };
    let (pc, vc) = (col(TRACE_HEADER[0])?, col(TRACE_HEADER[1])?);
    let mut phase = Vec::new();
    let mut variance = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(csv_error)?;
        let field = |i: usize| -> Result<f64> {
            rec.get(i).and_then(|s| s.parse().ok()).ok_or_else(|| {
                Error::Malformed(format!("row {}: bad number in column {i}", line + 2))
            })
        };
        phase.push(field(pc)?);
        variance.push(field(vc)?);
    }
    SweepTrace::from_linear(phase, variance, detected)
}

pub fn read_trace_csv(path: &Path, detected: bool) -> Result<SweepTrace> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_trace_csv(&text, detected)
}

/// Reads a JSON document into `T`.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })
}

/// Flat `key -> value` map of a report, as emitted.
pub fn report_map<T: Serialize>(report: &T) -> Result<Map<String, Value>> {
    match round_value(serde_json::to_value(report).map_err(|e| Error::Malformed(e.to_string()))?) {
        Value::Object(o) => Ok(o),
        _ => Err(Error::Malformed("report is not an object".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detection::{report_snr, SnrLevels, SnrReport};

    #[test]
    fn sig_formatting() {
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(1.0), "1");
        assert_eq!(format_sig(std::f64::consts::PI), "3.14159265359");
        assert_eq!(format_sig(-0.000123456789012345), "-0.000123456789012");
        assert_eq!(format_sig(1.5e-9), "1.5e-9");
        assert_eq!(format_sig(6.02214076e23), "6.02214076e23");
        assert_eq!(format_sig(123456789012.4), "123456789012");
        assert_eq!(format_sig(9.9999999999996), "10");
        assert_eq!(format_sig(17.564873543137), "17.5648735431");
    }

    #[test]
    fn empty_trace_is_header_only() {
        let s = render_trace(&SweepTrace::default(), Format::Csv).unwrap();
        assert_eq!(s, "phase_rad,variance_linear,variance_db\n");
    }

    #[test]
    fn three_point_trace() {
        let t = SweepTrace::from_linear(vec![0.0, 1.0, 2.0], vec![1.0, 10.0, 2.0], false).unwrap();
        let s = render_trace(&t, Format::Csv).unwrap();
        let lines: Vec<_> = s.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[2], "1,10,10");
        let back = parse_trace_csv(&s, false).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn report_round_trip() {
        let r = report_snr(&SnrLevels::experiment()).unwrap();
        let json = render_report(&r, Format::Json).unwrap();
        let back: SnrReport = parse_report(&json).unwrap();
        for (a, b) in [
            (r.snr_detected_in, back.snr_detected_in),
            (r.snr_inferred_in, back.snr_inferred_in),
            (r.snr_detected_out, back.snr_detected_out),
            (r.snr_inferred_out, back.snr_inferred_out),
            (r.t_s, back.t_s),
        ] {
            assert!((a - b).abs() <= 1e-10 * a.abs());
        }
        assert_eq!(json, render_report(&r, Format::Json).unwrap());
    }

    #[test]
    fn report_as_key_value_csv() {
        let r = report_snr(&SnrLevels::experiment()).unwrap();
        let s = render_report(&r, Format::Csv).unwrap();
        assert!(s.starts_with("key,value\n"));
        assert!(s.contains("t_s,0.899174545695"));
    }

    #[test]
    fn rows_render_in_field_order() {
        let t = crate::sweep::divergence_table(&crate::NetworkParams::experiment(), 9).unwrap();
        let s = render_rows(&t).unwrap();
        let mut lines = s.lines();
        assert_eq!(
            lines.next().unwrap(),
            "phase_rad,paper,coefficient,difference,relative"
        );
        assert_eq!(lines.count(), 9);
    }

    #[test]
    fn atomic_write_and_error_context() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_atomic(&path, "a\n").unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "a\n");
        let bad = dir.path().join("missing").join("out.csv");
        let err = write_atomic(&bad, "a\n").unwrap_err();
        assert!(err.to_string().contains("missing"));
        assert!(!bad.exists());
    }

    #[test]
    fn trace_csv_missing_column() {
        assert!(parse_trace_csv("phase_rad,foo\n1,2\n", false).is_err());
        assert!(parse_trace_csv("phase_rad,variance_linear\n1,x\n", false).is_err());
    }
}
