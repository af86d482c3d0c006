//! Byte-stable rendering of results: JSON envelopes and plain CSV.
//!
//! Every float is rounded to 10 significant digits and printed in its
//! shortest round-trip form, so identical inputs give identical bytes.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::errata::ErrataLedger;
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::wheel::WheelParams;

pub const SCHEMA_VERSION: &str = "1";
pub const SIGNIFICANT_DIGITS: usize = 10;

/// Rounds to [`SIGNIFICANT_DIGITS`]; negative zero becomes zero.
pub fn round_significant(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Renders a float for output: plain decimal for moderate magnitudes,
/// exponent form otherwise; never locale dependent.
pub fn format_number(x: f64) -> String {
    let r = round_significant(x);
    if !r.is_finite() {
        return "null".into();
    }
    let mag = r.abs();
    if r == 0.0 || (1e-5..1e15).contains(&mag) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParamsEcho {
    pub m: usize,
    pub d: usize,
    pub a: f64,
    pub c: f64,
    pub n: usize,
}

impl From<&WheelParams> for ParamsEcho {
    fn from(p: &WheelParams) -> Self {
        ParamsEcho { m: p.m(), d: p.d(), a: p.a(), c: p.c(), n: p.n() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Envelope<'a, P: Serialize> {
    pub schema_version: &'static str,
    pub params: Option<ParamsEcho>,
    pub method: &'a str,
    pub payload: P,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub errata: Option<&'a ErrataLedger>,
}

impl<'a, P: Serialize> Envelope<'a, P> {
    pub fn new(params: Option<&WheelParams>, method: &'a str, payload: P) -> Self {
        Envelope { schema_version: SCHEMA_VERSION, params: params.map(ParamsEcho::from), method, payload, errata: None }
    }

    pub fn with_errata(mut self, ledger: &'a ErrataLedger) -> Self {
        self.errata = Some(ledger);
        self
    }

    pub fn to_json(&self) -> Result<String> {
        to_json(self)
    }
}

/// Serializes with two-space indentation, keys in declaration order, rounded
/// floats and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::Precondition(format!("serialization failed: {e}")))?;
    let mut out = String::new();
    write_value(&mut out, &v, 0);
    out.push('\n');
    Ok(out)
}

fn write_number(out: &mut String, n: &serde_json::Number) {
    if let Some(i) = n.as_i64() {
        write!(out, "{i}").unwrap();
    } else if let Some(u) = n.as_u64() {
        write!(out, "{u}").unwrap();
    } else {
        out.push_str(&format_number(n.as_f64().unwrap_or(f64::NAN)));
    }
}

fn indent(out: &mut String, level: usize) {
    out.push('\n');
    for _ in 0..level {
        out.push_str("  ");
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_value(out: &mut String, v: &Value, level: usize) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => write_number(out, n),
        Value::String(s) => out.push_str(&serde_json::to_string(s).expect("strings serialize")),
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        // Rows of numbers stay on one line.
        Value::Array(items) if items.iter().all(is_scalar) => {
            out.push('[');
            for (k, item) in items.iter().enumerate() {
                if k > 0 {
                    out.push_str(", ");
                }
                write_value(out, item, level);
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push('[');
            for (k, item) in items.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                indent(out, level + 1);
                write_value(out, item, level + 1);
            }
            indent(out, level);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push('{');
            for (k, (key, item)) in map.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                indent(out, level + 1);
                out.push_str(&serde_json::to_string(key).expect("keys serialize"));
                out.push_str(": ");
                write_value(out, item, level + 1);
            }
            indent(out, level);
            out.push('}');
        }
    }
}

/// Plain comma-separated rows with `\n` endings.
pub fn csv_rows<'a>(header: Option<&[String]>, rows: impl IntoIterator<Item = &'a [f64]>) -> String {
    let mut out = String::new();
    if let Some(h) = header {
        out.push_str(&h.join(","));
        out.push('\n');
    }
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&x| format_number(x)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// A square matrix as CSV; the optional header names vertices `1..=N`.
pub fn matrix_csv(m: &DenseMatrix, header: bool) -> String {
    let names: Vec<String> = (1..=m.cols()).map(|k| format!("v{k}")).collect();
    csv_rows(header.then_some(names.as_slice()), (0..m.rows()).map(|i| m.row(i)))
}

/// Matrix payload as nested rows.
pub fn matrix_payload(m: &DenseMatrix) -> Vec<Vec<f64>> {
    m.to_rows()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_significant_digits() {
        assert_eq!(format_number(2.0 / 3.0), "0.6666666667");
        assert_eq!(format_number(23.0 / 3.0), "7.666666667");
        assert_eq!(format_number(3.0), "3");
        assert_eq!(format_number(0.36), "0.36");
        assert_eq!(format_number(-0.0), "0");
        assert_eq!(format_number(-1.0 / 16.0), "-0.0625");
        assert_eq!(format_number(1.234e-17), "1.234e-17");
        assert_eq!(format_number(f64::NAN), "null");
    }

    #[test]
    fn json_layout() {
        let p = WheelParams::new(3, 1, 1.0, 1.0).unwrap();
        let env = Envelope::new(Some(&p), "pipeline", vec![vec![0.1875, -0.0625], vec![-0.0625, 0.1875]]);
        let text = env.to_json().unwrap();
        let parsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed["schema_version"], "1");
        assert_eq!(parsed["params"]["n"], 3);
        assert!(text.contains("[0.1875, -0.0625]"));
        assert!(text.ends_with("}\n"));
        assert!(!text.contains("errata"));
    }

    #[test]
    fn csv_layout() {
        let m = DenseMatrix::from_rows(&[vec![1.0, -0.5], vec![-0.5, 1.0]]).unwrap();
        assert_eq!(matrix_csv(&m, false), "1,-0.5\n-0.5,1\n");
        assert_eq!(matrix_csv(&m, true), "v1,v2\n1,-0.5\n-0.5,1\n");
    }
}
