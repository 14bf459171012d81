//! Output documents and their JSON / CSV encodings.
//!
//! Floats are written with 17 significant digits in scientific notation so
//! that re-parsing a document reproduces every value bit for bit.

use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::Value;

use crate::CliError;

pub const SCHEMA_VERSION: &str = "1.0.0";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputDocument {
    pub schema_version: String,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
}

impl OutputDocument {
    pub fn new(command: &str, inputs: Value, results: Value) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            inputs,
            results,
        }
    }

    /// Error payload for a failed command.
    pub fn error(command: &str, inputs: Value, message: &str) -> Self {
        Self::new(command, inputs, serde_json::json!({ "error": message }))
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        let mut buf = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut buf, FullPrecision::default());
        self.serialize(&mut ser)?;
        Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
    }
}

/// `{:.16e}` for every float; everything else as serde_json's pretty printer.
#[derive(Default)]
struct FullPrecision<'a>(PrettyFormatter<'a>);

impl Formatter for FullPrecision<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{}", fmt_f64(value))
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// 17 significant digits, locale independent.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Float as a JSON value; non-finite values become `null`.
pub fn num(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

pub fn nums(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|&x| num(x)).collect())
}

/// Long-format table: one row per result entity.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<I, S>(&mut self, row: I)
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.rows.push(row.into_iter().map(Into::into).collect());
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv writes UTF-8"))
    }
}

/// Flattens a JSON value into `entity,key,value` rows, where `entity` is the
/// dotted path of the enclosing object or array.
pub fn flatten(value: &Value) -> Table {
    let mut t = Table::new(&["entity", "key", "value"]);
    fn walk(t: &mut Table, path: &str, v: &Value) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    if x.is_object() || x.is_array() {
                        walk(t, &join(path, k), x);
                    } else {
                        t.push([path.to_string(), k.clone(), scalar(x)]);
                    }
                }
            }
            Value::Array(items) => {
                for (i, x) in items.iter().enumerate() {
                    let key = i.to_string();
                    if x.is_object() || x.is_array() {
                        walk(t, &join(path, &key), x);
                    } else {
                        t.push([path.to_string(), key, scalar(x)]);
                    }
                }
            }
            other => t.push([path.to_string(), String::new(), scalar(other)]),
        }
    }
    fn join(a: &str, b: &str) -> String {
        if a.is_empty() {
            b.to_string()
        } else {
            format!("{a}.{b}")
        }
    }
    fn scalar(v: &Value) -> String {
        match v {
            Value::Null => String::new(),
            Value::Bool(b) => b.to_string(),
            Value::Number(n) if n.is_f64() => fmt_f64(n.as_f64().unwrap_or(f64::NAN)),
            Value::Number(n) => n.to_string(),
            Value::String(s) => s.clone(),
            _ => unreachable!("containers are walked"),
        }
    }
    walk(&mut t, "", value);
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn floats_round_trip_bit_identically() {
        let xs = [
            0.1,
            1.0 / 3.0,
            6.34e-7,
            -2.5,
            1e-300,
            0.0,
            std::f64::consts::PI,
        ];
        let doc = OutputDocument::new("t", json!({}), json!({ "xs": nums(&xs) }));
        let text = doc.to_json().unwrap();
        let back: Value = serde_json::from_str(&text).unwrap();
        for (i, &x) in xs.iter().enumerate() {
            assert_eq!(
                back["results"]["xs"][i].as_f64().unwrap().to_bits(),
                x.to_bits()
            );
        }
        assert!(text.contains("3.3333333333333331e-1"));
    }

    #[test]
    fn csv_flattening() {
        let t = flatten(&json!({ "a": 1, "b": { "c": [0.5, true] }, "s": "x,y" }));
        let csv = t.to_csv().unwrap();
        assert!(csv.starts_with("entity,key,value\n"));
        assert!(csv.contains(",a,1\n"));
        assert!(csv.contains("b.c,0,5.0000000000000000e-1\n"));
        assert!(csv.contains("b.c,1,true\n"));
        assert!(csv.contains(",s,\"x,y\"\n"));
    }
}
