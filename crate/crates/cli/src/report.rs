//! Machine-readable output: every command produces a [`Report`] that is
//! written either as CSV (header row, one row per result record) or as a
//! JSON object `{command, inputs, results, pass}`.

use std::io::Write;
use std::str::FromStr;

use ortho_bounds_core::BigReal;
use serde_json::{Map, Number, Value};

/// Significant digits of every emitted number.
pub const DIGITS: usize = 17;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub type Record = Map<String, Value>;

#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub inputs: Record,
    pub results: Vec<Record>,
    pub pass: bool,
}

/// A number in scientific notation with [`DIGITS`] significant digits;
/// non-finite values become `null`.
pub fn num(x: &BigReal) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Number::from_str(&x.to_sci(DIGITS)).map(Value::Number).unwrap_or(Value::Null)
}

pub fn opt_num(x: Option<&BigReal>) -> Value {
    x.map_or(Value::Null, num)
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut top = Map::new();
        top.insert("command".into(), Value::from(self.command));
        top.insert("inputs".into(), Value::Object(self.inputs.clone()));
        top.insert("results".into(), Value::Array(self.results.iter().cloned().map(Value::Object).collect()));
        top.insert("pass".into(), Value::Bool(self.pass));
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("JSON values serialise");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut header: Vec<&str> = Vec::new();
        for r in &self.results {
            for k in r.keys() {
                if !header.contains(&k.as_str()) {
                    header.push(k);
                }
            }
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&header).expect("in-memory write");
        for r in &self.results {
            w.write_record(header.iter().map(|k| r.get(*k).map_or(String::new(), csv_field)))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> std::io::Result<()> {
        match format {
            Format::Csv => out.write_all(self.to_csv().as_bytes()),
            Format::Json => out.write_all(self.to_json().as_bytes()),
        }
    }
}

fn csv_field(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        Value::Bool(b) => b.to_string(),
        other => other.to_string(),
    }
}
