//! Tabular output records and their CSV and JSON encodings.

use std::io::Write;

use serde_json::{json, Map, Value};

use crate::error::CliError;

pub const SCHEMA_VERSION: &str = "1";

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Bool(bool),
    Text(String),
}

impl Cell {
    /// CSV text; reals carry 17 significant digits.
    pub fn to_csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => format_real(*v),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(v) => v.clone(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Real(v) if v.is_finite() => json!(v),
            Cell::Real(v) => json!(v.to_string()),
            Cell::Bool(v) => json!(v),
            Cell::Text(v) => json!(v),
        }
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i8> for Cell {
    fn from(v: i8) -> Self {
        Cell::Int(i64::from(v))
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

/// `d.dddddddddddddddde±x`: 17 significant digits, exact on re-parse.
pub fn format_real(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

/// A command's result: the parameters that produced it and its table.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub command: String,
    pub parameters: Map<String, Value>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl OutputRecord {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Self {
            command: command.to_owned(),
            parameters: Map::new(),
            columns: columns.iter().map(|c| (*c).to_owned()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.to_owned(), value.into());
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.clone(), v.to_json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "parameters": self.parameters,
            "rows": rows,
        })
    }

    /// `#` comment lines with the schema version, command and parameters as
    /// JSON, then the header row and the data rows.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<(), CliError> {
        writeln!(out, "# schema_version: {SCHEMA_VERSION}")?;
        writeln!(out, "# command: {}", self.command)?;
        writeln!(
            out,
            "# parameters: {}",
            Value::Object(self.parameters.clone())
        )?;
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(&self.columns)?;
        for row in &self.rows {
            writer.write_record(row.iter().map(Cell::to_csv))?;
        }
        writer.flush()?;
        Ok(())
    }

    pub fn write<W: Write>(&self, format: Format, mut out: W) -> Result<(), CliError> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => {
                serde_json::to_writer_pretty(&mut out, &self.to_json())?;
                writeln!(out)?;
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// A CSV emission read back as text.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub command: String,
    pub parameters: Map<String, Value>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|c| c == name)
    }
}

pub fn read_csv(text: &str) -> Result<CsvTable, CliError> {
    let mut command = String::new();
    let mut parameters = Map::new();
    for line in text.lines().take_while(|l| l.starts_with('#')) {
        if let Some(v) = line.strip_prefix("# command: ") {
            command = v.to_owned();
        } else if let Some(v) = line.strip_prefix("# parameters: ") {
            if let Value::Object(map) = serde_json::from_str(v)? {
                parameters = map;
            }
        }
    }
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let header = reader.headers()?.iter().map(str::to_owned).collect();
    let rows = reader
        .records()
        .map(|r| r.map(|rec| rec.iter().map(str::to_owned).collect()))
        .collect::<Result<_, _>>()?;
    Ok(CsvTable {
        command,
        parameters,
        header,
        rows,
    })
}

/// Machine-readable error record for JSON output.
pub fn error_json(command: &str, error: &CliError) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "error": { "kind": error.kind(), "message": error.to_string() },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_round_trip() {
        for v in [
            0.1,
            -1.0 / 3.0,
            1e-300,
            6.02214076e23,
            f64::MIN_POSITIVE,
            0.0,
            -0.0,
        ] {
            let text = format_real(v);
            assert_eq!(
                text.parse::<f64>().unwrap().to_bits(),
                v.to_bits(),
                "{text}"
            );
        }
    }

    #[test]
    fn csv_has_header() {
        let mut rec = OutputRecord::new("demo", &["n", "phi"]);
        let mut buf = Vec::new();
        rec.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text.lines()
                .filter(|l| !l.starts_with('#'))
                .collect::<Vec<_>>(),
            ["n,phi"]
        );
        assert!(text.starts_with("# schema_version: 1\n# command: demo\n# parameters: {}\n"));
        rec.push(vec![Cell::from(3u64), Cell::from(0.5)]);
        let mut buf = Vec::new();
        rec.write_csv(&mut buf).unwrap();
        assert!(String::from_utf8(buf)
            .unwrap()
            .ends_with("n,phi\n3,5.0000000000000000e-1\n"));
    }

    #[test]
    fn json_layout() {
        let mut rec = OutputRecord::new("demo", &["n", "phi"]);
        rec.param("gamma", 1.5);
        rec.push(vec![Cell::from(1u64), Cell::from(0.25)]);
        let v = rec.to_json();
        assert_eq!(v["schema_version"], "1");
        assert_eq!(v["parameters"]["gamma"], 1.5);
        assert_eq!(v["rows"][0]["phi"], 0.25);
        let keys: Vec<&String> = v["rows"][0].as_object().unwrap().keys().collect();
        assert_eq!(keys, ["n", "phi"]);
    }
}
