//! Report assembly: JSON body, CSV summary and the stdout table.

use std::fs;
use std::path::Path;

use clspace::ExtReal;
use serde_json::{json, Map, Value};

use crate::error::CliError;

/// JSON number for finite values, `"inf"`, `"-inf"` or `"nan"` otherwise.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x.is_nan() {
        json!("nan")
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

pub fn ext(x: ExtReal) -> Value {
    num(x.to_f64())
}

pub fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

/// `{}` formatting with the same spelling of infinities as [`num`].
pub fn cell(x: f64) -> String {
    if x.is_finite() {
        format!("{x}")
    } else {
        num(x).as_str().unwrap_or("nan").to_string()
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub command: String,
    pub body: Map<String, Value>,
    pub csv_header: Vec<String>,
    pub csv_rows: Vec<Vec<String>>,
    /// `(key, value)` lines for stdout.
    pub table: Vec<(String, String)>,
    /// Exit status with its reason when it is not 0.
    pub status: Option<(i32, String)>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        let mut body = Map::new();
        body.insert("command".into(), json!(command));
        Report { command: command.to_string(), body, ..Report::default() }
    }

    pub fn set(&mut self, key: &str, v: Value) {
        self.body.insert(key.to_string(), v);
    }

    pub fn line(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.table.push((key.into(), value.into()));
    }

    /// Keeps the most severe status.
    pub fn fail_with(&mut self, err: CliError) {
        let code = err.exit_code();
        if self.status.as_ref().is_none_or(|s| code > s.0) {
            self.status = Some((code, err.to_string()));
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.status.as_ref().map_or(0, |s| s.0)
    }

    pub fn json_text(&self) -> String {
        let mut body = self.body.clone();
        body.insert(
            "status".into(),
            match &self.status {
                None => json!({"exit_code": 0}),
                Some((c, m)) => json!({"exit_code": c, "reason": m}),
            },
        );
        let mut s = serde_json::to_string_pretty(&Value::Object(body)).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn csv_text(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.csv_header).map_err(csv_err)?;
        for r in &self.csv_rows {
            w.write_record(r).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }

    pub fn table_text(&self) -> String {
        let width = self.table.iter().map(|r| r.0.chars().count()).max().unwrap_or(0);
        let mut s = String::new();
        for (k, v) in &self.table {
            let pad = width - k.chars().count();
            s.push_str(&format!("{k}{}  {v}\n", " ".repeat(pad)));
        }
        if let Some((c, m)) = &self.status {
            s.push_str(&format!("exit {c}: {m}\n"));
        }
        s
    }

    /// Writes `report.json` and `summary.csv` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<(), CliError> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("report.json"), self.json_text())?;
        fs::write(dir.join("summary.csv"), self.csv_text()?)?;
        Ok(())
    }
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinities_are_strings() {
        assert_eq!(num(f64::INFINITY), json!("inf"));
        assert_eq!(num(1.5), json!(1.5));
        assert_eq!(cell(f64::INFINITY), "inf");
    }

    #[test]
    fn status_keeps_the_worst_code() {
        let mut r = Report::new("x");
        r.fail_with(CliError::NotFound("a".into()));
        r.fail_with(CliError::Precondition("b".into()));
        assert_eq!(r.exit_code(), 3);
        assert!(r.json_text().contains("\"exit_code\": 3"));
    }
}
