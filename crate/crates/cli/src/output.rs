use serde_json::Value;

use crate::commands::CliError;
use crate::Format;

/// A command result that can be printed as JSON or as a CSV table.
pub struct Report {
    pub json: Value,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).map_err(|e| CliError::Output(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| CliError::Output(e.to_string());
                w.write_record(&self.columns).map_err(io)?;
                for row in &self.rows {
                    w.write_record(row).map_err(io)?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
            }
        }
    }
}

/// Shortest round-trip representation.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}
