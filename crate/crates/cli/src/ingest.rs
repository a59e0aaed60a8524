//! Reading series from CSV or JSON files.

use std::path::Path;

use clap::ValueEnum;
use frechet1d::{Error, Scalar, TimeSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    /// `.json` means JSON, anything else CSV.
    pub fn sniff(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Csv,
        }
    }
}

/// How numeric tokens become vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Numbers {
    Exact,
    /// Parsed as `f64`; the vertex is the exact value of that double.
    Float,
}

fn input(line: usize, message: impl Into<String>) -> Error {
    Error::Input { line, message: message.into() }
}

fn number(token: &str, numbers: Numbers, line: usize) -> Result<Scalar, Error> {
    let bad = || input(line, format!("not a number: {token:?}"));
    match numbers {
        Numbers::Exact => token.parse().map_err(|_| bad()),
        Numbers::Float => token.parse::<f64>().ok().and_then(Scalar::from_f64).ok_or_else(bad),
    }
}

fn finish(values: Vec<Scalar>, last_line: usize) -> Result<TimeSeries, Error> {
    match values.len() {
        0 => Err(input(last_line, "no values")),
        1 => Err(input(last_line, "a series needs at least 2 values, found 1")),
        _ => TimeSeries::new(values),
    }
}

/// One value per line; `#` starts a comment, blank lines are skipped.
pub fn parse_csv(text: &str, numbers: Numbers) -> Result<TimeSeries, Error> {
    let mut values = Vec::new();
    let mut last = 0;
    for (k, raw) in text.lines().enumerate() {
        last = k + 1;
        let token = raw.split('#').next().unwrap_or("").trim();
        if !token.is_empty() {
            values.push(number(token, numbers, k + 1)?);
        }
    }
    finish(values, last)
}

/// A flat array of numbers.
pub fn parse_json(text: &str, numbers: Numbers) -> Result<TimeSeries, Error> {
    let raw: Vec<serde_json::Number> =
        serde_json::from_str(text).map_err(|e| input(e.line(), e.to_string()))?;
    let lines = text.lines().count().max(1);
    let values = raw
        .iter()
        .map(|n| number(&n.to_string(), numbers, lines))
        .collect::<Result<Vec<_>, _>>()?;
    finish(values, lines)
}

pub fn ingest(path: &Path, format: Option<Format>, numbers: Numbers) -> Result<TimeSeries, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| input(0, e.to_string()))?;
    match format.unwrap_or_else(|| Format::sniff(path)) {
        Format::Csv => parse_csv(&text, numbers),
        Format::Json => parse_json(&text, numbers),
    }
}
