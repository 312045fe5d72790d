//! Schema checks for everything in [`crate::output`]. A JSON document is
//! valid when it parses into its typed form and serializes back to the
//! same value; a CSV file when its metadata, header and every row parse.

use std::path::Path;

use anyhow::{anyhow, bail, ensure, Context, Result};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use crate::output::{Document, Envelope, FORMAT_VERSION, SCAN_HEADER, TOOL};

const INTERVAL_COLUMNS: [&str; 5] = ["k", "y_k", "length", "prime_count", "expected"];

fn typed<T: DeserializeOwned + Serialize>(value: &Value) -> Result<Envelope<T>> {
    let env: Envelope<T> = serde_json::from_value(value.clone())?;
    let back = serde_json::to_value(&env)?;
    ensure!(&back == value, "document does not round-trip through its schema");
    Ok(env)
}

pub fn validate_json(text: &str) -> Result<Document> {
    let value: Value = serde_json::from_str(text).context("not JSON")?;
    let field = |k: &str| value.get(k).ok_or_else(|| anyhow!("missing field {k:?}"));
    ensure!(field("tool")? == TOOL, "not a {TOOL} document");
    ensure!(
        field("format_version")? == FORMAT_VERSION,
        "format version {} is not {FORMAT_VERSION}",
        field("format_version")?
    );
    let command = field("command")?.as_str().ok_or_else(|| anyhow!("command is not a string"))?;
    Ok(match command {
        "scan" => Document::Scan(typed(&value)?),
        "delta" => Document::Delta(typed(&value)?),
        "density" => Document::Density(typed(&value)?),
        "intervals" => Document::Intervals(typed(&value)?),
        "explicit" => Document::Explicit(typed(&value)?),
        "symdiff" => Document::Symdiff(typed(&value)?),
        other => bail!("unknown command {other:?}"),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CsvKind {
    Scan,
    Intervals,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvReport {
    pub kind: CsvKind,
    pub command: String,
    pub rows: usize,
}

fn number(s: &str) -> bool {
    matches!(s, "inf" | "-inf") || s.parse::<f64>().is_ok_and(|x| x.is_finite())
}

pub fn validate_csv(text: &str) -> Result<CsvReport> {
    let mut lines = text.lines().enumerate().peekable();
    let (_, first) = lines.next().ok_or_else(|| anyhow!("empty file"))?;
    let meta: Vec<&str> = first.split_whitespace().collect();
    ensure!(
        meta.len() == 6 && meta[0] == "#" && meta[1] == TOOL && meta[3] == "format",
        "first line is not {TOOL} metadata: {first:?}"
    );
    ensure!(meta[4] == FORMAT_VERSION.to_string(), "format version {} is not {FORMAT_VERSION}", meta[4]);
    let command = meta[5].to_string();
    while lines.peek().is_some_and(|(_, l)| l.starts_with('#')) {
        let (i, l) = lines.next().unwrap();
        if let Some(cfg) = l.strip_prefix("# config ") {
            serde_json::from_str::<Value>(cfg).with_context(|| format!("line {}: config is not JSON", i + 1))?;
        }
    }
    let (_, header) = lines.next().ok_or_else(|| anyhow!("missing header"))?;
    let columns: Vec<&str> = header.split(',').collect();
    let kind = if header == SCAN_HEADER {
        CsvKind::Scan
    } else if columns.len() > 5
        && columns[..5] == INTERVAL_COLUMNS
        && columns[5..].iter().all(|c| c.strip_prefix("good_eps_").is_some_and(number))
    {
        CsvKind::Intervals
    } else {
        bail!("unknown header {header:?}");
    };
    let mut rows = 0;
    for (i, line) in lines {
        let cells: Vec<&str> = line.split(',').collect();
        ensure!(cells.len() == columns.len(), "line {}: {} cells, expected {}", i + 1, cells.len(), columns.len());
        let ok = match kind {
            CsvKind::Scan => {
                number(cells[0])
                    && cells[1..4].iter().all(|c| c.is_empty() || number(c))
                    && cells[4..].iter().all(|c| matches!(*c, "" | "0" | "1" | "?"))
                    && (1..4).all(|j| cells[j].is_empty() == cells[j + 3].is_empty())
            }
            CsvKind::Intervals => {
                cells[0].parse::<u64>().is_ok()
                    && number(cells[1])
                    && number(cells[2])
                    && cells[3].parse::<u64>().is_ok()
                    && number(cells[4])
                    && cells[5..].iter().all(|c| matches!(*c, "0" | "1"))
            }
        };
        ensure!(ok, "line {}: malformed row {line:?}", i + 1);
        rows += 1;
    }
    Ok(CsvReport { kind, command, rows })
}

/// Validate by content: JSON if it starts with `{`, CSV otherwise.
pub fn validate_file(path: &Path) -> Result<String> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if text.trim_start().starts_with('{') {
        let doc = validate_json(&text)?;
        let name = match doc {
            Document::Scan(_) => "scan",
            Document::Delta(_) => "delta",
            Document::Density(_) => "density",
            Document::Intervals(_) => "intervals",
            Document::Explicit(_) => "explicit",
            Document::Symdiff(_) => "symdiff",
        };
        Ok(format!("{name} JSON"))
    } else {
        let r = validate_csv(&text)?;
        Ok(format!("{} CSV, {} rows", r.command, r.rows))
    }
}
