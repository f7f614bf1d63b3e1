//! File formats: the tab-separated weighted edge list (WEL) and event-pair
//! CSV ingestion that aggregates raw (source, destination) records into a
//! weighted simple graph, Enron style.
//!
//! WEL, bit-exact: UTF-8 text, one `source<TAB>target<TAB>weight` per line,
//! `#` lines and blank lines ignored, no header, weight a positive decimal
//! literal.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::graph::{build_graph, Graph};
use crate::{Error, Result};

/// One weighted edge by label.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeRecord {
    pub source: String,
    pub target: String,
    pub weight: f64,
}

/// Raw weightless event records, one per communication event.
#[derive(Debug, Clone, Default)]
pub struct EventPairLog {
    pub pairs: Vec<(String, String)>,
}

impl EventPairLog {
    pub fn push(&mut self, source: impl Into<String>, target: impl Into<String>) {
        self.pairs.push((source.into(), target.into()));
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Parses WEL text. Line numbers in errors are 1-based and count every
/// line, comments and blanks included.
pub fn parse_wel(text: &str, path: &Path) -> Result<Vec<EdgeRecord>> {
    let mut records = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim_end_matches('\r');
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split('\t');
        let (source, target, weight) = match (fields.next(), fields.next(), fields.next(), fields.next()) {
            (Some(s), Some(t), Some(w), None) => (s, t, w),
            _ => {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line,
                    message: format!("expected source<TAB>target<TAB>weight, got {trimmed:?}"),
                })
            }
        };
        if source.is_empty() || target.is_empty() {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                line,
                message: "empty vertex label".into(),
            });
        }
        let weight: f64 = weight.parse().map_err(|_| Error::Parse {
            path: path.to_path_buf(),
            line,
            message: format!("bad weight {weight:?}"),
        })?;
        if !weight.is_finite() || weight <= 0.0 {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                line,
                message: format!("weight must be finite and > 0, got {weight}"),
            });
        }
        records.push(EdgeRecord {
            source: source.to_string(),
            target: target.to_string(),
            weight,
        });
    }
    Ok(records)
}

/// Loads a WEL file into a graph, aggregating duplicate edges by weight sum.
pub fn load_edge_list(path: impl AsRef<Path>, undirected: bool) -> Result<Graph> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let records = parse_wel(&text, path)?;
    let triples: Vec<(&str, &str, f64)> = records
        .iter()
        .map(|r| (r.source.as_str(), r.target.as_str(), r.weight))
        .collect();
    build_graph(&triples, undirected)
}

/// Counts events per pair into weighted simple edges. Undirected mode
/// merges (a,b) with (b,a) under (min,max) canonical ordering; self-pairs
/// stay as self-loops. Output is canonically sorted.
pub fn aggregate_pairs(log: &EventPairLog, undirected: bool) -> Vec<EdgeRecord> {
    let mut counts: std::collections::HashMap<(String, String), u64> =
        std::collections::HashMap::new();
    for (a, b) in &log.pairs {
        let key = if undirected && b < a {
            (b.clone(), a.clone())
        } else {
            (a.clone(), b.clone())
        };
        *counts.entry(key).or_insert(0) += 1;
    }
    let mut edges: Vec<EdgeRecord> = counts
        .into_iter()
        .map(|((source, target), count)| EdgeRecord {
            source,
            target,
            weight: count as f64,
        })
        .collect();
    edges.sort_by(|a, b| (&a.source, &a.target).cmp(&(&b.source, &b.target)));
    edges
}

/// Writes WEL, canonically sorted. Weights print in shortest exact decimal
/// form (`3`, `2.5`), so a written file loads back to an identical graph.
pub fn write_edge_list(edges: &[EdgeRecord], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut sorted: Vec<&EdgeRecord> = edges.iter().collect();
    sorted.sort_by(|a, b| (&a.source, &a.target).cmp(&(&b.source, &b.target)));
    let mut out = String::new();
    for e in sorted {
        out.push_str(&e.source);
        out.push('\t');
        out.push_str(&e.target);
        out.push('\t');
        out.push_str(&format_weight(e.weight));
        out.push('\n');
    }
    let mut file = fs::File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    file.write_all(out.as_bytes()).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Shortest decimal that round-trips: integral weights drop the point.
pub fn format_weight(w: f64) -> String {
    format!("{w}")
}

/// Reads a pair-log CSV with configurable 0-based source/target columns,
/// optionally skipping a header row.
pub fn read_pair_log_csv(
    path: impl AsRef<Path>,
    src_col: usize,
    dst_col: usize,
    has_header: bool,
) -> Result<EventPairLog> {
    let path = path.as_ref();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(has_header)
        .flexible(true)
        .from_path(path)
        .map_err(|e| csv_error(path, e))?;
    let mut log = EventPairLog::default();
    for record in reader.records() {
        let record = record.map_err(|e| csv_error(path, e))?;
        let line = record
            .position()
            .map(|p| p.line() as usize)
            .unwrap_or(0);
        let field = |col: usize| -> Result<String> {
            record
                .get(col)
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .ok_or_else(|| Error::Parse {
                    path: path.to_path_buf(),
                    line,
                    message: format!("missing or empty column {col}"),
                })
        };
        log.push(field(src_col)?, field(dst_col)?);
    }
    Ok(log)
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    let line = match e.position() {
        Some(p) => p.line() as usize,
        None => 0,
    };
    Error::Parse {
        path: path.to_path_buf(),
        line,
        message: e.to_string(),
    }
}
