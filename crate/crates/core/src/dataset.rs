//! Line-delimited dataset records: one JSON object per line.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("line {line}: {source}")]
    Malformed {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("line {line}: query has {query} nodes but target only {target}")]
    QueryTooLarge {
        line: usize,
        query: usize,
        target: usize,
    },
    #[error("truncated file: last line has no terminating newline")]
    Partial,
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetRecord {
    pub target: Graph,
    pub query: Graph,
    /// `true` when the query embeds into the target.
    pub label: bool,
    pub meta: RecordMeta,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordMeta {
    pub generator: String,
    pub seed: u64,
    #[serde(default)]
    pub dropped_edges: usize,
    #[serde(default)]
    pub inserted_edges: usize,
    /// Generation attempts consumed before the label was verified.
    #[serde(default)]
    pub attempts: usize,
}

pub fn write_records<W: Write>(mut out: W, records: &[DatasetRecord]) -> io::Result<()> {
    for record in records {
        serde_json::to_writer(&mut out, record)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

pub fn write_dataset(path: impl AsRef<Path>, records: &[DatasetRecord]) -> io::Result<()> {
    write_records(BufWriter::new(File::create(path)?), records)
}

/// Parses records from any reader. Blank lines are skipped; a final line
/// without a newline is treated as a partial write.
pub fn read_records<R: Read>(input: R) -> Result<Vec<DatasetRecord>, DatasetError> {
    let mut reader = BufReader::new(input);
    let mut records = Vec::new();
    let mut buf = String::new();
    let mut line = 0;
    loop {
        buf.clear();
        if reader.read_line(&mut buf)? == 0 {
            break;
        }
        line += 1;
        if !buf.ends_with('\n') {
            // serde error first: a truncated record is reported as malformed
            if !buf.trim().is_empty() {
                serde_json::from_str::<DatasetRecord>(buf.trim())
                    .map_err(|source| DatasetError::Malformed { line, source })?;
            }
            return Err(DatasetError::Partial);
        }
        let text = buf.trim();
        if text.is_empty() {
            continue;
        }
        let record: DatasetRecord = serde_json::from_str(text)
            .map_err(|source| DatasetError::Malformed { line, source })?;
        if record.query.node_count() > record.target.node_count() {
            return Err(DatasetError::QueryTooLarge {
                line,
                query: record.query.node_count(),
                target: record.target.node_count(),
            });
        }
        records.push(record);
    }
    Ok(records)
}

pub fn read_dataset(path: impl AsRef<Path>) -> Result<Vec<DatasetRecord>, DatasetError> {
    read_records(File::open(path)?)
}
