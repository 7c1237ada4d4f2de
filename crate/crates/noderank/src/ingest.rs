//! Readers for external graph and annotation formats.
//!
//! All line-oriented parsers stream with bounded memory and report the
//! offending line number on error. Ingestion is deterministic: the same
//! bytes produce the same graph and the same NodeId assignment.

use std::io::{BufRead, BufReader};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{GraphBuilder, SparseGraph};
use crate::scores::{ScoreKind, ScoreVector};

mod gml;

pub use gml::{read_gml, read_gml_from, write_gml, write_gml_to};

/// One row of a clickstream dump: `prev  curr  type  count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClickstreamRecord {
    pub prev_label: String,
    pub curr_label: String,
    pub link_type: String,
    pub count: u64,
}

/// Outcome counters for [`join_clickstream`]; non-matching records are
/// reported here rather than treated as errors.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct JoinStats {
    /// Records whose (prev, curr) pair matched an edge.
    pub matched: u64,
    /// Records skipped because their link type failed the filter.
    pub skipped_type: u64,
    /// Records mentioning a label absent from the graph.
    pub skipped_unknown_label: u64,
    /// Records whose labels exist but with no such edge.
    pub skipped_missing_edge: u64,
}

impl JoinStats {
    pub fn skipped(&self) -> u64 {
        self.skipped_type + self.skipped_unknown_label + self.skipped_missing_edge
    }
}

/// Read a 2- or 3-column edge TSV (`source<TAB>target[<TAB>weight]`).
/// Lines starting with `#` and blank lines are ignored.
pub fn read_edge_tsv(path: impl AsRef<Path>) -> Result<SparseGraph> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_edge_tsv_from(BufReader::new(file), path)
}

/// As [`read_edge_tsv`], from an arbitrary reader; `origin` labels errors.
pub fn read_edge_tsv_from(reader: impl BufRead, origin: &Path) -> Result<SparseGraph> {
    let mut builder = GraphBuilder::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(origin, e))?;
        let line = line.trim_end_matches(['\r', '\n']);
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let malformed = |message: String| Error::Malformed {
            path: origin.into(),
            line: lineno + 1,
            message,
        };
        let fields: Vec<&str> = line.split('\t').collect();
        let (source, target, weight) = match fields.as_slice() {
            [s, t] => (*s, *t, None),
            [s, t, w] => {
                let w: f64 = w
                    .trim()
                    .parse()
                    .map_err(|_| malformed(format!("unparseable weight {w:?}")))?;
                (*s, *t, Some(w))
            }
            other => {
                return Err(malformed(format!(
                    "expected 2 or 3 tab-separated columns, found {}",
                    other.len()
                )))
            }
        };
        builder
            .add_edge(source, target, weight)
            .map_err(|e| malformed(e.to_string()))?;
    }
    Ok(builder.build())
}

/// Stream a 4-column clickstream TSV (`prev curr type count`). Files ending
/// in `.gz` are decompressed on the fly; published clickstream dumps ship
/// gzipped.
pub fn read_clickstream_tsv(
    path: impl AsRef<Path>,
) -> Result<Box<dyn Iterator<Item = Result<ClickstreamRecord>>>> {
    let path = path.as_ref().to_path_buf();
    let file = std::fs::File::open(&path).map_err(|e| Error::io(&path, e))?;
    if path.to_string_lossy().ends_with(".gz") {
        let reader = BufReader::new(flate2::read::MultiGzDecoder::new(file));
        Ok(Box::new(clickstream_records(reader, path)))
    } else {
        Ok(Box::new(clickstream_records(BufReader::new(file), path)))
    }
}

fn clickstream_records(
    reader: impl BufRead,
    origin: std::path::PathBuf,
) -> impl Iterator<Item = Result<ClickstreamRecord>> {
    reader
        .lines()
        .enumerate()
        .filter_map(move |(lineno, line)| {
            let line = match line {
                Ok(l) => l,
                Err(e) => return Some(Err(Error::io(&origin, e))),
            };
            let line = line.trim_end_matches(['\r', '\n']);
            if line.is_empty() || line.starts_with('#') {
                return None;
            }
            let malformed = |message: String| Error::Malformed {
                path: origin.clone(),
                line: lineno + 1,
                message,
            };
            let fields: Vec<&str> = line.split('\t').collect();
            let [prev, curr, link_type, count] = fields.as_slice() else {
                return Some(Err(malformed(format!(
                    "expected 4 tab-separated columns, found {}",
                    fields.len()
                ))));
            };
            let count: u64 = match count.trim().parse() {
                Ok(c) => c,
                Err(_) => return Some(Err(malformed(format!("unparseable count {count:?}")))),
            };
            Some(Ok(ClickstreamRecord {
                prev_label: prev.to_string(),
                curr_label: curr.to_string(),
                link_type: link_type.to_string(),
                count,
            }))
        })
}

/// Set edge weights from clickstream counts.
///
/// Only records whose link type equals `link_type_filter` (pass `None` for
/// the conventional `"link"`) contribute; repeated records for one edge are
/// summed. Every edge the records do not mention gets weight 0 — absent
/// information means zero observed transitions. The graph's edge set is
/// never modified.
pub fn join_clickstream(
    graph: &SparseGraph,
    records: impl IntoIterator<Item = Result<ClickstreamRecord>>,
    link_type_filter: Option<&str>,
) -> Result<(SparseGraph, JoinStats)> {
    let filter = link_type_filter.unwrap_or("link");
    let mut weights = vec![0.0f64; graph.num_edges()];
    let mut stats = JoinStats::default();
    for record in records {
        let record = record?;
        if record.link_type != filter {
            stats.skipped_type += 1;
            continue;
        }
        let (Some(prev), Some(curr)) = (
            graph.node_id(&record.prev_label),
            graph.node_id(&record.curr_label),
        ) else {
            stats.skipped_unknown_label += 1;
            continue;
        };
        match graph.out_neighbors(prev).binary_search(&curr) {
            Ok(pos) => {
                weights[graph.out_edge_range(prev).start + pos] += record.count as f64;
                stats.matched += 1;
            }
            Err(_) => stats.skipped_missing_edge += 1,
        }
    }
    Ok((graph.with_weights(weights), stats))
}

/// Per-node sum of weights over incoming edges. On an unweighted graph
/// every entry is 0, matching the convention that absent information means
/// zero transitions.
pub fn visits(graph: &SparseGraph) -> ScoreVector {
    let mut sums = vec![0.0f64; graph.num_nodes()];
    for u in graph.node_ids() {
        if let Some(weights) = graph.out_weights(u) {
            for (&target, &w) in graph.out_neighbors(u).iter().zip(weights) {
                sums[target.index()] += w;
            }
        }
    }
    ScoreVector::new(ScoreKind::Visits, sums)
}
