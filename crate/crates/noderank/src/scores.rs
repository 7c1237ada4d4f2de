//! Per-node score vectors and their TSV serialization.

use std::io::{BufRead, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{NodeId, SparseGraph};

/// What a [`ScoreVector`] measures.
///
/// Pagerank-family kinds and `Fatigue` are probability vectors (entries >= 0
/// summing to 1); `Authority` and `Hub` have unit Euclidean norm;
/// `Frequency` is a probability vector of empirical visit shares; the rest
/// are raw counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScoreKind {
    Pagerank,
    FatiguedPagerank,
    ReversePagerank,
    Authority,
    Hub,
    Indegree,
    Fatigue,
    Visits,
    Frequency,
}

impl ScoreKind {
    pub fn name(self) -> &'static str {
        match self {
            ScoreKind::Pagerank => "pagerank",
            ScoreKind::FatiguedPagerank => "fatigued_pagerank",
            ScoreKind::ReversePagerank => "reverse_pagerank",
            ScoreKind::Authority => "authority",
            ScoreKind::Hub => "hub",
            ScoreKind::Indegree => "indegree",
            ScoreKind::Fatigue => "fatigue",
            ScoreKind::Visits => "visits",
            ScoreKind::Frequency => "frequency",
        }
    }
}

/// Finite per-node scores aligned to [`NodeId`] order.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreVector {
    kind: ScoreKind,
    values: Vec<f64>,
}

impl ScoreVector {
    pub fn new(kind: ScoreKind, values: Vec<f64>) -> Self {
        debug_assert!(values.iter().all(|v| v.is_finite()));
        ScoreVector { kind, values }
    }

    pub fn kind(&self) -> ScoreKind {
        self.kind
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, id: NodeId) -> f64 {
        self.values[id.index()]
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Node ids sorted by descending score, ties broken by ascending NodeId.
    pub fn ranked_order(&self) -> Vec<NodeId> {
        let mut ids: Vec<u32> = (0..self.values.len() as u32).collect();
        ids.sort_by(|&a, &b| {
            self.values[b as usize]
                .total_cmp(&self.values[a as usize])
                .then(a.cmp(&b))
        });
        ids.into_iter().map(NodeId::new).collect()
    }
}

/// Format with 12 significant digits, `%.12g`-style: positional notation in
/// a moderate exponent range, scientific outside it, trailing zeros trimmed.
/// String output is a pure function of the value, so repeated serialization
/// is byte-identical.
pub fn format_score(x: f64) -> String {
    format_sig(x, 12)
}

fn format_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let formatted = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = formatted.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("numeric exponent");
    let sign = if mantissa.starts_with('-') { "-" } else { "" };
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();

    if exp < -4 || exp >= sig as i32 {
        let trimmed = digits.trim_end_matches('0');
        let mant = if trimmed.len() <= 1 {
            trimmed.to_string()
        } else {
            format!("{}.{}", &trimmed[..1], &trimmed[1..])
        };
        format!("{sign}{mant}e{exp}")
    } else if exp >= 0 {
        let split = exp as usize + 1;
        let frac = digits[split..].trim_end_matches('0');
        if frac.is_empty() {
            format!("{sign}{}", &digits[..split])
        } else {
            format!("{sign}{}.{frac}", &digits[..split])
        }
    } else {
        let zeros = "0".repeat((-exp - 1) as usize);
        let frac = digits.trim_end_matches('0');
        format!("{sign}0.{zeros}{frac}")
    }
}

/// Write `label<TAB>score` lines, sorted by descending score with ties
/// broken by ascending NodeId.
pub fn write_scores_tsv(
    w: &mut (impl Write + ?Sized),
    graph: &SparseGraph,
    scores: &ScoreVector,
) -> std::io::Result<()> {
    for id in scores.ranked_order() {
        writeln!(w, "{}\t{}", graph.label(id), format_score(scores.get(id)))?;
    }
    Ok(())
}

/// Read a `label<TAB>score` file back as (label, score) pairs in file order.
pub fn read_scores_tsv(path: impl AsRef<Path>) -> Result<Vec<(String, f64)>> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let reader = std::io::BufReader::new(file);
    let mut out = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let line = line.trim_end_matches(['\r', '\n']);
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (label, value) = line.split_once('\t').ok_or_else(|| Error::Malformed {
            path: path.into(),
            line: lineno + 1,
            message: "expected `label<TAB>score`".into(),
        })?;
        let value: f64 = value.trim().parse().map_err(|_| Error::Malformed {
            path: path.into(),
            line: lineno + 1,
            message: format!("unparseable score {value:?}"),
        })?;
        out.push((label.to_string(), value));
    }
    Ok(out)
}
