//! Query-independent reranking of retrieval runs.
//!
//! A static graph score is converted into a bounded relevance weight by one
//! of three monotone transforms (`sigm`, `log`, `satu`) and added to the
//! baseline score of each run entry; entries are then re-sorted per topic.

use std::collections::HashMap;

use crate::error::{Error, Result};

mod eval;
mod run_file;

pub use eval::{evaluate_run, write_effectiveness_csv, EffectivenessReport, TopicEffectiveness, GMAP_FLOOR};
pub use run_file::{Qrels, RunEntry, RunFile};

/// The transform menu.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TransformKind {
    /// `w * s^a / (k^a + s^a)` — bounded by `w`.
    #[default]
    Sigm,
    /// `w * ln(1 + s)` — unbounded, slowly growing.
    Log,
    /// `w * s / (k + s)` — bounded by `w`.
    Satu,
}

impl TransformKind {
    pub fn name(self) -> &'static str {
        match self {
            TransformKind::Sigm => "sigm",
            TransformKind::Log => "log",
            TransformKind::Satu => "satu",
        }
    }
}

/// Transform parameters. The defaults (`w = 1.8`, `k = 1`, `a = 0.6`) are
/// the best-MAP configuration reported for the sigm transform. `k` is
/// unused by `log`; `a` only applies to `sigm`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformParams {
    pub kind: TransformKind,
    pub w: f64,
    pub k: f64,
    pub a: f64,
}

impl Default for TransformParams {
    fn default() -> Self {
        TransformParams {
            kind: TransformKind::Sigm,
            w: 1.8,
            k: 1.0,
            a: 0.6,
        }
    }
}

impl TransformParams {
    pub fn with_kind(kind: TransformKind) -> Self {
        TransformParams {
            kind,
            ..TransformParams::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("w", self.w), ("k", self.k), ("a", self.a)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!(
                    "transform parameter {name} must satisfy {name} > 0, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// Convert a non-negative static score into a relevance weight.
///
/// Monotone non-decreasing in `s`; `sigm` and `satu` are bounded above by
/// `w`. Negative input is rejected.
pub fn transform(s: f64, p: &TransformParams) -> Result<f64> {
    p.validate()?;
    if !(s >= 0.0 && s.is_finite()) {
        return Err(Error::Data(format!(
            "graph score must be finite and >= 0, got {s}"
        )));
    }
    Ok(match p.kind {
        TransformKind::Sigm => {
            let sa = s.powf(p.a);
            p.w * sa / (p.k.powf(p.a) + sa)
        }
        TransformKind::Log => p.w * (1.0 + s).ln(),
        TransformKind::Satu => p.w * s / (p.k + s),
    })
}

/// Add transformed graph evidence to a baseline run.
///
/// `new_score = baseline_score + transform(graph_score)`, where documents
/// missing from `graph_scores` get graph score 0 — the neutral element, so
/// their baseline score is unchanged. Entries are re-sorted per topic by
/// new score descending with ties broken by original rank ascending, ranks
/// reassigned 1..n, and tags annotated with the transform name.
pub fn rerank_run(
    baseline: &RunFile,
    graph_scores: &HashMap<String, f64>,
    p: &TransformParams,
) -> Result<RunFile> {
    p.validate()?;
    let mut reranked = Vec::with_capacity(baseline.entries().len());
    for (_, entries) in baseline.topics() {
        let mut scored: Vec<(f64, &RunEntry)> = Vec::with_capacity(entries.len());
        for entry in entries {
            let graph_score = graph_scores.get(&entry.doc_id).copied().unwrap_or(0.0);
            scored.push((entry.score + transform(graph_score, p)?, entry));
        }
        scored.sort_by(|(sa, ea), (sb, eb)| sb.total_cmp(sa).then(ea.rank.cmp(&eb.rank)));
        for (position, (new_score, entry)) in scored.into_iter().enumerate() {
            reranked.push(RunEntry {
                topic_id: entry.topic_id.clone(),
                doc_id: entry.doc_id.clone(),
                rank: position as u32 + 1,
                score: new_score,
                tag: format!("{}+{}", entry.tag, p.kind.name()),
            });
        }
    }
    RunFile::from_entries(reranked)
}
