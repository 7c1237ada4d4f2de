//! Retrieval effectiveness: AP/MAP, GMAP, NDCG@10 and P@10.

use std::io::Write;

use crate::error::Result;
use crate::scores::format_score;

use super::run_file::{Qrels, RunFile};

/// Per-topic APs below this floor are raised to it before the geometric
/// mean, the usual evaluation-tool convention.
pub const GMAP_FLOOR: f64 = 1e-5;

const NDCG_CUT: usize = 10;
const PRECISION_CUT: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct TopicEffectiveness {
    pub topic_id: String,
    pub ap: f64,
    pub ndcg10: f64,
    pub p10: f64,
    pub num_relevant: usize,
    pub num_retrieved: usize,
}

/// Aggregate effectiveness over the evaluated topics.
#[derive(Debug, Clone, PartialEq)]
pub struct EffectivenessReport {
    /// Sorted by topic id.
    pub per_topic: Vec<TopicEffectiveness>,
    /// Arithmetic mean of per-topic AP.
    pub map: f64,
    /// Geometric mean of per-topic AP, floored at [`GMAP_FLOOR`].
    pub gmap: f64,
    pub ndcg10: f64,
    pub p10: f64,
    pub num_topics: usize,
    /// Topics skipped (absent from qrels, or no relevant documents).
    pub warnings: Vec<String>,
}

/// Score a run against judgments.
///
/// Unjudged documents count as non-relevant. Run topics missing from the
/// qrels, and topics without a single relevant document, are excluded from
/// all means and reported as warnings.
pub fn evaluate_run(run: &RunFile, qrels: &Qrels) -> Result<EffectivenessReport> {
    let mut per_topic = Vec::new();
    let mut warnings = Vec::new();

    for (topic, entries) in run.topics() {
        if !qrels.has_topic(topic) {
            warnings.push(format!("topic {topic} not present in qrels; skipped"));
            continue;
        }
        let num_relevant = qrels.num_relevant(topic);
        if num_relevant == 0 {
            warnings.push(format!(
                "topic {topic} has no relevant documents in qrels; excluded from means"
            ));
            continue;
        }

        // AP over the full ranked list, normalized by the number of
        // relevant documents in the qrels.
        let mut hits = 0usize;
        let mut ap_sum = 0.0;
        for (position, entry) in entries.iter().enumerate() {
            if qrels.relevance(topic, &entry.doc_id) >= 1 {
                hits += 1;
                ap_sum += hits as f64 / (position + 1) as f64;
            }
        }
        let ap = ap_sum / num_relevant as f64;

        // DCG with linear gain and 1/log2(rank + 1) discount over the top 10.
        let dcg: f64 = entries
            .iter()
            .take(NDCG_CUT)
            .enumerate()
            .map(|(position, entry)| {
                let gain = qrels.relevance(topic, &entry.doc_id) as f64;
                gain / ((position + 2) as f64).log2()
            })
            .sum();
        let mut ideal: Vec<u32> = qrels.grades(topic).filter(|&g| g >= 1).collect();
        ideal.sort_unstable_by(|a, b| b.cmp(a));
        let idcg: f64 = ideal
            .iter()
            .take(NDCG_CUT)
            .enumerate()
            .map(|(position, &gain)| gain as f64 / ((position + 2) as f64).log2())
            .sum();
        let ndcg10 = if idcg > 0.0 { dcg / idcg } else { 0.0 };

        let relevant_in_top = entries
            .iter()
            .take(PRECISION_CUT)
            .filter(|e| qrels.relevance(topic, &e.doc_id) >= 1)
            .count();
        let p10 = relevant_in_top as f64 / PRECISION_CUT as f64;

        per_topic.push(TopicEffectiveness {
            topic_id: topic.to_string(),
            ap,
            ndcg10,
            p10,
            num_relevant,
            num_retrieved: entries.len(),
        });
    }

    let n = per_topic.len();
    let mean = |f: fn(&TopicEffectiveness) -> f64| -> f64 {
        if n == 0 {
            0.0
        } else {
            per_topic.iter().map(f).sum::<f64>() / n as f64
        }
    };
    let gmap = if n == 0 {
        0.0
    } else {
        (per_topic
            .iter()
            .map(|t| t.ap.max(GMAP_FLOOR).ln())
            .sum::<f64>()
            / n as f64)
            .exp()
    };

    Ok(EffectivenessReport {
        map: mean(|t| t.ap),
        gmap,
        ndcg10: mean(|t| t.ndcg10),
        p10: mean(|t| t.p10),
        num_topics: n,
        per_topic,
        warnings,
    })
}

/// CSV rendering in long form: `metric,topic,value` rows per topic, then
/// aggregate rows with topic `all`.
pub fn write_effectiveness_csv(
    w: &mut (impl Write + ?Sized),
    report: &EffectivenessReport,
) -> std::io::Result<()> {
    writeln!(w, "metric,topic,value")?;
    for t in &report.per_topic {
        writeln!(w, "ap,{},{}", t.topic_id, format_score(t.ap))?;
        writeln!(w, "ndcg@10,{},{}", t.topic_id, format_score(t.ndcg10))?;
        writeln!(w, "p@10,{},{}", t.topic_id, format_score(t.p10))?;
    }
    writeln!(w, "map,all,{}", format_score(report.map))?;
    writeln!(w, "gmap,all,{}", format_score(report.gmap))?;
    writeln!(w, "ndcg@10,all,{}", format_score(report.ndcg10))?;
    writeln!(w, "p@10,all,{}", format_score(report.p10))?;
    Ok(())
}
