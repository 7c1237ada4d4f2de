//! Graph scores as query-independent retrieval evidence.
//!
//! Fatigued PageRank is computed over the bundled document graph, converted
//! into a bounded relevance weight with the sigm transform (w=1.8, k=1,
//! a=0.6) and added to the baseline scores of the bundled run file; the
//! original and reranked runs are then scored against the bundled
//! judgments. Raw pagerank-family scores are tiny, so a scale factor keeps
//! the sigm transform away from its flat region.

use std::collections::HashMap;
use std::path::Path;

use noderank::centrality::{fatigued_pagerank, RankingConfig};
use noderank::ingest::read_edge_tsv;
use noderank::rerank::{evaluate_run, rerank_run, Qrels, RunFile, TransformParams};

fn main() -> noderank::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let graph = read_edge_tsv(data.join("synthetic100.tsv"))?;
    let baseline = RunFile::read(data.join("example.run"))?;
    let qrels = Qrels::read(data.join("example.qrels"))?;

    let (scores, _) = fatigued_pagerank(&graph, &RankingConfig::default())?;
    let scale = 50.0;
    let graph_scores: HashMap<String, f64> = graph
        .node_ids()
        .map(|id| (graph.label(id).to_string(), scores.get(id) * scale))
        .collect();

    let params = TransformParams::default();
    let reranked = rerank_run(&baseline, &graph_scores, &params)?;

    for (name, run) in [("baseline", &baseline), ("reranked", &reranked)] {
        let report = evaluate_run(run, &qrels)?;
        println!(
            "{name:9} MAP {:.4}  GMAP {:.4}  NDCG@10 {:.4}  P@10 {:.4}  ({} topics)",
            report.map, report.gmap, report.ndcg10, report.p10, report.num_topics
        );
        for warning in &report.warnings {
            eprintln!("  warning: {warning}");
        }
    }

    println!("\nreranked top 3 per topic:");
    for (topic, entries) in reranked.topics() {
        let docs: Vec<&str> = entries.iter().take(3).map(|e| e.doc_id.as_str()).collect();
        println!("  {topic}: {}", docs.join(", "));
    }
    Ok(())
}
