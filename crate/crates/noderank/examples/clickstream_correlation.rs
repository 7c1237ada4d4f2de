//! The clickstream evaluation pipeline at desk scale.
//!
//! A synthetic navigation log plays the role of the clickstream: transition
//! counts are drawn so that popular (high-pagerank) pages also attract more
//! clicks, with noise. Joining them onto the graph gives per-node visit
//! counts, and each ranking metric is scored by how well its top-k slices
//! correlate with those visits. The CSV on stdout has one row per cut plus
//! `overall` and `variance` summary rows, ready to chart.

use noderank::centrality::{
    fatigued_pagerank, hits, indegree_score, pagerank, RankingConfig,
};
use noderank::correlation::{correlation_at_cuts, write_correlation_csv};
use noderank::graph::synthetic::preferential_attachment_edges;
use noderank::graph::SparseGraph;
use noderank::ingest::{join_clickstream, visits, ClickstreamRecord};
use noderank::scores::ScoreVector;
use rand::{Rng, SeedableRng};

fn main() -> noderank::Result<()> {
    let n = 500u32;
    let graph = SparseGraph::from_numbered_edges(
        n as usize,
        preferential_attachment_edges(n, 5, 11),
    )?;

    let cfg = RankingConfig {
        epsilon: 1e-12,
        ..RankingConfig::default()
    };
    let (pr, _) = pagerank(&graph, &cfg)?;

    // Synthetic clickstream: counts roughly proportional to the source's
    // popularity, with multiplicative noise and a few rows that the join
    // must skip (wrong type, unknown page).
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let mut records = Vec::new();
    for u in graph.node_ids() {
        for &v in graph.out_neighbors(u) {
            let base = 5_000_000.0 * pr.get(u) / graph.out_neighbors(u).len() as f64;
            let count = (base * rng.random_range(0.5..1.5)) as u64;
            records.push(Ok(ClickstreamRecord {
                prev_label: graph.label(u).to_string(),
                curr_label: graph.label(v).to_string(),
                link_type: "link".to_string(),
                count,
            }));
        }
    }
    records.push(Ok(ClickstreamRecord {
        prev_label: "0".into(),
        curr_label: "1".into(),
        link_type: "external".into(),
        count: 12345,
    }));
    records.push(Ok(ClickstreamRecord {
        prev_label: "no-such-page".into(),
        curr_label: "0".into(),
        link_type: "link".into(),
        count: 999,
    }));

    let (weighted, stats) = join_clickstream(&graph, records, None)?;
    eprintln!(
        "join: {} matched, {} skipped by type, {} unknown labels",
        stats.matched, stats.skipped_type, stats.skipped_unknown_label
    );
    let ground_truth = visits(&weighted);

    let (fpr, _) = fatigued_pagerank(&weighted, &cfg)?;
    let (auth, _, _) = hits(&weighted, 1e-10, 10_000)?;
    let metrics: Vec<ScoreVector> = vec![indegree_score(&weighted), auth, pr, fpr];

    let cuts = [10, 25, 100, 250, 500];
    let mut stdout = std::io::stdout().lock();
    for scores in &metrics {
        let report = correlation_at_cuts(scores, &ground_truth, &cuts)?;
        write_correlation_csv(&mut stdout, &report)
            .map_err(|e| noderank::Error::io("<stdout>", e))?;
    }
    Ok(())
}
