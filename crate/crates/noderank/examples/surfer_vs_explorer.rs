//! Monte Carlo walks against the analytic rankings.
//!
//! The memoryless surfer's visit frequencies converge to PageRank. The
//! fatigued explorer remembers the last few distinct nodes it left and
//! refuses to revisit them; its frequencies are compared (by Spearman
//! correlation) against both PageRank and Fatigued PageRank for a range of
//! fatigue spans. The indegree-based fatigue approximation is exactly
//! that — an approximation — so this is a measurement, not a test.

use noderank::centrality::{fatigued_pagerank, pagerank, RankingConfig};
use noderank::correlation::spearman;
use noderank::graph::synthetic::preferential_attachment_edges;
use noderank::graph::SparseGraph;
use noderank::simulate::{simulate_explorer, simulate_surfer, ExplorerConfig};

fn main() -> noderank::Result<()> {
    let edges = preferential_attachment_edges(300, 4, 7);
    let graph = SparseGraph::from_numbered_edges(300, edges)?;
    println!(
        "scale-free graph: {} nodes, {} edges",
        graph.num_nodes(),
        graph.num_edges()
    );

    let cfg = RankingConfig {
        epsilon: 1e-12,
        ..RankingConfig::default()
    };
    let (pr, _) = pagerank(&graph, &cfg)?;
    let (fpr, _) = fatigued_pagerank(&graph, &cfg)?;

    let steps = 2_000_000;
    let surfer = simulate_surfer(
        &graph,
        &ExplorerConfig {
            steps,
            rng_seed: 1,
            ..ExplorerConfig::default()
        },
    )?;
    let max_dev = surfer
        .values()
        .iter()
        .zip(pr.values())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max)
        ;
    println!(
        "surfer ({steps} steps): max |frequency - pagerank| = {max_dev:.5}, \
         spearman vs pagerank = {:.4}",
        spearman(surfer.values(), pr.values())?
    );

    println!("\nexplorer frequencies vs analytic rankings:");
    println!("  span  spearman(pagerank)  spearman(fatigued)");
    for span in [0usize, 1, 2, 5, 10, 25] {
        let explorer = simulate_explorer(
            &graph,
            &ExplorerConfig {
                steps,
                fatigue_span: span,
                rng_seed: 2,
                ..ExplorerConfig::default()
            },
        )?;
        println!(
            "  {span:4}  {:18.4}  {:18.4}",
            spearman(explorer.values(), pr.values())?,
            spearman(explorer.values(), fpr.values())?,
        );
    }
    Ok(())
}
