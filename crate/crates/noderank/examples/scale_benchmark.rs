//! Fatigued PageRank at scale on a synthetic scale-free graph.
//!
//! The dense Markov matrix of a million-node graph would need terabytes;
//! the sparse formulation keeps memory proportional to the edge count.
//!
//!     cargo run --release --example scale_benchmark -- [nodes] [edges_per_node]

use std::time::Instant;

use noderank::centrality::{fatigued_pagerank, pagerank, RankingConfig};
use noderank::graph::synthetic::preferential_attachment_edges;
use noderank::graph::SparseGraph;

fn peak_rss_mb() -> f64 {
    let mut usage: libc::rusage = unsafe { std::mem::zeroed() };
    unsafe { libc::getrusage(libc::RUSAGE_SELF, &mut usage) };
    usage.ru_maxrss as f64 / 1024.0
}

fn main() -> noderank::Result<()> {
    let mut args = std::env::args().skip(1);
    let nodes: u32 = args.next().map_or(1_000_000, |a| a.parse().expect("nodes"));
    let per_node: u32 = args.next().map_or(10, |a| a.parse().expect("edges per node"));

    let started = Instant::now();
    let edges = preferential_attachment_edges(nodes, per_node, 97);
    println!("generated {} edges in {:?}", edges.len(), started.elapsed());

    let t = Instant::now();
    let graph = SparseGraph::from_numbered_edges(nodes as usize, edges)?;
    println!(
        "built graph ({} nodes, {} edges) in {:?}",
        graph.num_nodes(),
        graph.num_edges(),
        t.elapsed()
    );

    let cfg = RankingConfig::default(); // alpha 0.85, beta 0.1, epsilon 1e-3
    for (name, result) in [
        ("pagerank", pagerank(&graph, &cfg)?),
        ("fatigued pagerank", fatigued_pagerank(&graph, &cfg)?),
    ] {
        let (scores, report) = result;
        let top = scores.ranked_order()[0];
        println!(
            "{name:17} {} iterations, residual {:.2e}, top node {} ({:.3e})",
            report.iterations_used,
            report.final_residual,
            graph.label(top),
            scores.get(top)
        );
    }
    println!(
        "total {:?}, peak RSS {:.0} MB",
        started.elapsed(),
        peak_rss_mb()
    );
    Ok(())
}
