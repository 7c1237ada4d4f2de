//! Node ranking for sparse directed graphs.
//!
//! The crate computes PageRank, Reverse PageRank, Fatigued PageRank, HITS
//! authority/hub and indegree over an immutable compressed adjacency
//! structure, simulates the random surfer and the fatigued random explorer,
//! and evaluates rankings two ways: rank correlation against clickstream
//! visit counts, and query-independent reranking of TREC run files scored
//! with MAP/GMAP/NDCG@10/P@10.
//!
//! Fatigued PageRank attenuates each transition column of the random-surfer
//! chain by a fatigue vector derived from indegrees: heavily linked nodes
//! are modeled as more likely to be "fatigued" and so less likely to be
//! visited, which redistributes rank mass away from the most popular nodes.
//!
//! # Quick start
//!
//! ```
//! use noderank::centrality::{fatigued_pagerank, RankingConfig};
//! use noderank::graph::build_graph;
//!
//! let graph = build_graph([
//!     ("1", "2", None),
//!     ("1", "3", None),
//!     ("2", "3", None),
//!     ("3", "5", None),
//!     ("4", "3", None),
//! ])?;
//! let (scores, report) = fatigued_pagerank(&graph, &RankingConfig::default())?;
//! assert!(report.converged);
//! assert!((scores.values().iter().sum::<f64>() - 1.0).abs() < 1e-9);
//! # Ok::<(), noderank::Error>(())
//! ```
//!
//! # Examples
//!
//! One runnable example per capability, under `examples/`:
//!
//! - **`toy_ranking`** — build the five-node worked-example graph and print
//!   every metric side by side.
//! - **`sink_modes`** — compare the two sink-handling modes on the same
//!   trajectory.
//! - **`surfer_vs_explorer`** — Monte Carlo walks against the analytic
//!   scores, including the fatigued explorer.
//! - **`clickstream_correlation`** — join synthetic clickstream counts onto
//!   a graph and chart correlation at ranking cuts.
//! - **`rerank_pipeline`** — transform graph scores into relevance weights,
//!   rerank a baseline run and evaluate it.
//! - **`scale_benchmark`** — fatigued PageRank on a synthetic scale-free
//!   graph with millions of edges.
//!
//! ```bash
//! cargo run --example toy_ranking
//! cargo run --release --example scale_benchmark -- 1000000 10
//! ```
//!
//! The same pipeline is scriptable through the thin `noderank` binary; see
//! the README for the subcommands.

pub mod centrality;
pub mod cli;
pub mod correlation;
pub mod error;
pub mod graph;
pub mod ingest;
pub mod rerank;
pub mod scores;
pub mod simulate;

pub use error::{Error, Result};
pub use graph::{build_graph, DegreeVector, GraphBuilder, NodeId, SparseGraph};
pub use scores::{format_score, ScoreKind, ScoreVector};
