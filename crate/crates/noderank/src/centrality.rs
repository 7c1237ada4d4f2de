//! Analytic node-ranking metrics over a sparse directed graph.
//!
//! The family: indegree, PageRank, Reverse PageRank, Fatigued PageRank and
//! HITS authority/hub. The pagerank variants share one sparse power
//! iteration ([`power_iterate`]); Fatigued PageRank first attenuates each
//! transition column by the fatigue vector derived from indegrees.

use crate::error::{Error, Result};
use crate::graph::SparseGraph;
use crate::scores::{ScoreKind, ScoreVector};

mod power;
mod transition;

pub use power::{power_iterate, ConvergenceReport, RankingConfig, SinkMode};
pub use transition::TransitionMatrix;

/// Out-transition matrix `H` of a graph (sinks stay zero columns).
pub fn transition_matrix(graph: &SparseGraph) -> TransitionMatrix {
    TransitionMatrix::from_graph(graph)
}

fn auto_blocks(n: usize) -> usize {
    // One block per thread; tiny graphs stay sequential.
    if n < 4096 {
        1
    } else {
        rayon::current_num_threads()
    }
}

/// PageRank: stationary vector of the damped random-surfer chain.
pub fn pagerank(
    graph: &SparseGraph,
    cfg: &RankingConfig,
) -> Result<(ScoreVector, ConvergenceReport)> {
    pagerank_with_blocks(graph, cfg, auto_blocks(graph.num_nodes()))
}

/// As [`pagerank`], computing each step over a fixed number of row blocks.
pub fn pagerank_with_blocks(
    graph: &SparseGraph,
    cfg: &RankingConfig,
    blocks: usize,
) -> Result<(ScoreVector, ConvergenceReport)> {
    let matrix = TransitionMatrix::from_graph(graph);
    let (values, report) = power_iterate(&matrix, cfg, blocks)?;
    Ok((ScoreVector::new(ScoreKind::Pagerank, values), report))
}

/// PageRank of the edge-reversed graph.
pub fn reverse_pagerank(
    graph: &SparseGraph,
    cfg: &RankingConfig,
) -> Result<(ScoreVector, ConvergenceReport)> {
    let reversed = graph.reverse();
    let matrix = TransitionMatrix::from_graph(&reversed);
    let (values, report) = power_iterate(&matrix, cfg, auto_blocks(graph.num_nodes()))?;
    Ok((ScoreVector::new(ScoreKind::ReversePagerank, values), report))
}

/// Smoothed, normalized complement of indegree: nodes with many incoming
/// links carry little fatigue weight. Self-loops are excluded from the
/// indegree here, matching the loop-free normalization constant `|V| - 1`.
///
/// `k*_raw = 1 - (indegree + beta) / (|V| - 1 + beta)`, then L1-normalized.
/// A node at the maximum indegree `|V| - 1` gets weight exactly 0 (its raw
/// value vanishes for every beta); all other entries are positive.
pub fn fatigue_vector(graph: &SparseGraph, beta: f64) -> Result<ScoreVector> {
    let n = graph.num_nodes();
    if n < 2 {
        return Err(Error::TooFewNodes { needed: 2, got: n });
    }
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(Error::Config(format!(
            "beta must satisfy beta >= 0, got {beta}"
        )));
    }
    let indegree = graph.indegree();
    let denom = (n - 1) as f64 + beta;
    let mut raw = Vec::with_capacity(n);
    for id in graph.node_ids() {
        let mut k = indegree.get(id) as f64;
        if graph.has_self_loop(id) {
            k -= 1.0;
        }
        raw.push(1.0 - (k + beta) / denom);
    }
    let sum: f64 = raw.iter().sum();
    if sum <= 0.0 {
        return Err(Error::DegenerateFatigue);
    }
    for v in &mut raw {
        *v /= sum;
    }
    Ok(ScoreVector::new(ScoreKind::Fatigue, raw))
}

/// `H'`: each nonzero column of `H` reweighted elementwise by the fatigue
/// vector and renormalized to sum 1. Zero columns and the sink mask are
/// unchanged.
pub fn fatigued_transition_matrix(graph: &SparseGraph, beta: f64) -> Result<TransitionMatrix> {
    let fatigue = fatigue_vector(graph, beta)?;
    TransitionMatrix::fatigued_from_graph(graph, fatigue.values())
}

/// Fatigued PageRank: power iteration with `H'` substituted for `H`.
pub fn fatigued_pagerank(
    graph: &SparseGraph,
    cfg: &RankingConfig,
) -> Result<(ScoreVector, ConvergenceReport)> {
    fatigued_pagerank_with_blocks(graph, cfg, auto_blocks(graph.num_nodes()))
}

/// As [`fatigued_pagerank`], with a fixed row-block count.
pub fn fatigued_pagerank_with_blocks(
    graph: &SparseGraph,
    cfg: &RankingConfig,
    blocks: usize,
) -> Result<(ScoreVector, ConvergenceReport)> {
    cfg.validate()?;
    let matrix = fatigued_transition_matrix(graph, cfg.beta)?;
    let (values, report) = power_iterate(&matrix, cfg, blocks)?;
    Ok((ScoreVector::new(ScoreKind::FatiguedPagerank, values), report))
}

/// HITS authority and hub scores via mutual reinforcement over the whole
/// graph: `auth <- A^T hub`, `hub <- A auth`, each Euclidean-normalized per
/// iteration. Converges to the leading eigenvectors of `A^T A` and `A A^T`.
///
/// An edgeless graph yields uniform unit-norm vectors, converged
/// immediately.
pub fn hits(
    graph: &SparseGraph,
    epsilon: f64,
    max_iterations: usize,
) -> Result<(ScoreVector, ScoreVector, ConvergenceReport)> {
    let n = graph.num_nodes();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::Config(format!(
            "epsilon must satisfy epsilon > 0, got {epsilon}"
        )));
    }
    if max_iterations == 0 {
        return Err(Error::Config("max_iterations must be positive".into()));
    }
    let uniform = vec![1.0 / (n as f64).sqrt(); n];
    if graph.num_edges() == 0 {
        let report = ConvergenceReport {
            iterations_used: 0,
            final_residual: 0.0,
            converged: true,
            max_mass_drift: 0.0,
        };
        return Ok((
            ScoreVector::new(ScoreKind::Authority, uniform.clone()),
            ScoreVector::new(ScoreKind::Hub, uniform),
            report,
        ));
    }
    let (auth, hub, report) = hits_iterate(graph, uniform, epsilon, max_iterations);
    Ok((
        ScoreVector::new(ScoreKind::Authority, auth),
        ScoreVector::new(ScoreKind::Hub, hub),
        report,
    ))
}

fn hits_iterate(
    graph: &SparseGraph,
    initial_hub: Vec<f64>,
    epsilon: f64,
    max_iterations: usize,
) -> (Vec<f64>, Vec<f64>, ConvergenceReport) {
    let n = graph.num_nodes();
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut hub = initial_hub;
    let h = norm(&hub);
    if h > 0.0 {
        hub.iter_mut().for_each(|v| *v /= h);
    }
    let mut auth = vec![0.0f64; n];
    let mut report = ConvergenceReport {
        iterations_used: 0,
        final_residual: f64::INFINITY,
        converged: false,
        max_mass_drift: 0.0,
    };

    for iteration in 1..=max_iterations {
        let mut new_auth = vec![0.0f64; n];
        for id in graph.node_ids() {
            let mut sum = 0.0;
            for &source in graph.in_neighbors(id) {
                sum += hub[source.index()];
            }
            new_auth[id.index()] = sum;
        }
        let na = norm(&new_auth);
        if na > 0.0 {
            new_auth.iter_mut().for_each(|v| *v /= na);
        }

        let mut new_hub = vec![0.0f64; n];
        for id in graph.node_ids() {
            let mut sum = 0.0;
            for &target in graph.out_neighbors(id) {
                sum += new_auth[target.index()];
            }
            new_hub[id.index()] = sum;
        }
        let nh = norm(&new_hub);
        if nh > 0.0 {
            new_hub.iter_mut().for_each(|v| *v /= nh);
        }

        let delta_auth = auth
            .iter()
            .zip(&new_auth)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        let delta_hub = hub
            .iter()
            .zip(&new_hub)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        auth = new_auth;
        hub = new_hub;
        report.iterations_used = iteration;
        report.final_residual = delta_auth.max(delta_hub);
        if report.final_residual < epsilon {
            report.converged = true;
            break;
        }
    }
    (auth, hub, report)
}

/// Indegree cast to real scores (unnormalized).
pub fn indegree_score(graph: &SparseGraph) -> ScoreVector {
    let values = graph
        .indegree()
        .values()
        .iter()
        .map(|&d| d as f64)
        .collect();
    ScoreVector::new(ScoreKind::Indegree, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, GraphBuilder, SparseGraph};

    pub(crate) fn toy() -> SparseGraph {
        build_graph([
            ("1", "2", None),
            ("1", "3", None),
            ("2", "3", None),
            ("3", "5", None),
            ("4", "3", None),
        ])
        .unwrap()
    }

    fn assert_close(actual: &[f64], expected: &[f64], tol: f64) {
        assert_eq!(actual.len(), expected.len());
        for (i, (a, e)) in actual.iter().zip(expected).enumerate() {
            assert!(
                (a - e).abs() <= tol,
                "entry {i}: {a} vs expected {e} (tol {tol})"
            );
        }
    }

    /// Assert scores per node label (NodeIds follow first-appearance order,
    /// which differs from label order on the toy graph).
    fn assert_by_label(g: &SparseGraph, scores: &ScoreVector, expected: &[(&str, f64)], tol: f64) {
        assert_eq!(scores.len(), expected.len());
        for (label, want) in expected {
            let got = scores.get(g.node_id(label).unwrap());
            assert!(
                (got - want).abs() <= tol,
                "node {label}: {got} vs expected {want} (tol {tol})"
            );
        }
    }

    #[test]
    fn toy_fatigue_vector() {
        // indegree per label [0,1,3,0,1], beta 0.1 -> raw [4,3,1,4,3]/4.1
        // -> k* = [4,3,1,4,3]/15
        let g = toy();
        let k = fatigue_vector(&g, 0.1).unwrap();
        assert_by_label(
            &g,
            &k,
            &[
                ("1", 4.0 / 15.0),
                ("2", 3.0 / 15.0),
                ("3", 1.0 / 15.0),
                ("4", 4.0 / 15.0),
                ("5", 3.0 / 15.0),
            ],
            1e-12,
        );
        assert!((k.values().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn max_indegree_node_blocked_without_smoothing() {
        // Node `hub` has indegree |V| - 1 = 3; with beta = 0 its raw fatigue
        // weight is exactly 0.
        let g = build_graph([
            ("a", "hub", None),
            ("b", "hub", None),
            ("c", "hub", None),
            ("hub", "a", None),
        ])
        .unwrap();
        let k = fatigue_vector(&g, 0.0).unwrap();
        let hub = g.node_id("hub").unwrap();
        assert_eq!(k.get(hub), 0.0);
    }

    #[test]
    fn equal_indegrees_give_uniform_fatigue() {
        let g = build_graph([("a", "b", None), ("b", "c", None), ("c", "a", None)]).unwrap();
        let k = fatigue_vector(&g, 0.1).unwrap();
        assert_close(k.values(), &[1.0 / 3.0; 3], 1e-12);
    }

    #[test]
    fn fatigue_needs_two_nodes() {
        let mut b = GraphBuilder::new();
        b.add_node("solo").unwrap();
        let g = b.build();
        assert!(matches!(
            fatigue_vector(&g, 0.1),
            Err(Error::TooFewNodes { needed: 2, got: 1 })
        ));
    }

    #[test]
    fn self_loops_do_not_count_toward_fatigue_indegree() {
        let looped = build_graph([("a", "b", None), ("b", "b", None), ("c", "b", None)]).unwrap();
        let plain = build_graph([("a", "b", None), ("c", "b", None)]).unwrap();
        // indegree counts the loop, fatigue ignores it
        assert_eq!(looped.indegree().get(looped.node_id("b").unwrap()), 3);
        let kl = fatigue_vector(&looped, 0.1).unwrap();
        let kp = fatigue_vector(&plain, 0.1).unwrap();
        assert_close(kl.values(), kp.values(), 1e-12);
    }

    #[test]
    fn toy_fatigued_matrix_columns() {
        let h = fatigued_transition_matrix(&toy(), 0.1).unwrap();
        let g = toy();
        let id = |l: &str| g.node_id(l).unwrap();
        // Column 1 under exact k*: [0, 0.75, 0.25, 0, 0].
        assert!((h.get(id("2"), id("1")) - 0.75).abs() < 1e-12);
        assert!((h.get(id("3"), id("1")) - 0.25).abs() < 1e-12);
        // Single-entry columns are unchanged by renormalization.
        assert!((h.get(id("3"), id("2")) - 1.0).abs() < 1e-12);
        assert!((h.get(id("3"), id("4")) - 1.0).abs() < 1e-12);
        assert!((h.get(id("5"), id("3")) - 1.0).abs() < 1e-12);
        // Sink column untouched.
        for id in g.node_ids() {
            assert_eq!(h.is_sink(id), g.label(id) == "5");
        }
        for (j, sum) in h.column_sums().iter().enumerate() {
            if !h.sink_mask()[j] {
                assert!((sum - 1.0).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn single_edge_to_most_fatigued_node_still_stochastic() {
        // `hub` carries the least fatigue weight in the graph; a column with
        // a single edge into it still renormalizes to sum 1.
        let g = build_graph([
            ("a", "hub", None),
            ("b", "hub", None),
            ("c", "hub", None),
            ("d", "a", None),
        ])
        .unwrap();
        let h = fatigued_transition_matrix(&g, 0.1).unwrap();
        for (j, sum) in h.column_sums().iter().enumerate() {
            if !h.sink_mask()[j] {
                assert!((sum - 1.0).abs() <= 1e-12, "column {j} sums to {sum}");
            }
        }
    }

    #[test]
    fn column_into_max_indegree_node_collapses() {
        // `hub` has indegree |V| - 1, so its fatigue weight is exactly 0 and
        // the single-entry column pointing at it cannot be renormalized.
        let g = build_graph([
            ("a", "hub", None),
            ("b", "hub", None),
            ("c", "hub", None),
            ("hub", "a", None),
        ])
        .unwrap();
        for beta in [0.0, 0.1] {
            let err = fatigued_transition_matrix(&g, beta).unwrap_err();
            assert!(matches!(err, Error::FatigueCollapse { .. }), "{err}");
        }
    }

    #[test]
    fn toy_pagerank_matches_frozen_dense_value() {
        // Frozen from an independent dense power-iteration computation.
        let g = toy();
        let cfg = RankingConfig {
            epsilon: 1e-13,
            max_iterations: 100_000,
            ..RankingConfig::default()
        };
        let (r, report) = pagerank(&g, &cfg).unwrap();
        assert!(report.converged);
        assert_by_label(
            &g,
            &r,
            &[
                ("1", 0.09195772243711),
                ("2", 0.131039754472881),
                ("3", 0.320587609846373),
                ("4", 0.09195772243711),
                ("5", 0.364457190806527),
            ],
            1e-9,
        );
    }

    #[test]
    fn toy_fatigued_pagerank_matches_frozen_dense_value() {
        let g = toy();
        let cfg = RankingConfig {
            epsilon: 1e-13,
            max_iterations: 100_000,
            ..RankingConfig::default()
        };
        let (r, report) = fatigued_pagerank(&g, &cfg).unwrap();
        assert!(report.converged);
        assert_by_label(
            &g,
            &r,
            &[
                ("1", 0.090677502628231),
                ("2", 0.148484410553728),
                ("3", 0.313234098141395),
                ("4", 0.090677502628231),
                ("5", 0.356926486048416),
            ],
            1e-9,
        );
    }

    #[test]
    fn paper_literal_reproduces_worked_example_trajectory() {
        // The worked example's rounded H' drives r1 and r10.
        let rounded = TransitionMatrix::from_dense(&[
            vec![0.00, 0.0, 0.0, 0.0, 0.0],
            vec![0.71, 0.0, 0.0, 0.0, 0.0],
            vec![0.29, 1.0, 0.0, 1.0, 0.0],
            vec![0.00, 0.0, 0.0, 0.0, 0.0],
            vec![0.00, 0.0, 1.0, 0.0, 0.0],
        ])
        .unwrap();
        let base = RankingConfig {
            sink_mode: SinkMode::PaperLiteral,
            epsilon: 1e-300, // run to the iteration cap
            ..RankingConfig::default()
        };
        let one = RankingConfig {
            max_iterations: 1,
            ..base.clone()
        };
        let (r1, _) = power_iterate(&rounded, &one, 1).unwrap();
        assert_close(r1.as_slice(), &[0.03, 0.15, 0.42, 0.03, 0.37], 0.01);

        let ten = RankingConfig {
            max_iterations: 10,
            ..base
        };
        let (r10, _) = power_iterate(&rounded, &ten, 1).unwrap();
        assert_close(r10.as_slice(), &[0.05, 0.09, 0.23, 0.05, 0.59], 0.02);
    }

    #[test]
    fn reverse_pagerank_is_pagerank_of_reversed_graph() {
        let g = toy();
        let cfg = RankingConfig {
            epsilon: 1e-12,
            ..RankingConfig::default()
        };
        let (rp, _) = reverse_pagerank(&g, &cfg).unwrap();
        let (pr, _) = pagerank(&g.reverse(), &cfg).unwrap();
        assert_eq!(rp.values(), pr.values());
        assert_eq!(rp.kind(), ScoreKind::ReversePagerank);
    }

    #[test]
    fn symmetric_graph_reverse_pagerank_equals_pagerank() {
        let g = build_graph([
            ("a", "b", None),
            ("b", "a", None),
            ("b", "c", None),
            ("c", "b", None),
        ])
        .unwrap();
        let cfg = RankingConfig {
            epsilon: 1e-12,
            ..RankingConfig::default()
        };
        let (rp, _) = reverse_pagerank(&g, &cfg).unwrap();
        let (pr, _) = pagerank(&g, &cfg).unwrap();
        for (a, b) in rp.values().iter().zip(pr.values()) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn fatigue_is_invariant_in_beta_after_normalization() {
        // k*_raw = (|V|-1-k) / (|V|-1+beta): the denominator is constant
        // across nodes, so beta cancels in the L1 normalization and the
        // fatigued ranking does not depend on it. At beta = 1e9 the raw
        // subtraction loses ~9 digits, hence the loose tolerances.
        let g = toy();
        let k_small = fatigue_vector(&g, 0.1).unwrap();
        let k_large = fatigue_vector(&g, 1e9).unwrap();
        assert_close(k_small.values(), k_large.values(), 1e-8);

        let small = RankingConfig {
            beta: 0.1,
            epsilon: 1e-13,
            max_iterations: 100_000,
            ..RankingConfig::default()
        };
        let large = RankingConfig {
            beta: 1e9,
            ..small.clone()
        };
        let (fpr_small, _) = fatigued_pagerank(&g, &small).unwrap();
        let (fpr_large, _) = fatigued_pagerank(&g, &large).unwrap();
        assert_close(fpr_small.values(), fpr_large.values(), 1e-7);
    }

    #[test]
    fn fatigue_attenuates_high_indegree_targets() {
        // One mid node fans out to X and Y; auxiliary nodes boost X's
        // indegree only. Fatigue must shrink X's share relative to Y.
        let g = build_graph([
            ("s", "m", None),
            ("m", "x", None),
            ("m", "y", None),
            ("a1", "x", None),
            ("a2", "x", None),
        ])
        .unwrap();
        let cfg = RankingConfig {
            epsilon: 1e-13,
            max_iterations: 100_000,
            ..RankingConfig::default()
        };
        let (pr, _) = pagerank(&g, &cfg).unwrap();
        let (fpr, _) = fatigued_pagerank(&g, &cfg).unwrap();
        let (x, y) = (g.node_id("x").unwrap(), g.node_id("y").unwrap());
        assert!(pr.get(x) > pr.get(y));
        assert!(
            fpr.get(x) / fpr.get(y) < pr.get(x) / pr.get(y),
            "fatigue must not improve X's standing over Y"
        );
    }

    #[test]
    fn hits_star_graph_concentrates_authority() {
        let g = build_graph([
            ("l1", "center", None),
            ("l2", "center", None),
            ("l3", "center", None),
            ("l4", "center", None),
        ])
        .unwrap();
        let (auth, hub, report) = hits(&g, 1e-12, 1000).unwrap();
        assert!(report.converged);
        let center = g.node_id("center").unwrap();
        assert!((auth.get(center) - 1.0).abs() < 1e-9);
        for leaf in ["l1", "l2", "l3", "l4"] {
            let id = g.node_id(leaf).unwrap();
            assert!(auth.get(id).abs() < 1e-9);
            assert!((hub.get(id) - 0.5).abs() < 1e-9);
        }
        assert!(hub.get(center).abs() < 1e-9);
    }

    #[test]
    fn hits_toy_authority_peaks_at_node_3() {
        let g = toy();
        let (auth, _, _) = hits(&g, 1e-12, 10_000).unwrap();
        let best = auth.ranked_order()[0];
        assert_eq!(g.label(best), "3");
        let norm: f64 = auth.values().iter().map(|v| v * v).sum::<f64>();
        assert!((norm - 1.0).abs() < 1e-9);
    }

    #[test]
    fn hits_duality_with_reversal() {
        let g = toy();
        let (auth, _, _) = hits(&g, 1e-13, 10_000).unwrap();
        let (_, hub_rev, _) = hits(&g.reverse(), 1e-13, 10_000).unwrap();
        for (a, b) in auth.values().iter().zip(hub_rev.values()) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn hits_edgeless_graph_is_uniform_and_converged() {
        let mut b = GraphBuilder::new();
        for l in ["a", "b", "c"] {
            b.add_node(l).unwrap();
        }
        let (auth, hub, report) = hits(&b.build(), 1e-9, 10).unwrap();
        assert!(report.converged);
        let u = 1.0 / 3.0f64.sqrt();
        for v in auth.values().iter().chain(hub.values()) {
            assert!((v - u).abs() < 1e-12);
        }
    }

    #[test]
    fn hits_is_scale_invariant_in_the_initial_vector() {
        let g = toy();
        let ones = vec![1.0; 5];
        let scaled: Vec<f64> = ones.iter().map(|v| v * 37.5).collect();
        let (a1, h1, _) = hits_iterate(&g, ones, 1e-12, 1000);
        let (a2, h2, _) = hits_iterate(&g, scaled, 1e-12, 1000);
        for (x, y) in a1.iter().zip(&a2).chain(h1.iter().zip(&h2)) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn indegree_score_matches_degrees_and_visits() {
        let g = toy();
        assert_by_label(
            &g,
            &indegree_score(&g),
            &[("1", 0.0), ("2", 1.0), ("3", 3.0), ("4", 0.0), ("5", 1.0)],
            0.0,
        );

        let empty = GraphBuilder::new().build();
        assert!(indegree_score(&empty).is_empty());

        // With unit weights on every edge, visits equals indegree.
        let weighted = build_graph([
            ("1", "2", Some(1.0)),
            ("1", "3", Some(1.0)),
            ("2", "3", Some(1.0)),
            ("3", "5", Some(1.0)),
            ("4", "3", Some(1.0)),
        ])
        .unwrap();
        assert_eq!(
            crate::ingest::visits(&weighted).values(),
            indegree_score(&weighted).values()
        );
    }
}
