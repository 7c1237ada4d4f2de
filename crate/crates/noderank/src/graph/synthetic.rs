//! Seeded synthetic graph generators for fixtures, tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Erdős–Rényi G(n, p) edge list, self-loops excluded.
pub fn gnp_edges(num_nodes: u32, edge_probability: f64, seed: u64) -> Vec<(u32, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..num_nodes {
        for v in 0..num_nodes {
            if u != v && rng.random::<f64>() < edge_probability {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// Scale-free edge list by preferential attachment.
///
/// Node `u` links to `min(edges_per_node, u)` distinct earlier nodes drawn
/// from a pool that repeats every previous edge target once (plus one entry
/// per node), so high-indegree nodes attract further links. Targets are
/// distinct per source and loop-free, so the edge list survives graph
/// deduplication intact: exactly `sum_u min(edges_per_node, u)` edges.
pub fn preferential_attachment_edges(
    num_nodes: u32,
    edges_per_node: u32,
    seed: u64,
) -> Vec<(u32, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = (num_nodes as usize).saturating_sub(1) * edges_per_node as usize;
    let mut edges = Vec::with_capacity(total);
    let mut pool: Vec<u32> = Vec::with_capacity(total + num_nodes as usize);
    let mut chosen: Vec<u32> = Vec::with_capacity(edges_per_node as usize);
    pool.push(0);
    for u in 1..num_nodes {
        chosen.clear();
        let picks = edges_per_node.min(u);
        while (chosen.len() as u32) < picks {
            let candidate = pool[rng.random_range(0..pool.len())];
            let v = if candidate == u || chosen.contains(&candidate) {
                // Collision: fall back to a uniform unchosen earlier node.
                let mut v = rng.random_range(0..u);
                while chosen.contains(&v) {
                    v = (v + 1) % u;
                }
                v
            } else {
                candidate
            };
            chosen.push(v);
            edges.push((u, v));
            pool.push(v);
        }
        pool.push(u);
    }
    edges
}
