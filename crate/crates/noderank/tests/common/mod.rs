//! Shared brute-force reference implementations for integration tests.
//!
//! Everything here recomputes results through dense matrices or O(n^2)
//! scans, independent of the library's sparse code paths.

// Each test binary includes this module and uses its own subset.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Dense binary adjacency from an edge list.
pub fn dense_adjacency(n: usize, edges: &[(u32, u32)]) -> Vec<Vec<f64>> {
    let mut adj = vec![vec![0.0; n]; n];
    for &(u, v) in edges {
        adj[u as usize][v as usize] = 1.0;
    }
    adj
}

/// Dense `H`: transpose of the adjacency with nonzero columns normalized;
/// returns the sink mask alongside.
pub fn dense_h(adj: &[Vec<f64>]) -> (Vec<Vec<f64>>, Vec<bool>) {
    let n = adj.len();
    let mut h = vec![vec![0.0; n]; n];
    let mut sink = vec![false; n];
    for j in 0..n {
        let colsum: f64 = adj[j].iter().sum(); // row j of A = column j of A^T
        if colsum == 0.0 {
            sink[j] = true;
        } else {
            for i in 0..n {
                h[i][j] = adj[j][i] / colsum;
            }
        }
    }
    (h, sink)
}

/// Fatigue vector from a dense adjacency (self-loops excluded from the
/// indegree), L1-normalized.
pub fn dense_fatigue(adj: &[Vec<f64>], beta: f64) -> Vec<f64> {
    let n = adj.len();
    let denom = (n - 1) as f64 + beta;
    let mut raw = vec![0.0; n];
    for i in 0..n {
        let indeg: f64 = (0..n).filter(|&u| u != i).map(|u| adj[u][i]).sum();
        raw[i] = 1.0 - (indeg + beta) / denom;
    }
    let sum: f64 = raw.iter().sum();
    raw.iter().map(|v| v / sum).collect()
}

/// Dense fatigued `H'`: columns reweighted by the fatigue vector and
/// renormalized. Returns `None` when some nonzero column collapses.
pub fn dense_fatigued_h(h: &[Vec<f64>], fatigue: &[f64]) -> Option<Vec<Vec<f64>>> {
    let n = h.len();
    let mut out = vec![vec![0.0; n]; n];
    for j in 0..n {
        let colsum: f64 = (0..n).map(|i| h[i][j] * fatigue[i]).sum();
        let nonzero = (0..n).any(|i| h[i][j] != 0.0);
        if nonzero && colsum == 0.0 {
            return None;
        }
        if colsum > 0.0 {
            for i in 0..n {
                out[i][j] = h[i][j] * fatigue[i] / colsum;
            }
        }
    }
    Some(out)
}

/// Dense power iteration on the fully materialized Markov matrix
/// `M = (1-alpha)/n ee^T + alpha (H + uniform sink columns)`.
pub fn dense_pagerank(
    h: &[Vec<f64>],
    sink: &[bool],
    alpha: f64,
    epsilon: f64,
    max_iterations: usize,
) -> Vec<f64> {
    let n = h.len();
    let inv_n = 1.0 / n as f64;
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let s = if sink[j] { inv_n } else { h[i][j] };
            m[i][j] = (1.0 - alpha) * inv_n + alpha * s;
        }
    }
    let mut r = vec![inv_n; n];
    for _ in 0..max_iterations {
        let mut next = vec![0.0; n];
        for i in 0..n {
            next[i] = (0..n).map(|j| m[i][j] * r[j]).sum();
        }
        let mass: f64 = next.iter().sum();
        for v in &mut next {
            *v /= mass;
        }
        let residual: f64 = r
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        r = next;
        if residual < epsilon {
            break;
        }
    }
    r
}

/// Dense HITS mutual reinforcement with L2 normalization.
pub fn dense_hits(adj: &[Vec<f64>], iterations: usize) -> (Vec<f64>, Vec<f64>) {
    let n = adj.len();
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut hub = vec![1.0 / (n as f64).sqrt(); n];
    let mut auth = vec![0.0; n];
    for _ in 0..iterations {
        for i in 0..n {
            auth[i] = (0..n).map(|j| adj[j][i] * hub[j]).sum();
        }
        let na = norm(&auth);
        if na > 0.0 {
            auth.iter_mut().for_each(|v| *v /= na);
        }
        for j in 0..n {
            hub[j] = (0..n).map(|i| adj[j][i] * auth[i]).sum();
        }
        let nh = norm(&hub);
        if nh > 0.0 {
            hub.iter_mut().for_each(|v| *v /= nh);
        }
    }
    (auth, hub)
}

/// Pearson through the raw computational formula, one fused pass.
pub fn brute_pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len() as f64;
    let (mut sx, mut sy, mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (&a, &b) in x.iter().zip(y) {
        sx += a;
        sy += b;
        sxx += a * a;
        syy += b * b;
        sxy += a * b;
    }
    let var_x = sxx - sx * sx / n;
    let var_y = syy - sy * sy / n;
    if var_x <= 0.0 || var_y <= 0.0 {
        return None;
    }
    Some((sxy - sx * sy / n) / (var_x * var_y).sqrt())
}

/// Fractional ranks by O(n^2) counting: rank = (#smaller) + (#equal + 1)/2.
pub fn brute_ranks(values: &[f64]) -> Vec<f64> {
    values
        .iter()
        .map(|&v| {
            let smaller = values.iter().filter(|&&o| o < v).count();
            let equal = values.iter().filter(|&&o| o == v).count();
            smaller as f64 + (equal as f64 + 1.0) / 2.0
        })
        .collect()
}

pub fn brute_spearman(x: &[f64], y: &[f64]) -> Option<f64> {
    brute_pearson(&brute_ranks(x), &brute_ranks(y))
}

/// Random directed loop-free edge list with a given density.
pub fn random_edges(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<(u32, u32)> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random::<f64>() < p {
                edges.push((u as u32, v as u32));
            }
        }
    }
    edges
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
