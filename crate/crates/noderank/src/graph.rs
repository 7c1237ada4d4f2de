//! Immutable sparse directed graph with stable node indexing.
//!
//! Nodes are identified by string labels and interned into dense [`NodeId`]s
//! in first-appearance order (the source of a record before its target).
//! Parallel edges are collapsed at build time with their weights summed;
//! self-loops are stored unless the builder is told to drop them.
//!
//! The adjacency is kept in both source-major and target-major compressed
//! form so that out-edges and in-edges of a node are each a contiguous
//! slice. A built graph is immutable and safe to share across threads.

use std::collections::HashMap;

use crate::error::{Error, Result};

pub mod synthetic;

/// Dense node index, bijective with the distinct labels seen at build time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(u32);

impl NodeId {
    pub fn new(index: u32) -> Self {
        NodeId(index)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl std::fmt::Display for NodeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Per-node edge counts aligned to [`NodeId`] order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeVector(Vec<u64>);

impl DegreeVector {
    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn get(&self, id: NodeId) -> u64 {
        self.0[id.index()]
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }
}

/// Immutable directed graph in compressed adjacency form.
///
/// Both compressed forms describe the identical edge set. Edge weights, when
/// present, are kept in out-edge order; a graph built without any explicit
/// weight is unweighted and reports `is_weighted() == false`.
#[derive(Debug, Clone)]
pub struct SparseGraph {
    labels: Vec<String>,
    label_index: HashMap<String, NodeId>,
    out_offsets: Vec<usize>,
    out_targets: Vec<NodeId>,
    in_offsets: Vec<usize>,
    in_sources: Vec<NodeId>,
    /// Aligned with `out_targets`.
    weights: Option<Vec<f64>>,
}

impl SparseGraph {
    pub fn num_nodes(&self) -> usize {
        self.labels.len()
    }

    pub fn num_edges(&self) -> usize {
        self.out_targets.len()
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn node_id(&self, label: &str) -> Option<NodeId> {
        self.label_index.get(label).copied()
    }

    pub fn label(&self, id: NodeId) -> &str {
        &self.labels[id.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> {
        (0..self.labels.len() as u32).map(NodeId)
    }

    pub fn out_neighbors(&self, id: NodeId) -> &[NodeId] {
        let i = id.index();
        &self.out_targets[self.out_offsets[i]..self.out_offsets[i + 1]]
    }

    pub fn in_neighbors(&self, id: NodeId) -> &[NodeId] {
        let i = id.index();
        &self.in_sources[self.in_offsets[i]..self.in_offsets[i + 1]]
    }

    /// Weights of the out-edges of `id`, aligned with [`out_neighbors`].
    ///
    /// [`out_neighbors`]: SparseGraph::out_neighbors
    pub fn out_weights(&self, id: NodeId) -> Option<&[f64]> {
        let i = id.index();
        self.weights
            .as_ref()
            .map(|w| &w[self.out_offsets[i]..self.out_offsets[i + 1]])
    }

    pub fn has_edge(&self, source: NodeId, target: NodeId) -> bool {
        self.out_neighbors(source).binary_search(&target).is_ok()
    }

    pub fn edge_weight(&self, source: NodeId, target: NodeId) -> Option<f64> {
        let pos = self.out_neighbors(source).binary_search(&target).ok()?;
        Some(match &self.weights {
            Some(w) => w[self.out_offsets[source.index()] + pos],
            None => 0.0,
        })
    }

    pub fn has_self_loop(&self, id: NodeId) -> bool {
        self.has_edge(id, id)
    }

    /// Count of in-edges per node, self-loops included.
    pub fn indegree(&self) -> DegreeVector {
        DegreeVector(
            self.in_offsets
                .windows(2)
                .map(|w| (w[1] - w[0]) as u64)
                .collect(),
        )
    }

    /// Count of out-edges per node, self-loops included.
    pub fn outdegree(&self) -> DegreeVector {
        DegreeVector(
            self.out_offsets
                .windows(2)
                .map(|w| (w[1] - w[0]) as u64)
                .collect(),
        )
    }

    /// Graph with every edge direction flipped. Labels and NodeIds are
    /// preserved, so `reverse(reverse(g))` has the identical edge set and
    /// node indexing as `g`.
    pub fn reverse(&self) -> SparseGraph {
        let edges = self
            .node_ids()
            .flat_map(|u| {
                let ws = self.out_weights(u);
                self.out_neighbors(u)
                    .iter()
                    .enumerate()
                    .map(move |(k, &v)| (v.0, u.0, ws.map_or(0.0, |w| w[k])))
            })
            .collect();
        SparseGraph::from_parts(
            self.labels.clone(),
            self.label_index.clone(),
            edges,
            self.weights.is_some(),
        )
    }

    /// Replace the edge-weight vector. The map is keyed by out-edge position
    /// `(source, slot)`; absent edges get weight 0.
    pub(crate) fn with_weights(&self, weights: Vec<f64>) -> SparseGraph {
        assert_eq!(weights.len(), self.num_edges());
        let mut g = self.clone();
        g.weights = Some(weights);
        g
    }

    pub(crate) fn out_edge_range(&self, id: NodeId) -> std::ops::Range<usize> {
        self.out_offsets[id.index()]..self.out_offsets[id.index() + 1]
    }

    /// Build from edges that already use dense `0..num_nodes` indices.
    /// Labels are the decimal form of each index. Intended for synthetic
    /// graphs where label interning would only add overhead.
    pub fn from_numbered_edges(
        num_nodes: usize,
        edges: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<SparseGraph> {
        let mut triples = Vec::new();
        for (index, (u, v)) in edges.into_iter().enumerate() {
            if u as usize >= num_nodes || v as usize >= num_nodes {
                return Err(Error::BadRecord {
                    index: index + 1,
                    message: format!("node index out of range: ({u}, {v})"),
                });
            }
            triples.push((u, v, 0.0));
        }
        let labels: Vec<String> = (0..num_nodes).map(|i| i.to_string()).collect();
        let label_index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), NodeId(i as u32)))
            .collect();
        Ok(SparseGraph::from_parts(labels, label_index, triples, false))
    }

    /// Shared constructor: dedups `(source, target, weight)` triples (weights
    /// summed) and lays out both compressed forms.
    fn from_parts(
        labels: Vec<String>,
        label_index: HashMap<String, NodeId>,
        mut edges: Vec<(u32, u32, f64)>,
        weighted: bool,
    ) -> SparseGraph {
        let n = labels.len();
        edges.sort_unstable_by_key(|&(u, v, _)| (u, v));

        // Collapse parallel edges in place, summing weights.
        let mut kept = 0usize;
        for i in 0..edges.len() {
            if kept > 0 && edges[kept - 1].0 == edges[i].0 && edges[kept - 1].1 == edges[i].1 {
                edges[kept - 1].2 += edges[i].2;
            } else {
                edges[kept] = edges[i];
                kept += 1;
            }
        }
        edges.truncate(kept);

        let mut out_offsets = vec![0usize; n + 1];
        for &(u, _, _) in &edges {
            out_offsets[u as usize + 1] += 1;
        }
        for i in 0..n {
            out_offsets[i + 1] += out_offsets[i];
        }
        let out_targets: Vec<NodeId> = edges.iter().map(|&(_, v, _)| NodeId(v)).collect();
        let weights = weighted.then(|| edges.iter().map(|&(_, _, w)| w).collect());

        // Target-major form via counting sort; iterating edges in
        // (source, target) order keeps each in-list sorted by source.
        let mut in_offsets = vec![0usize; n + 1];
        for &(_, v, _) in &edges {
            in_offsets[v as usize + 1] += 1;
        }
        for i in 0..n {
            in_offsets[i + 1] += in_offsets[i];
        }
        let mut cursor = in_offsets.clone();
        let mut in_sources = vec![NodeId(0); edges.len()];
        for &(u, v, _) in &edges {
            in_sources[cursor[v as usize]] = NodeId(u);
            cursor[v as usize] += 1;
        }

        SparseGraph {
            labels,
            label_index,
            out_offsets,
            out_targets,
            in_offsets,
            in_sources,
            weights,
        }
    }
}

/// Incremental construction of a [`SparseGraph`].
#[derive(Debug, Default)]
pub struct GraphBuilder {
    drop_self_loops: bool,
    labels: Vec<String>,
    label_index: HashMap<String, NodeId>,
    edges: Vec<(u32, u32, f64)>,
    weighted: bool,
    records: usize,
}

impl GraphBuilder {
    pub fn new() -> Self {
        GraphBuilder::default()
    }

    /// Discard self-loop records entirely instead of storing them.
    pub fn drop_self_loops(mut self, yes: bool) -> Self {
        self.drop_self_loops = yes;
        self
    }

    fn intern(&mut self, label: &str) -> NodeId {
        if let Some(&id) = self.label_index.get(label) {
            return id;
        }
        let id = NodeId(self.labels.len() as u32);
        self.labels.push(label.to_string());
        self.label_index.insert(label.to_string(), id);
        id
    }

    /// Register a node without requiring an incident edge.
    pub fn add_node(&mut self, label: &str) -> Result<NodeId> {
        self.records += 1;
        if label.is_empty() {
            return Err(Error::BadRecord {
                index: self.records,
                message: "empty node label".into(),
            });
        }
        Ok(self.intern(label))
    }

    pub fn add_edge(&mut self, source: &str, target: &str, weight: Option<f64>) -> Result<()> {
        self.records += 1;
        if source.is_empty() || target.is_empty() {
            return Err(Error::BadRecord {
                index: self.records,
                message: "empty node label".into(),
            });
        }
        if let Some(w) = weight {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::BadRecord {
                    index: self.records,
                    message: format!("weight must be finite and >= 0, got {w}"),
                });
            }
            self.weighted = true;
        }
        let u = self.intern(source);
        let v = self.intern(target);
        if self.drop_self_loops && u == v {
            return Ok(());
        }
        self.edges.push((u.0, v.0, weight.unwrap_or(0.0)));
        Ok(())
    }

    pub fn build(self) -> SparseGraph {
        SparseGraph::from_parts(self.labels, self.label_index, self.edges, self.weighted)
    }
}

/// Build a graph from `(source_label, target_label, optional weight)`
/// records. Nodes appearing only as targets still receive NodeIds.
pub fn build_graph<S: AsRef<str>>(
    records: impl IntoIterator<Item = (S, S, Option<f64>)>,
) -> Result<SparseGraph> {
    let mut b = GraphBuilder::new();
    for (s, t, w) in records {
        b.add_edge(s.as_ref(), t.as_ref(), w)?;
    }
    Ok(b.build())
}
