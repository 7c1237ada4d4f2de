//! Column-stochastic-except-sinks transition matrices.

use crate::error::{Error, Result};
use crate::graph::{NodeId, SparseGraph};

const COLUMN_SUM_TOLERANCE: f64 = 1e-12;

/// Sparse out-transition matrix `H`: column `j` holds the probabilities of
/// moving from node `j` to each of its out-neighbors. Every column sums to
/// 1 (within 1e-12) or is identically zero; the zero columns are the sinks,
/// flagged in the sink mask.
///
/// Entries are stored twice: grouped by column (the defining layout) and
/// grouped by row, so a power-iteration step can gather disjoint row blocks
/// independently. Both groupings describe the identical entry set.
#[derive(Debug, Clone)]
pub struct TransitionMatrix {
    n: usize,
    col_offsets: Vec<usize>,
    col_rows: Vec<u32>,
    col_values: Vec<f64>,
    row_offsets: Vec<usize>,
    row_cols: Vec<u32>,
    row_values: Vec<f64>,
    sink: Vec<bool>,
}

impl TransitionMatrix {
    /// `H` of a graph: column `j` is the out-edges of `j`, each with
    /// probability `1 / outdegree(j)`; sink columns stay zero.
    pub fn from_graph(graph: &SparseGraph) -> TransitionMatrix {
        let n = graph.num_nodes();
        let mut col_offsets = Vec::with_capacity(n + 1);
        col_offsets.push(0usize);
        let mut col_rows = Vec::with_capacity(graph.num_edges());
        let mut col_values = Vec::with_capacity(graph.num_edges());
        let mut sink = vec![false; n];
        for j in graph.node_ids() {
            let targets = graph.out_neighbors(j);
            if targets.is_empty() {
                sink[j.index()] = true;
            } else {
                let p = 1.0 / targets.len() as f64;
                for &t in targets {
                    col_rows.push(t.index() as u32);
                    col_values.push(p);
                }
            }
            col_offsets.push(col_rows.len());
        }
        Self::from_columns(n, col_offsets, col_rows, col_values, sink)
    }

    /// Fatigue-attenuated `H'`: each nonzero column of `H` is multiplied
    /// elementwise by the fatigue vector and renormalized to sum 1. Zero
    /// columns and the sink mask are unchanged.
    pub fn fatigued_from_graph(graph: &SparseGraph, fatigue: &[f64]) -> Result<TransitionMatrix> {
        assert_eq!(fatigue.len(), graph.num_nodes());
        let n = graph.num_nodes();
        let mut col_offsets = Vec::with_capacity(n + 1);
        col_offsets.push(0usize);
        let mut col_rows = Vec::with_capacity(graph.num_edges());
        let mut col_values = Vec::with_capacity(graph.num_edges());
        let mut sink = vec![false; n];
        for j in graph.node_ids() {
            let targets = graph.out_neighbors(j);
            if targets.is_empty() {
                sink[j.index()] = true;
                col_offsets.push(col_rows.len());
                continue;
            }
            let p = 1.0 / targets.len() as f64;
            let start = col_values.len();
            let mut sum = 0.0;
            for &t in targets {
                let v = fatigue[t.index()] * p;
                col_rows.push(t.index() as u32);
                col_values.push(v);
                sum += v;
            }
            if sum == 0.0 {
                return Err(Error::FatigueCollapse { column: j.index() });
            }
            for v in &mut col_values[start..] {
                *v /= sum;
            }
            col_offsets.push(col_rows.len());
        }
        Ok(Self::from_columns(n, col_offsets, col_rows, col_values, sink))
    }

    /// Build from a dense row-major matrix, validating the column-sum
    /// invariant. Intended for tests and worked examples.
    pub fn from_dense(rows: &[Vec<f64>]) -> Result<TransitionMatrix> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Data(format!(
                    "row {i} has {} entries in a {n}-column matrix",
                    row.len()
                )));
            }
        }
        let mut col_offsets = Vec::with_capacity(n + 1);
        col_offsets.push(0usize);
        let mut col_rows = Vec::new();
        let mut col_values = Vec::new();
        let mut sink = vec![false; n];
        for j in 0..n {
            let mut sum = 0.0;
            for (i, row) in rows.iter().enumerate() {
                let v = row[j];
                if !(0.0..=1.0).contains(&v) {
                    return Err(Error::Data(format!(
                        "entry ({i}, {j}) = {v} outside [0, 1]"
                    )));
                }
                if v != 0.0 {
                    col_rows.push(i as u32);
                    col_values.push(v);
                    sum += v;
                }
            }
            if sum == 0.0 {
                sink[j] = true;
            } else if (sum - 1.0).abs() > COLUMN_SUM_TOLERANCE {
                return Err(Error::Data(format!("column {j} sums to {sum}, not 1")));
            }
            col_offsets.push(col_rows.len());
        }
        Ok(Self::from_columns(n, col_offsets, col_rows, col_values, sink))
    }

    /// Derive the row-grouped mirror from column-grouped storage.
    fn from_columns(
        n: usize,
        col_offsets: Vec<usize>,
        col_rows: Vec<u32>,
        col_values: Vec<f64>,
        sink: Vec<bool>,
    ) -> TransitionMatrix {
        let nnz = col_rows.len();
        let mut row_offsets = vec![0usize; n + 1];
        for &i in &col_rows {
            row_offsets[i as usize + 1] += 1;
        }
        for i in 0..n {
            row_offsets[i + 1] += row_offsets[i];
        }
        let mut cursor = row_offsets.clone();
        let mut row_cols = vec![0u32; nnz];
        let mut row_values = vec![0.0f64; nnz];
        for j in 0..n {
            for k in col_offsets[j]..col_offsets[j + 1] {
                let i = col_rows[k] as usize;
                row_cols[cursor[i]] = j as u32;
                row_values[cursor[i]] = col_values[k];
                cursor[i] += 1;
            }
        }
        TransitionMatrix {
            n,
            col_offsets,
            col_rows,
            col_values,
            row_offsets,
            row_cols,
            row_values,
            sink,
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.n
    }

    pub fn num_entries(&self) -> usize {
        self.col_values.len()
    }

    pub fn is_sink(&self, j: NodeId) -> bool {
        self.sink[j.index()]
    }

    /// Binary mask over columns; `true` marks a zero-sum (sink) column.
    pub fn sink_mask(&self) -> &[bool] {
        &self.sink
    }

    /// Nonzero entries of column `j` as `(row, value)`.
    pub fn column(&self, j: NodeId) -> impl Iterator<Item = (NodeId, f64)> + '_ {
        let range = self.col_offsets[j.index()]..self.col_offsets[j.index() + 1];
        self.col_rows[range.clone()]
            .iter()
            .zip(&self.col_values[range])
            .map(|(&i, &v)| (NodeId::new(i), v))
    }

    pub fn get(&self, row: NodeId, col: NodeId) -> f64 {
        let range = self.col_offsets[col.index()]..self.col_offsets[col.index() + 1];
        match self.col_rows[range.clone()].binary_search(&(row.index() as u32)) {
            Ok(pos) => self.col_values[range.start + pos],
            Err(_) => 0.0,
        }
    }

    pub fn column_sums(&self) -> Vec<f64> {
        (0..self.n)
            .map(|j| self.col_values[self.col_offsets[j]..self.col_offsets[j + 1]].iter().sum())
            .collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut dense = vec![vec![0.0; self.n]; self.n];
        for (j, window) in self.col_offsets.windows(2).enumerate() {
            for k in window[0]..window[1] {
                dense[self.col_rows[k] as usize][j] = self.col_values[k];
            }
        }
        dense
    }

    /// Gather `sum_j H[i][j] * r[j]` for row `i`, in storage order.
    #[inline]
    pub(crate) fn row_gather(&self, i: usize, r: &[f64]) -> f64 {
        let range = self.row_offsets[i]..self.row_offsets[i + 1];
        let mut sum = 0.0;
        for (&j, &v) in self.row_cols[range.clone()].iter().zip(&self.row_values[range]) {
            sum += v * r[j as usize];
        }
        sum
    }
}
