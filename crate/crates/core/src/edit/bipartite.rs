//! Assignment-based GED approximation: one LSAP over vertices, each cell
//! enriched with the cost of matching the incident edges, then priced as the
//! induced complete edit path (an upper bound on the exact distance).

use super::cost::{CostMode, EditCostParams};
use super::search::{path_from_mapping, EditPath, PairCosts};
use crate::error::EditError;
use crate::geometric::lsap::hungarian;
use crate::graph::{AttributedGraph, VertexId};

/// Optimal matching cost between the edges incident to `u` and to `v`.
fn local_edge_cost(c: &PairCosts, u: VertexId, v: VertexId) -> f64 {
    let (a, b) = (&c.adj1[u], &c.adj2[v]);
    let (d1, d2) = (a.len(), b.len());
    let n = d1 + d2;
    if n == 0 {
        return 0.0;
    }
    let cell = |i: usize, j: usize| -> f64 {
        match (i < d1, j < d2) {
            (true, true) => c.edge_sub(a[i].1, b[j].1),
            (true, false) => {
                if j - d2 == i {
                    c.x_edge
                } else {
                    f64::INFINITY
                }
            }
            (false, true) => {
                if i - d1 == j {
                    c.x_edge
                } else {
                    f64::INFINITY
                }
            }
            (false, false) => 0.0,
        }
    };
    let m = hungarian(n, cell);
    m.iter().enumerate().map(|(i, &j)| cell(i, j)).sum()
}

pub fn ged_bipartite(
    g1: &AttributedGraph,
    g2: &AttributedGraph,
    params: &EditCostParams,
) -> Result<EditPath, EditError> {
    let mode = CostMode::Standard;
    let c = PairCosts::new(g1, g2, params, &mode)?;
    let (n1, n2) = (c.n1, c.n2);
    let n = n1 + n2;
    let mut matrix = vec![f64::INFINITY; n * n];
    for i in 0..n {
        for j in 0..n {
            let value = match (i < n1, j < n2) {
                (true, true) => c.sub(i, j) + 0.5 * local_edge_cost(&c, i, j),
                (true, false) if j - n2 == i => {
                    c.node_del[i] + 0.5 * c.adj1[i].len() as f64 * c.x_edge
                }
                (false, true) if i - n1 == j => c.x_node + 0.5 * c.adj2[j].len() as f64 * c.x_edge,
                (false, false) => 0.0,
                _ => continue,
            };
            matrix[i * n + j] = value;
        }
    }
    let assignment = hungarian(n, |i, j| matrix[i * n + j]);
    let mapping: Vec<Option<VertexId>> = (0..n1)
        .map(|u| Some(assignment[u]).filter(|&v| v < n2))
        .collect();
    path_from_mapping(g1, g2, params, &mode, &mapping)
}
