use std::collections::BTreeSet;

use crate::error::EditError;
use crate::graph::{articulation_points, AttributedGraph, Edge, Label, VertexId};

/// Constants of the Euclidean edit cost model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EditCostParams {
    /// Node insertion / deletion.
    pub x_node: f64,
    /// Weight on the label distance of a node substitution.
    pub y_node: f64,
    /// Edge insertion / deletion.
    pub x_edge: f64,
    /// Weight on the label distance of an edge substitution.
    pub y_edge: f64,
    /// Weight on the endpoint distance of a path contraction.
    pub z_path: f64,
}

impl Default for EditCostParams {
    fn default() -> Self {
        EditCostParams {
            x_node: 1.0,
            y_node: 1.0,
            x_edge: 1.0,
            y_edge: 1.0,
            z_path: 1.0,
        }
    }
}

impl EditCostParams {
    pub fn is_valid(&self) -> bool {
        [
            self.x_node,
            self.y_node,
            self.x_edge,
            self.y_edge,
            self.z_path,
        ]
        .iter()
        .all(|c| c.is_finite() && *c >= 0.0)
    }
}

/// One elementary edit. Vertex and edge references point into the source
/// graph (`g1`) or the target graph (`g2`) as the operation implies.
#[derive(Debug, Clone, PartialEq)]
pub enum EditOperation {
    NodeInsert(VertexId),
    NodeDelete(VertexId),
    NodeSubstitute(VertexId, VertexId),
    EdgeInsert(Edge),
    EdgeDelete(Edge),
    EdgeSubstitute(Edge, Edge),
    /// `(u_1, ..., u_n) -> (u_1, u_n)` in the source graph.
    PathContract(Vec<VertexId>),
}

/// Which deletions are free on top of the standard cost table.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum CostMode {
    #[default]
    Standard,
    /// Deleting a degree-`k` vertex that is not a cut vertex costs nothing.
    Extended { k: usize },
    /// Standard costs; named separately because path contractions are expected.
    Homeomorphic,
    /// Deleting any vertex in the set costs nothing.
    CentralityExempt(BTreeSet<VertexId>),
}

fn kind(label: &Label) -> &'static str {
    match label {
        Label::Empty => "empty",
        Label::Vector(_) => "vector",
        Label::Symbol(_) => "symbolic",
    }
}

/// Weighted label distance used by every substitution-like operation.
///
/// Vectors: `weight * ||a - b||`; symbols: 0 when equal else `weight`;
/// an empty label on either side: 0.
pub fn label_cost(a: &Label, b: &Label, weight: f64) -> Result<f64, EditError> {
    match (a, b) {
        (Label::Empty, _) | (_, Label::Empty) => Ok(0.0),
        (Label::Vector(x), Label::Vector(y)) => {
            if x.len() != y.len() {
                return Err(EditError::LabelDimension(x.len(), y.len()));
            }
            let sq: f64 = x.iter().zip(y).map(|(p, q)| (p - q) * (p - q)).sum();
            Ok(weight * sq.sqrt())
        }
        (Label::Symbol(x), Label::Symbol(y)) => Ok(if x == y { 0.0 } else { weight }),
        _ => Err(EditError::LabelKind(kind(a), kind(b))),
    }
}

fn edge_label(g: &AttributedGraph, e: Edge) -> Result<&Label, EditError> {
    let (u, v) = e.endpoints();
    g.edge_label(u, v)
        .ok_or(EditError::Graph(crate::error::GraphError::MissingEdge(e)))
}

/// Cost of a single edit operation from `g1` towards `g2`.
pub fn edit_cost(
    op: &EditOperation,
    g1: &AttributedGraph,
    g2: &AttributedGraph,
    params: &EditCostParams,
    mode: &CostMode,
) -> Result<f64, EditError> {
    match op {
        EditOperation::NodeInsert(v) => {
            g2.check_vertex(*v)?;
            Ok(params.x_node)
        }
        EditOperation::NodeDelete(u) => {
            g1.check_vertex(*u)?;
            let free = match mode {
                CostMode::Extended { k } => g1.degree(*u)? == *k && !articulation_points(g1)[*u],
                CostMode::CentralityExempt(set) => set.contains(u),
                CostMode::Standard | CostMode::Homeomorphic => false,
            };
            Ok(if free { 0.0 } else { params.x_node })
        }
        EditOperation::NodeSubstitute(u, v) => {
            g1.check_vertex(*u)?;
            g2.check_vertex(*v)?;
            label_cost(g1.vertex_label(*u), g2.vertex_label(*v), params.y_node)
        }
        EditOperation::EdgeInsert(e) => {
            edge_label(g2, *e)?;
            Ok(params.x_edge)
        }
        EditOperation::EdgeDelete(e) => {
            edge_label(g1, *e)?;
            Ok(params.x_edge)
        }
        EditOperation::EdgeSubstitute(e, f) => {
            label_cost(edge_label(g1, *e)?, edge_label(g2, *f)?, params.y_edge)
        }
        EditOperation::PathContract(path) => {
            let (first, last) = match (path.first(), path.last()) {
                (Some(&a), Some(&b)) if path.len() >= 2 => (a, b),
                _ => return Err(EditError::InvalidPath),
            };
            for w in path.windows(2) {
                if !g1.has_edge(w[0], w[1]) {
                    return Err(EditError::InvalidPath);
                }
            }
            for &inner in &path[1..path.len() - 1] {
                if g1.degree(inner)? != 2 {
                    return Err(EditError::InvalidPath);
                }
            }
            label_cost(g1.vertex_label(first), g1.vertex_label(last), params.z_path)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn points(coords: &[(f64, f64)]) -> AttributedGraph {
        let mut g = AttributedGraph::new();
        for &(x, y) in coords {
            g.add_vertex(Label::point(x, y)).unwrap();
        }
        g
    }

    #[test]
    fn constant_and_euclidean_costs() {
        let g1 = points(&[(0.0, 0.0)]);
        let g2 = points(&[(3.0, 4.0)]);
        let p = EditCostParams::default();
        let m = CostMode::Standard;
        assert_eq!(
            edit_cost(&EditOperation::NodeDelete(0), &g1, &g2, &p, &m).unwrap(),
            1.0
        );
        assert_eq!(
            edit_cost(&EditOperation::NodeSubstitute(0, 0), &g1, &g2, &p, &m).unwrap(),
            5.0
        );
    }

    #[test]
    fn extended_mode_frees_non_cut_degree_k() {
        // star: centre 0 with leaves 1..3
        let g = AttributedGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let p = EditCostParams::default();
        let m = CostMode::Extended { k: 1 };
        assert_eq!(
            edit_cost(&EditOperation::NodeDelete(1), &g, &g, &p, &m).unwrap(),
            0.0
        );
        let m3 = CostMode::Extended { k: 3 };
        // centre has degree 3 but is a cut vertex
        assert_eq!(
            edit_cost(&EditOperation::NodeDelete(0), &g, &g, &p, &m3).unwrap(),
            1.0
        );
        let exempt = CostMode::CentralityExempt([0].into_iter().collect());
        assert_eq!(
            edit_cost(&EditOperation::NodeDelete(0), &g, &g, &p, &exempt).unwrap(),
            0.0
        );
    }

    #[test]
    fn symbolic_and_empty_labels() {
        let s = |t: &str| Label::Symbol(t.into());
        assert_eq!(label_cost(&s("C"), &s("C"), 2.0).unwrap(), 0.0);
        assert_eq!(label_cost(&s("C"), &s("O"), 2.0).unwrap(), 2.0);
        assert_eq!(label_cost(&Label::Empty, &s("O"), 2.0).unwrap(), 0.0);
        assert!(matches!(
            label_cost(
                &Label::Vector(vec![1.0]),
                &Label::Vector(vec![1.0, 2.0]),
                1.0
            ),
            Err(EditError::LabelDimension(1, 2))
        ));
        assert!(label_cost(&Label::Vector(vec![1.0]), &s("C"), 1.0).is_err());
    }

    #[test]
    fn path_contraction_cost() {
        let mut g = points(&[(0.0, 0.0), (1.0, 1.0), (6.0, 8.0)]);
        g.add_edge(0, 1, Label::Empty).unwrap();
        g.add_edge(1, 2, Label::Empty).unwrap();
        let p = EditCostParams {
            z_path: 0.5,
            ..Default::default()
        };
        let op = EditOperation::PathContract(vec![0, 1, 2]);
        assert_eq!(
            edit_cost(&op, &g, &g, &p, &CostMode::Homeomorphic).unwrap(),
            5.0
        );
        let bad = EditOperation::PathContract(vec![0, 2]);
        assert!(edit_cost(&bad, &g, &g, &p, &CostMode::Homeomorphic).is_err());
    }
}
