//! Vertex, edge and graph distances between equally sized geometric graphs.

use super::align::{align, AlignVariant};
use super::features::{pad_to_equal, EdgeFeature, GeometricShape};
use super::lsap::hungarian;
use crate::error::GeometryError;
use crate::plane::GeometricGraph;

/// Weights of the vertex, angle, length and position terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceWeights {
    pub w1: f64,
    pub w2: f64,
    pub w3: f64,
    pub w4: f64,
}

impl DistanceWeights {
    pub const UNIT: DistanceWeights = DistanceWeights {
        w1: 1.0,
        w2: 1.0,
        w3: 1.0,
        w4: 1.0,
    };
    /// Tuned on the high-distortion letter validation split.
    pub const LETTER: DistanceWeights = DistanceWeights {
        w1: 0.35,
        w2: 0.23,
        w3: 0.11,
        w4: 0.31,
    };

    pub fn new(w1: f64, w2: f64, w3: f64, w4: f64) -> Result<Self, GeometryError> {
        let w = DistanceWeights { w1, w2, w3, w4 };
        if w.as_array().iter().all(|x| x.is_finite() && *x >= 0.0) {
            Ok(w)
        } else {
            Err(GeometryError::InvalidWeights)
        }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.w1, self.w2, self.w3, self.w4]
    }

    /// Rescaled to sum to 1 (unchanged if all zero).
    pub fn normalized(&self) -> Self {
        let s: f64 = self.as_array().iter().sum();
        if s == 0.0 {
            return *self;
        }
        DistanceWeights {
            w1: self.w1 / s,
            w2: self.w2 / s,
            w3: self.w3 / s,
            w4: self.w4 / s,
        }
    }
}

/// Unweighted terms of the geometric graph distance for one pair.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DistanceComponents {
    pub vd: f64,
    pub angle: f64,
    pub length: f64,
    pub position: f64,
}

impl DistanceComponents {
    pub fn weighted(&self, w: &DistanceWeights) -> f64 {
        w.w1 * self.vd + w.w2 * self.angle + w.w3 * self.length + w.w4 * self.position
    }
}

/// Optimal vertex correspondence; `(mapping, VD)`.
pub fn vertex_assignment<A, B>(g1: &A, g2: &B) -> Result<(Vec<usize>, f64), GeometryError>
where
    A: GeometricShape + ?Sized,
    B: GeometricShape + ?Sized,
{
    let (p, q) = (g1.points(), g2.points());
    if p.len() != q.len() {
        return Err(GeometryError::VertexCountMismatch(p.len(), q.len()));
    }
    let phi = hungarian(p.len(), |i, j| p[i].distance(q[j]));
    let cost = phi
        .iter()
        .enumerate()
        .map(|(i, &j)| p[i].distance(q[j]))
        .sum();
    Ok((phi, cost))
}

pub fn vertex_distance<A, B>(g1: &A, g2: &B) -> Result<f64, GeometryError>
where
    A: GeometricShape + ?Sized,
    B: GeometricShape + ?Sized,
{
    Ok(vertex_assignment(g1, g2)?.1)
}

/// Which per-edge cost drives the edge assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeCost {
    /// Angle plus length.
    Ed,
    /// Angle plus length plus endpoint position.
    Edm,
}

impl EdgeCost {
    pub fn eval(self, a: &EdgeFeature, b: &EdgeFeature) -> f64 {
        let base = a.angle_cost(b) + a.length_cost(b);
        match self {
            EdgeCost::Ed => base,
            EdgeCost::Edm => base + a.position_cost(b),
        }
    }
}

/// Optimal edge correspondence under `cost`; `(mapping, total)`.
pub fn edge_assignment(
    e1: &[EdgeFeature],
    e2: &[EdgeFeature],
    cost: EdgeCost,
) -> Result<(Vec<usize>, f64), GeometryError> {
    if e1.len() != e2.len() {
        return Err(GeometryError::EdgeCountMismatch(e1.len(), e2.len()));
    }
    let psi = hungarian(e1.len(), |i, j| cost.eval(&e1[i], &e2[j]));
    let total = psi
        .iter()
        .enumerate()
        .map(|(i, &j)| cost.eval(&e1[i], &e2[j]))
        .sum();
    Ok((psi, total))
}

pub fn edge_distance<A, B>(g1: &A, g2: &B) -> Result<f64, GeometryError>
where
    A: GeometricShape + ?Sized,
    B: GeometricShape + ?Sized,
{
    Ok(edge_assignment(&g1.edge_features(), &g2.edge_features(), EdgeCost::Ed)?.1)
}

pub fn edge_distance_metric<A, B>(g1: &A, g2: &B) -> Result<f64, GeometryError>
where
    A: GeometricShape + ?Sized,
    B: GeometricShape + ?Sized,
{
    Ok(edge_assignment(&g1.edge_features(), &g2.edge_features(), EdgeCost::Edm)?.1)
}

/// `VD + ED`.
pub fn graph_distance<A, B>(g1: &A, g2: &B) -> Result<f64, GeometryError>
where
    A: GeometricShape + ?Sized,
    B: GeometricShape + ?Sized,
{
    Ok(vertex_distance(g1, g2)? + edge_distance(g1, g2)?)
}

/// `VD + EDM`.
pub fn graph_distance_metric<A, B>(g1: &A, g2: &B) -> Result<f64, GeometryError>
where
    A: GeometricShape + ?Sized,
    B: GeometricShape + ?Sized,
{
    Ok(vertex_distance(g1, g2)? + edge_distance_metric(g1, g2)?)
}

/// Unweighted terms for two shapes of equal size; the edge assignment is the
/// optimal one under the unweighted angle + length + position cost.
pub fn components<A, B>(g1: &A, g2: &B) -> Result<DistanceComponents, GeometryError>
where
    A: GeometricShape + ?Sized,
    B: GeometricShape + ?Sized,
{
    let vd = vertex_distance(g1, g2)?;
    let (e1, e2) = (g1.edge_features(), g2.edge_features());
    let (psi, _) = edge_assignment(&e1, &e2, EdgeCost::Edm)?;
    let mut c = DistanceComponents {
        vd,
        ..Default::default()
    };
    for (i, &j) in psi.iter().enumerate() {
        c.angle += e1[i].angle_cost(&e2[j]);
        c.length += e1[i].length_cost(&e2[j]);
        c.position += e1[i].position_cost(&e2[j]);
    }
    Ok(c)
}

/// Pads, optionally aligns `g2` onto `g1` by minimum EDM, and returns the
/// unweighted terms. Pairs where either graph has no usable edge skip
/// alignment.
pub fn distance_components(
    g1: &GeometricGraph,
    g2: &GeometricGraph,
    align_first: bool,
) -> Result<DistanceComponents, GeometryError> {
    let (a, b) = pad_to_equal(g1, g2);
    if a.real_edge_count() == 0 && b.real_edge_count() == 0 {
        return Ok(DistanceComponents {
            vd: vertex_distance(&a, &b)?,
            ..Default::default()
        });
    }
    if align_first {
        match align(&a, &b, AlignVariant::Edm) {
            Ok(aligned) => return components(&a, &aligned.graph),
            Err(GeometryError::NoEdges | GeometryError::DegenerateReference) => {}
            Err(e) => return Err(e),
        }
    }
    components(&a, &b)
}

/// `w1·VD + Σ (w2·E^A + w3·E^L + w4·E^P)` after padding and optional alignment.
pub fn geometric_graph_distance(
    g1: &GeometricGraph,
    g2: &GeometricGraph,
    w: &DistanceWeights,
    align_first: bool,
) -> Result<f64, GeometryError> {
    Ok(distance_components(g1, g2, align_first)?.weighted(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::Point;
    use std::f64::consts::FRAC_PI_2;

    fn gg(points: &[(f64, f64)], edges: &[(usize, usize)]) -> GeometricGraph {
        let pts: Vec<Point> = points.iter().map(|&(x, y)| Point::new(x, y)).collect();
        GeometricGraph::from_points(&pts, edges).unwrap()
    }

    #[test]
    fn single_vertex_distance() {
        assert_eq!(
            vertex_distance(&gg(&[(0.0, 0.0)], &[]), &gg(&[(3.0, 4.0)], &[])).unwrap(),
            5.0
        );
    }

    #[test]
    fn orthogonal_unit_edges() {
        let h = gg(&[(0.0, 0.0), (1.0, 0.0)], &[(0, 1)]);
        let v = gg(&[(0.0, 0.0), (0.0, 1.0)], &[(0, 1)]);
        assert!((edge_distance(&h, &v).unwrap() - FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn translation_leaves_ed_at_zero() {
        let g = gg(&[(0.0, 0.0), (1.0, 2.0), (3.0, 1.0)], &[(0, 1), (1, 2)]);
        let t = gg(&[(5.0, -1.0), (6.0, 1.0), (8.0, 0.0)], &[(0, 1), (1, 2)]);
        assert_eq!(edge_distance(&g, &t).unwrap(), 0.0);
        let moved = gg(&[(0.0, 0.0), (1.0, 0.0)], &[(0, 1)]);
        let shifted = gg(&[(3.0, 4.0), (4.0, 4.0)], &[(0, 1)]);
        assert!((edge_distance_metric(&moved, &shifted).unwrap() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn same_vertices_and_edge_shapes_but_different_layout() {
        // Both graphs: points of a 2x1 grid; two unit horizontal edges and
        // two unit vertical edges, wired differently.
        let pts = [
            (0.0, 0.0),
            (1.0, 0.0),
            (2.0, 0.0),
            (0.0, 1.0),
            (1.0, 1.0),
            (2.0, 1.0),
        ];
        let g1 = gg(&pts, &[(0, 1), (3, 4), (0, 3), (1, 4)]);
        let g2 = gg(&pts, &[(1, 2), (4, 5), (1, 4), (2, 5)]);
        assert_eq!(vertex_distance(&g1, &g2).unwrap(), 0.0);
        assert_eq!(edge_distance(&g1, &g2).unwrap(), 0.0);
        assert!(edge_distance_metric(&g1, &g2).unwrap() > 0.5);
    }

    #[test]
    fn unit_weights_match_gdm_after_padding() {
        let g1 = gg(&[(0.0, 0.0), (2.0, 0.0), (2.0, 2.0)], &[(0, 1), (1, 2)]);
        let g2 = gg(&[(0.5, 0.0), (2.0, 1.0)], &[(0, 1)]);
        let (a, b) = pad_to_equal(&g1, &g2);
        let gdm = graph_distance_metric(&a, &b).unwrap();
        let got = geometric_graph_distance(&g1, &g2, &DistanceWeights::UNIT, false).unwrap();
        assert!((gdm - got).abs() < 1e-12);
        assert_eq!(
            geometric_graph_distance(&g1, &g1, &DistanceWeights::LETTER, true).unwrap(),
            0.0
        );
    }

    #[test]
    fn weights_validation() {
        assert!(DistanceWeights::new(1.0, -0.1, 0.0, 0.0).is_err());
        let n = DistanceWeights::new(2.0, 2.0, 0.0, 4.0)
            .unwrap()
            .normalized();
        assert_eq!(n.as_array(), [0.25, 0.25, 0.0, 0.5]);
    }
}
