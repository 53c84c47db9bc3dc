//! Edge descriptors and size padding.

use std::f64::consts::PI;

use crate::graph::VertexId;
use crate::plane::{GeometricGraph, Point, Similarity};

/// Orientation, length and position of one (possibly empty) edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeFeature {
    /// Degrees in `[0, 180)`, measured from the left endpoint.
    pub theta: f64,
    pub length: f64,
    pub left: Point,
    pub right: Point,
    /// Endpoints in the owning graph; `None` for a padding edge.
    pub vertices: Option<(VertexId, VertexId)>,
}

impl EdgeFeature {
    /// Feature of the segment `p q`; endpoints are put in left-to-right order.
    pub fn segment(p: Point, q: Point, vertices: Option<(VertexId, VertexId)>) -> Self {
        let (left, right, vertices) = if q.is_left_of(p) {
            (q, p, vertices.map(|(a, b)| (b, a)))
        } else {
            (p, q, vertices)
        };
        let d = right - left;
        let mut theta = d.y.atan2(d.x).to_degrees();
        if theta < 0.0 {
            theta += 180.0;
        }
        if theta >= 180.0 {
            theta -= 180.0;
        }
        EdgeFeature {
            theta,
            length: d.norm(),
            left,
            right,
            vertices,
        }
    }

    /// Padding edge: no angle, no length, both endpoints at `at`.
    pub fn empty(at: Point) -> Self {
        EdgeFeature {
            theta: 0.0,
            length: 0.0,
            left: at,
            right: at,
            vertices: None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_none()
    }

    /// `|Δθ|` in radians, without wrap-around.
    pub fn angle_cost(&self, other: &EdgeFeature) -> f64 {
        (self.theta - other.theta).abs() * PI / 180.0
    }

    pub fn length_cost(&self, other: &EdgeFeature) -> f64 {
        (self.length - other.length).abs()
    }

    /// Mean distance between corresponding endpoints.
    pub fn position_cost(&self, other: &EdgeFeature) -> f64 {
        (self.left.distance(other.left) + self.right.distance(other.right)) / 2.0
    }
}

/// Anything that exposes vertex coordinates and edge features.
pub trait GeometricShape {
    fn points(&self) -> &[Point];
    fn edge_features(&self) -> Vec<EdgeFeature>;
}

impl GeometricShape for GeometricGraph {
    fn points(&self) -> &[Point] {
        self.coords()
    }

    fn edge_features(&self) -> Vec<EdgeFeature> {
        self.edges()
            .map(|e| {
                let (u, v) = e.endpoints();
                EdgeFeature::segment(self.point(u), self.point(v), Some((u, v)))
            })
            .collect()
    }
}

/// A geometric graph extended with mean-position vertices and empty edges.
#[derive(Debug, Clone, PartialEq)]
pub struct PaddedGraph {
    points: Vec<Point>,
    edges: Vec<Option<(VertexId, VertexId)>>,
    mean: Point,
    real_vertices: usize,
}

impl PaddedGraph {
    pub fn new(g: &GeometricGraph) -> Self {
        PaddedGraph {
            points: g.coords().to_vec(),
            edges: g.edges().map(|e| Some(e.endpoints())).collect(),
            mean: g.centroid(),
            real_vertices: g.vertex_count(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.points.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn real_vertex_count(&self) -> usize {
        self.real_vertices
    }

    pub fn real_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_some()).count()
    }

    /// Mean of the original (unpadded) coordinates.
    pub fn mean(&self) -> Point {
        self.mean
    }

    pub fn pad_vertices(&mut self, n: usize) {
        while self.points.len() < n {
            self.points.push(self.mean);
        }
    }

    pub fn pad_edges(&mut self, m: usize) {
        while self.edges.len() < m {
            self.edges.push(None);
        }
    }

    pub fn transformed(&self, t: &Similarity) -> PaddedGraph {
        PaddedGraph {
            points: self.points.iter().map(|&p| t.apply(p)).collect(),
            edges: self.edges.clone(),
            mean: t.apply(self.mean),
            real_vertices: self.real_vertices,
        }
    }
}

impl GeometricShape for PaddedGraph {
    fn points(&self) -> &[Point] {
        &self.points
    }

    fn edge_features(&self) -> Vec<EdgeFeature> {
        self.edges
            .iter()
            .map(|e| match *e {
                Some((u, v)) => EdgeFeature::segment(self.points[u], self.points[v], Some((u, v))),
                None => EdgeFeature::empty(self.mean),
            })
            .collect()
    }
}

/// Pads the smaller vertex set with copies of its own mean coordinate (the
/// origin for an empty graph) and the smaller edge list with empty edges.
pub fn pad_to_equal(g1: &GeometricGraph, g2: &GeometricGraph) -> (PaddedGraph, PaddedGraph) {
    let (mut a, mut b) = (PaddedGraph::new(g1), PaddedGraph::new(g2));
    let n = a.vertex_count().max(b.vertex_count());
    let m = a.edge_count().max(b.edge_count());
    a.pad_vertices(n);
    b.pad_vertices(n);
    a.pad_edges(m);
    b.pad_edges(m);
    (a, b)
}
