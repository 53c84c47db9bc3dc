//! Graphs embedded in the plane.

use std::ops::{Add, Mul, Sub};

use crate::error::GraphError;
use crate::graph::{AttributedGraph, Edge, Label, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn midpoint(self, other: Point) -> Point {
        Point::new((self.x + other.x) / 2.0, (self.y + other.y) / 2.0)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Lexicographic "left of" order: smaller x, then smaller y.
    pub fn is_left_of(self, other: Point) -> bool {
        self.x < other.x || (self.x == other.x && self.y < other.y)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

/// Mean of a point set; the origin for an empty set.
pub fn centroid(points: &[Point]) -> Point {
    if points.is_empty() {
        return Point::ORIGIN;
    }
    let n = points.len() as f64;
    let sum = points.iter().fold(Point::ORIGIN, |acc, &p| acc + p);
    Point::new(sum.x / n, sum.y / n)
}

/// Planar similarity transform `p -> s·R(θ)·p + t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Similarity {
    a: f64,
    b: f64,
    t: Point,
}

impl Similarity {
    pub const IDENTITY: Similarity = Similarity {
        a: 1.0,
        b: 0.0,
        t: Point::ORIGIN,
    };

    /// Rotation by `angle` radians about the origin, uniform `scale`, then translation.
    pub fn new(scale: f64, angle: f64, translation: Point) -> Self {
        Similarity {
            a: scale * angle.cos(),
            b: scale * angle.sin(),
            t: translation,
        }
    }

    /// The transform taking segment `from.0 -> from.1` onto `to.0 -> to.1`.
    ///
    /// Returns `None` when the source segment has zero length.
    pub fn segment_onto(from: (Point, Point), to: (Point, Point)) -> Option<Self> {
        let d = from.1 - from.0;
        let r = to.1 - to.0;
        let len2 = d.x * d.x + d.y * d.y;
        if len2 == 0.0 {
            return None;
        }
        // complex division r / d
        let a = (r.x * d.x + r.y * d.y) / len2;
        let b = (r.y * d.x - r.x * d.y) / len2;
        let rotated = Point::new(a * from.0.x - b * from.0.y, b * from.0.x + a * from.0.y);
        Some(Similarity {
            a,
            b,
            t: to.0 - rotated,
        })
    }

    pub fn apply(&self, p: Point) -> Point {
        Point::new(
            self.a * p.x - self.b * p.y + self.t.x,
            self.b * p.x + self.a * p.y + self.t.y,
        )
    }

    pub fn scale(&self) -> f64 {
        self.a.hypot(self.b)
    }

    pub fn then(&self, next: &Similarity) -> Similarity {
        let a = next.a * self.a - next.b * self.b;
        let b = next.b * self.a + next.a * self.b;
        Similarity {
            a,
            b,
            t: next.apply(self.t),
        }
    }
}

/// An [`AttributedGraph`] whose vertices all carry a finite 2-d coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometricGraph {
    base: AttributedGraph,
    coords: Vec<Point>,
    coordinate_labels: bool,
}

impl GeometricGraph {
    pub fn new(base: AttributedGraph, coords: Vec<Point>) -> Result<Self, GraphError> {
        if coords.len() != base.vertex_count() {
            return Err(GraphError::CoordinateCount {
                expected: base.vertex_count(),
                found: coords.len(),
            });
        }
        if let Some(v) = coords.iter().position(|p| !p.is_finite()) {
            return Err(GraphError::NonFiniteCoordinate(v));
        }
        let coordinate_labels = base.vertex_count() > 0
            && base
                .vertices()
                .all(|v| base.vertex_label(v).as_vector() == Some(&[coords[v].x, coords[v].y][..]));
        Ok(GeometricGraph {
            base,
            coords,
            coordinate_labels,
        })
    }

    /// Graph whose vertex labels are the coordinates themselves.
    pub fn from_points(
        points: &[Point],
        edges: &[(VertexId, VertexId)],
    ) -> Result<Self, GraphError> {
        let mut base = AttributedGraph::new();
        for p in points {
            base.add_vertex(Label::point(p.x, p.y))?;
        }
        for &(u, v) in edges {
            base.add_edge(u, v, Label::Empty)?;
        }
        Self::new(base, points.to_vec())
    }

    /// Reads coordinates out of 2-d vector vertex labels.
    pub fn from_labels(base: AttributedGraph) -> Result<Self, GraphError> {
        let coords = base
            .vertices()
            .map(|v| match base.vertex_label(v).as_vector() {
                Some(&[x, y]) => Ok(Point::new(x, y)),
                _ => Err(GraphError::MissingCoordinate(v)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(base, coords)
    }

    pub fn base(&self) -> &AttributedGraph {
        &self.base
    }

    pub fn into_base(self) -> AttributedGraph {
        self.base
    }

    pub fn coords(&self) -> &[Point] {
        &self.coords
    }

    pub fn point(&self, v: VertexId) -> Point {
        self.coords[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.base.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.base.edge_count()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.base.edges().map(|(e, _)| e)
    }

    /// True when every vertex label equals its coordinate.
    pub fn has_coordinate_labels(&self) -> bool {
        self.coordinate_labels
    }

    pub fn centroid(&self) -> Point {
        centroid(&self.coords)
    }

    /// Applies `t` to every coordinate (and to coordinate labels).
    pub fn transformed(&self, t: &Similarity) -> GeometricGraph {
        let coords: Vec<Point> = self.coords.iter().map(|&p| t.apply(p)).collect();
        self.with_coords(coords)
    }

    pub(crate) fn with_coords(&self, coords: Vec<Point>) -> GeometricGraph {
        let mut base = AttributedGraph::new();
        for v in self.base.vertices() {
            let label = if self.coordinate_labels {
                Label::point(coords[v].x, coords[v].y)
            } else {
                self.base.vertex_label(v).clone()
            };
            base.add_named_vertex(self.base.vertex_name(v), label)
                .expect("same label kinds");
        }
        for (e, label) in self.base.edges() {
            let (u, v) = e.endpoints();
            base.add_edge(u, v, label.clone()).expect("same edges");
        }
        GeometricGraph {
            base,
            coords,
            coordinate_labels: self.coordinate_labels,
        }
    }

    pub fn without_vertices(&self, remove: &[bool]) -> GeometricGraph {
        let base = self.base.without_vertices(remove);
        let coords = self
            .coords
            .iter()
            .zip(remove)
            .filter(|(_, &r)| !r)
            .map(|(&p, _)| p)
            .collect();
        GeometricGraph {
            base,
            coords,
            coordinate_labels: self.coordinate_labels,
        }
    }

    /// Replaces `e` by a path through a fresh vertex at the edge midpoint.
    ///
    /// The new vertex gets the midpoint of the endpoint labels when both are
    /// vectors, otherwise an empty label. `self` is left untouched.
    pub fn subdivide_edge(&self, e: Edge) -> Result<GeometricGraph, GraphError> {
        let (u, v) = e.endpoints();
        if !self.base.has_edge(u, v) {
            return Err(GraphError::MissingEdge(e));
        }
        let mid = self.coords[u].midpoint(self.coords[v]);
        let label = match (self.base.vertex_label(u), self.base.vertex_label(v)) {
            (Label::Vector(a), Label::Vector(b)) => {
                Label::Vector(a.iter().zip(b).map(|(x, y)| (x + y) / 2.0).collect())
            }
            _ => Label::Empty,
        };
        let mut base = self.base.clone();
        base.subdivide(e, label)?;
        let mut coords = self.coords.clone();
        coords.push(mid);
        Ok(GeometricGraph {
            base,
            coords,
            coordinate_labels: self.coordinate_labels,
        })
    }
}
