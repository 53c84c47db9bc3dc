//! Similarity alignment of one geometric graph onto another.

use super::distance::{edge_distance_metric, graph_distance};
use super::features::{EdgeFeature, GeometricShape, PaddedGraph};
use crate::error::GeometryError;
use crate::graph::Edge;
use crate::plane::{GeometricGraph, Point, Similarity};

/// Score minimized over the candidate transforms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlignVariant {
    /// `VD + ED`. Edge angles are taken modulo 180°, so ED alone cannot tell a
    /// graph from its half-turn; the vertex term breaks that tie.
    Ed,
    /// `EDM`, whose position term already fixes the orientation.
    Edm,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Alignment {
    pub transform: Similarity,
    pub graph: PaddedGraph,
    pub score: f64,
}

/// Longest real edge, ties broken by the left-endpoint order.
pub fn reference_edge<S: GeometricShape + ?Sized>(g: &S) -> Option<EdgeFeature> {
    let mut best: Option<EdgeFeature> = None;
    for f in g.edge_features().into_iter().filter(|f| !f.is_empty()) {
        best = match best {
            None => Some(f),
            Some(b) if f.length > b.length => Some(f),
            Some(b) if f.length == b.length && f.left.is_left_of(b.left) => Some(f),
            keep => keep,
        };
    }
    best
}

/// Similarity that lays segment `from` onto `reference` endpoint to endpoint
/// (left onto left), rotating, scaling and translating the whole plane.
pub fn geometric_transform(
    from: (Point, Point),
    reference: (Point, Point),
) -> Result<Similarity, GeometryError> {
    if reference.0 == reference.1 {
        return Err(GeometryError::DegenerateReference);
    }
    Similarity::segment_onto(from, reference).ok_or(GeometryError::DegenerateReference)
}

/// Applies [`geometric_transform`] for edge `f` of `g`.
pub fn transform_onto(
    g: &GeometricGraph,
    f: Edge,
    reference: (Point, Point),
) -> Result<GeometricGraph, GeometryError> {
    let (u, v) = f.endpoints();
    if !g.base().has_edge(u, v) {
        return Err(crate::error::GraphError::MissingEdge(f).into());
    }
    let feat = EdgeFeature::segment(g.point(u), g.point(v), None);
    if feat.length == 0.0 {
        return Err(GeometryError::DegenerateEdge(u, v));
    }
    let t = geometric_transform((feat.left, feat.right), reference)?;
    Ok(g.transformed(&t))
}

fn score(g1: &PaddedGraph, g2: &PaddedGraph, variant: AlignVariant) -> Result<f64, GeometryError> {
    match variant {
        AlignVariant::Ed => graph_distance(g1, g2),
        AlignVariant::Edm => edge_distance_metric(g1, g2),
    }
}

/// Tries the identity and, for every positive-length edge of `g2`, both ways
/// of laying it onto the reference edge of `g1`; keeps the first transform
/// with the smallest score. Both inputs must already have equal sizes.
pub fn align(
    g1: &PaddedGraph,
    g2: &PaddedGraph,
    variant: AlignVariant,
) -> Result<Alignment, GeometryError> {
    if g1.real_edge_count() == 0 || g2.real_edge_count() == 0 {
        return Err(GeometryError::NoEdges);
    }
    let reference = reference_edge(g1).ok_or(GeometryError::NoEdges)?;
    if reference.length == 0.0 {
        return Err(GeometryError::DegenerateReference);
    }
    let target = (reference.left, reference.right);
    let mut best = Alignment {
        transform: Similarity::IDENTITY,
        graph: g2.clone(),
        score: score(g1, g2, variant)?,
    };
    for f in g2
        .edge_features()
        .into_iter()
        .filter(|f| !f.is_empty() && f.length > 0.0)
    {
        for from in [(f.left, f.right), (f.right, f.left)] {
            let t = geometric_transform(from, target)?;
            let moved = g2.transformed(&t);
            let s = score(g1, &moved, variant)?;
            if s < best.score {
                best = Alignment {
                    transform: t,
                    graph: moved,
                    score: s,
                };
            }
        }
    }
    Ok(best)
}

/// Aligned copy of `g2` in the frame of `g1`.
pub fn graph_alignment(
    g1: &GeometricGraph,
    g2: &GeometricGraph,
    variant: AlignVariant,
) -> Result<GeometricGraph, GeometryError> {
    let (a, b) = super::features::pad_to_equal(g1, g2);
    let t = align(&a, &b, variant)?.transform;
    Ok(g2.transformed(&t))
}
