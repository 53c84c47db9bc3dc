//! Distances, alignment and isomorphism for graphs embedded in the plane.

pub mod align;
pub mod distance;
pub mod features;
pub mod iso;
pub mod lsap;

pub use align::{align, graph_alignment, reference_edge, transform_onto, AlignVariant, Alignment};
pub use distance::{
    components, distance_components, edge_assignment, edge_distance, edge_distance_metric,
    geometric_graph_distance, graph_distance, graph_distance_metric, vertex_assignment,
    vertex_distance, DistanceComponents, DistanceWeights, EdgeCost,
};
pub use features::{pad_to_equal, EdgeFeature, GeometricShape, PaddedGraph};
pub use iso::{geometric_graph_isomorphism, isomorphism_report, IsoReport, IsoVerdict};
pub use lsap::{solve_lsap, Assignment, CostMatrix};
